use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::CwPoset;
use crate::error::{Error, Result};
use crate::linalg::{self, Q};

/// Quadratic path algebra `kQ / (R)` with relations living in degree two.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    vertices: Vec<String>,
    /// `(source, target)` per arrow.
    arrows: Vec<(usize, usize)>,
    /// Length-two paths `(first arrow, second arrow)` per `(source, target)`.
    two_paths: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    /// Relation basis (reduced row echelon) per `(source, target)`, written
    /// in the coordinates of `two_paths`.
    relations: BTreeMap<(usize, usize), Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewyProfile {
    /// `dims[k][s][t]`: dimension of the degree-`k` part of `e_s A e_t`.
    pub dims: Vec<Vec<Vec<usize>>>,
    pub totals: Vec<usize>,
    pub loewy_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertResidual {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulHilbertCheck {
    pub holds: bool,
    pub residual: Vec<HilbertResidual>,
}

fn echelon(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let r = linalg::rref(&mut rows).len();
    rows.truncate(r);
    rows
}

fn two_paths_of(n: usize, arrows: &[(usize, usize)]) -> BTreeMap<(usize, usize), Vec<(usize, usize)>> {
    let mut out: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    let mut from: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(s, _)) in arrows.iter().enumerate() {
        from[s].push(i);
    }
    for (a, &(s, m)) in arrows.iter().enumerate() {
        for &b in &from[m] {
            out.entry((s, arrows[b].1)).or_default().push((a, b));
        }
    }
    out
}

impl QuadraticAlgebra {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(usize, usize)>,
        relations: BTreeMap<(usize, usize), Vec<Vec<Q>>>,
    ) -> QuadraticAlgebra {
        let two_paths = two_paths_of(vertices.len(), &arrows);
        let relations = relations
            .into_iter()
            .map(|(k, rows)| (k, echelon(rows)))
            .filter(|(_, rows)| !rows.is_empty())
            .collect();
        QuadraticAlgebra { vertices, arrows, two_paths, relations }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn two_paths(&self, s: usize, t: usize) -> &[(usize, usize)] {
        self.two_paths.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn relations(&self, s: usize, t: usize) -> &[Vec<Q>] {
        self.relations.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.values().map(Vec::len).sum()
    }

    /// Same relation subspaces on the same quiver.
    pub fn same_presentation(&self, other: &QuadraticAlgebra) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows && self.relations == other.relations
    }

    /// Dimension of each `e_s A_k e_t`.
    pub fn graded_dims(&self, k: usize) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut dims = vec![vec![0; n]; n];
        let mut paths = PathCache::new(self);
        for s in 0..n {
            let all = paths.get(s, k);
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            let mut index: HashMap<&[usize], usize> = HashMap::new();
            for p in all.iter() {
                let slot = sizes.entry(self.end(s, p)).or_default();
                index.insert(p.as_slice(), *slot);
                *slot += 1;
            }
            if k < 2 {
                for (&t, &len) in &sizes {
                    dims[s][t] = len;
                }
                continue;
            }
            // u r w for every prefix u, relation r and suffix w, bucketed by target
            let mut gens: BTreeMap<usize, Vec<Vec<Q>>> = BTreeMap::new();
            for i in 0..=k - 2 {
                let prefixes = paths.get(s, i);
                for u in prefixes.iter() {
                    let x = self.end(s, u);
                    for (&(_, y), rels) in self.relations.range((x, 0)..(x + 1, 0)) {
                        let middles = self.two_paths(x, y);
                        let suffixes = paths.get(y, k - 2 - i);
                        for w in suffixes.iter() {
                            let t = self.end(y, w);
                            for r in rels {
                                let mut v = vec![Q::zero(); sizes[&t]];
                                for (c, &(a, b)) in r.iter().zip(middles) {
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let mut full = u.clone();
                                    full.push(a);
                                    full.push(b);
                                    full.extend_from_slice(w);
                                    v[index[full.as_slice()]] += c;
                                }
                                gens.entry(t).or_default().push(v);
                            }
                        }
                    }
                }
            }
            for (&t, &len) in &sizes {
                dims[s][t] = len - gens.remove(&t).map_or(0, linalg::rank_incremental);
            }
        }
        dims
    }

    fn end(&self, s: usize, path: &[usize]) -> usize {
        path.last().map_or(s, |&a| self.arrows[a].1)
    }
}

struct PathCache<'a> {
    alg: &'a QuadraticAlgebra,
    from: Vec<Vec<usize>>,
    memo: HashMap<(usize, usize), Rc<Vec<Vec<usize>>>>,
}

impl<'a> PathCache<'a> {
    fn new(alg: &'a QuadraticAlgebra) -> Self {
        let mut from = vec![Vec::new(); alg.n_vertices()];
        for (i, &(s, _)) in alg.arrows.iter().enumerate() {
            from[s].push(i);
        }
        PathCache { alg, from, memo: HashMap::new() }
    }

    /// All arrow sequences of length `len` leaving `s`.
    fn get(&mut self, s: usize, len: usize) -> Rc<Vec<Vec<usize>>> {
        if let Some(p) = self.memo.get(&(s, len)) {
            return Rc::clone(p);
        }
        let out = if len == 0 {
            vec![Vec::new()]
        } else {
            let mut out = Vec::new();
            for a in self.from[s].clone() {
                let t = self.alg.arrows[a].1;
                for rest in self.get(t, len - 1).iter() {
                    let mut p = vec![a];
                    p.extend_from_slice(rest);
                    out.push(p);
                }
            }
            out
        };
        let out = Rc::new(out);
        self.memo.insert((s, len), Rc::clone(&out));
        out
    }
}

/// Incidence algebra of the face poset: one arrow per cover, pointing from
/// the larger cell to the smaller, with every two parallel length-two paths
/// identified. Needs a graded, acyclic poset; the diamond property is not
/// required here (chains are fine) but is what makes the result Koszul.
pub fn incidence_algebra(poset: &CwPoset) -> Result<QuadraticAlgebra> {
    let diag = poset.validate();
    if !diag.graded || !diag.acyclic {
        return Err(Error::InvalidCw(diag.violations));
    }
    let vertices = poset.ids().to_vec();
    let arrows = poset.covers().to_vec();
    let two_paths = two_paths_of(vertices.len(), &arrows);
    let relations = two_paths
        .iter()
        .map(|(&key, paths)| {
            let rows = (1..paths.len())
                .map(|j| {
                    let mut v = vec![Q::zero(); paths.len()];
                    v[0] = Q::one();
                    v[j] = -Q::one();
                    v
                })
                .collect();
            (key, rows)
        })
        .collect();
    Ok(QuadraticAlgebra::new(vertices, arrows, relations))
}

/// Opposite quiver with the orthogonal relations, pairing each length-two
/// path with its reverse.
pub fn quadratic_dual(alg: &QuadraticAlgebra) -> QuadraticAlgebra {
    let arrows: Vec<(usize, usize)> = alg.arrows.iter().map(|&(s, t)| (t, s)).collect();
    let op_paths = two_paths_of(alg.n_vertices(), &arrows);
    let mut relations = BTreeMap::new();
    for (&(s, t), orig) in &alg.two_paths {
        let op = &op_paths[&(t, s)];
        // op path (b, a) is the reverse of original (a, b)
        let perm: Vec<usize> = op
            .iter()
            .map(|&(b, a)| orig.iter().position(|&p| p == (a, b)).expect("reversed path exists"))
            .collect();
        let rel = alg.relations(s, t);
        let perp = linalg::nullspace(rel, orig.len());
        let rows: Vec<Vec<Q>> = perp.iter().map(|v| perm.iter().map(|&i| v[i].clone()).collect()).collect();
        relations.insert((t, s), rows);
    }
    QuadraticAlgebra::new(alg.vertices.clone(), arrows, relations)
}

/// Graded dimensions until the first vanishing degree.
pub fn loewy_profile(alg: &QuadraticAlgebra, k_cap: usize) -> Result<LoewyProfile> {
    let mut dims = Vec::new();
    for k in 0..=k_cap {
        let d = alg.graded_dims(k);
        let total: usize = d.iter().flatten().sum();
        if total == 0 {
            let totals = dims.iter().map(|d: &Vec<Vec<usize>>| d.iter().flatten().sum()).collect();
            return Ok(LoewyProfile { loewy_length: k, dims, totals });
        }
        dims.push(d);
    }
    Err(Error::NonVanishingAtCap { cap: k_cap })
}

/// Coefficients of `H_A(-t) * H_B(t)^T - I`, where `H(t)[s][u] = sum_k dims_k[s][u] t^k`.
pub fn koszul_hilbert_check(alg: &QuadraticAlgebra, a: &LoewyProfile, b: &LoewyProfile) -> KoszulHilbertCheck {
    let n = alg.n_vertices();
    let mut residual = Vec::new();
    let max_deg = a.dims.len() + b.dims.len();
    for s in 0..n {
        for t in 0..n {
            for k in 0..max_deg {
                let mut c: i64 = 0;
                for i in 0..=k {
                    let (Some(ai), Some(bj)) = (a.dims.get(i), b.dims.get(k - i)) else { continue };
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for m in 0..n {
                        c += sign * (ai[s][m] * bj[t][m]) as i64;
                    }
                }
                if s == t && k == 0 {
                    c -= 1;
                }
                if c != 0 {
                    residual.push(HilbertResidual {
                        source: alg.vertices[s].clone(),
                        target: alg.vertices[t].clone(),
                        degree: k,
                        coefficient: c,
                    });
                }
            }
        }
    }
    KoszulHilbertCheck { holds: residual.is_empty(), residual }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profiles(p: &CwPoset) -> (QuadraticAlgebra, LoewyProfile, LoewyProfile) {
        let a = incidence_algebra(p).unwrap();
        let d = quadratic_dual(&a);
        let cap = p.top_dim() + 2;
        (a.clone(), loewy_profile(&a, cap).unwrap(), loewy_profile(&d, cap).unwrap())
    }

    #[test]
    fn diamond_dual_relation_is_sum() {
        let a = incidence_algebra(&CwPoset::diamond()).unwrap();
        assert_eq!(a.relation_dim(), 1);
        let d = quadratic_dual(&a);
        assert_eq!(d.relation_dim(), 1);
        let (s, t) = (0, 3); // b -> t in the dual
        assert_eq!(d.relations(s, t), &[vec![Q::one(), Q::one()]]);
        let (_, pa, pd) = profiles(&CwPoset::diamond());
        assert_eq!(pa.totals, vec![4, 4, 1]);
        assert_eq!(pd.totals, vec![4, 4, 1]);
    }

    #[test]
    fn double_dual_is_identity() {
        for p in [CwPoset::diamond(), CwPoset::torus(2), CwPoset::chain(3)] {
            let a = incidence_algebra(&p).unwrap();
            assert!(quadratic_dual(&quadratic_dual(&a)).same_presentation(&a));
        }
    }

    #[test]
    fn torus2_loewy_lengths() {
        let (a, pa, pd) = profiles(&CwPoset::torus(2));
        assert_eq!(pa.loewy_length, 3);
        assert_eq!(pd.loewy_length, 3);
        assert!(koszul_hilbert_check(&a, &pa, &pd).holds);
    }

    #[test]
    fn chain_has_no_relations_and_passes_hilbert_check() {
        let (a, pa, pd) = profiles(&CwPoset::chain(3));
        assert_eq!(a.relation_dim(), 0);
        assert_eq!(pa.loewy_length, 4);
        // every length-two path is a relation in the dual
        assert_eq!(pd.loewy_length, 2);
        assert!(koszul_hilbert_check(&a, &pa, &pd).holds);
    }

    #[test]
    fn cap_is_enforced() {
        let a = incidence_algebra(&CwPoset::chain(3)).unwrap();
        assert!(matches!(loewy_profile(&a, 2), Err(Error::NonVanishingAtCap { cap: 2 })));
    }

    #[test]
    fn invalid_poset_is_rejected() {
        let p = CwPoset::from_json(r#"{"cells":[{"id":"v","dim":0},{"id":"f","dim":2}],"covers":[["f","v"]]}"#).unwrap();
        assert!(matches!(incidence_algebra(&p), Err(Error::InvalidCw(_))));
    }
}
