//! Exact face enumeration for the periodic arrangement `{x : <x, v_i> in Z}`
//! on the torus `R^d / Z^d`, `d <= 3`.
//!
//! The arrangement is refined by the coordinate hyperplanes `x_j in Z` so
//! that every face of the refinement is a bounded open polytope inside the
//! closed unit cube. Those polytopes are found flat by flat: vertices are
//! intersections of `d` hyperplanes, and the `k`-faces inside a `k`-flat are
//! reached by stepping off the `(k-1)`-faces of its sub-flats. Faces of the
//! original arrangement are then the connected components of cells sharing
//! the same set of integral ray pairings.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::CoxData;
use crate::lattice::{json_ints, JsonInt};
use crate::linalg::{denominator_lcm, dot_int_q, fmt_q, int_to_q, Q};

pub const EXACT_MAX_DIM: usize = 3;

/// `<normal, x> = level`, with `normal` primitive and its first nonzero
/// entry positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: Vec<BigInt>,
    pub level: BigInt,
}

impl Hyperplane {
    fn side(&self, x: &[Q]) -> i8 {
        let v = dot_int_q(&self.normal, x) - int_to_q(&self.level);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// A cell of the refined arrangement, represented inside `[0,1)^d`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub dim: usize,
    pub sign: Vec<i8>,
    /// Vertices of the closure, as points of the closed unit cube.
    pub vertices: Vec<Vec<Q>>,
    pub barycenter: Vec<Q>,
    /// Index of the arrangement face containing this cell.
    pub face: usize,
}

/// A face of the arrangement on the torus: a connected component of the
/// set of points with a fixed pattern of integral ray pairings.
#[derive(Clone, Debug)]
pub struct ArrangementFace {
    pub id: usize,
    pub dim: usize,
    /// Interior sample point: the vertex barycenter of the largest cell.
    pub barycenter: Vec<Q>,
    /// `(ray, level)` with `<barycenter, v_ray> = level`.
    pub equalities: Vec<(usize, BigInt)>,
    /// `(ray, floor)` with `floor < <barycenter, v_ray> < floor + 1`.
    pub inequalities: Vec<(usize, BigInt)>,
    pub cells: Vec<usize>,
    /// Compactly supported Euler characteristic (alternating cell count).
    pub euler_characteristic: i64,
    /// Faces meeting the closure of this one (excluding itself).
    pub boundary: Vec<usize>,
}

impl Serialize for ArrangementFace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ArrangementFace", 7)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("dim", &self.dim)?;
        let b: Vec<String> = self.barycenter.iter().map(fmt_q).collect();
        st.serialize_field("barycenter", &b)?;
        let eq: Vec<(usize, JsonInt)> = self.equalities.iter().map(|(i, l)| (*i, JsonInt(l))).collect();
        let ineq: Vec<(usize, JsonInt)> = self.inequalities.iter().map(|(i, l)| (*i, JsonInt(l))).collect();
        st.serialize_field("equalities", &eq)?;
        st.serialize_field("inequalities", &ineq)?;
        st.serialize_field("euler_characteristic", &self.euler_characteristic)?;
        st.serialize_field("boundary", &self.boundary)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub cells: Vec<Cell>,
    pub faces: Vec<ArrangementFace>,
}

impl Arrangement {
    /// Alternating count of the refined cells: the Euler characteristic of
    /// the torus, so 0 for `d >= 1` and 1 for `d = 0`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Least common multiple of the denominators of all face barycenters.
    pub fn barycenter_denominator_lcm(&self) -> BigInt {
        denominator_lcm(self.faces.iter().flat_map(|f| f.barycenter.iter()))
    }
}

impl Serialize for Arrangement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Arrangement", 4)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("refined_cells", &self.cells.len())?;
        st.serialize_field("euler_characteristic", &self.euler_characteristic())?;
        st.serialize_field("faces", &self.faces)?;
        st.end()
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Hyperplane", 2)?;
        st.serialize_field("normal", &json_ints(&self.normal))?;
        st.serialize_field("level", &JsonInt(&self.level))?;
        st.end()
    }
}

struct Flat {
    point: Vec<Q>,
    dirs: Vec<Vec<Q>>,
    on: Vec<usize>,
}

fn unit(d: usize, j: usize) -> Vec<BigInt> {
    (0..d).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }).collect()
}

fn normalized(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let first = v.iter().find(|x| !x.is_zero())?;
    Some(if first.is_negative() { v.iter().map(|x| -x).collect() } else { v.to_vec() })
}

fn hyperplanes_meeting_cube(rays: &[Vec<BigInt>], d: usize) -> Vec<Hyperplane> {
    let mut set = BTreeSet::new();
    for r in rays {
        let Some(n) = normalized(r) else { continue };
        let lo: BigInt = n.iter().filter(|x| x.is_negative()).sum();
        let hi: BigInt = n.iter().filter(|x| x.is_positive()).sum();
        let mut k = lo;
        while k <= hi {
            set.insert(Hyperplane { normal: n.clone(), level: k.clone() });
            k += 1;
        }
    }
    for j in 0..d {
        set.insert(Hyperplane { normal: unit(d, j), level: BigInt::zero() });
        set.insert(Hyperplane { normal: unit(d, j), level: BigInt::one() });
    }
    set.into_iter().collect()
}

fn contains_flat(h: &Hyperplane, f: &Flat) -> bool {
    dot_int_q(&h.normal, &f.point) == int_to_q(&h.level)
        && f.dirs.iter().all(|d| dot_int_q(&h.normal, d).is_zero())
}

fn intersect(f: &Flat, h: &Hyperplane) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let k = f.dirs.iter().position(|d| !dot_int_q(&h.normal, d).is_zero())?;
    let nk = dot_int_q(&h.normal, &f.dirs[k]);
    let t = (int_to_q(&h.level) - dot_int_q(&h.normal, &f.point)) / &nk;
    let point: Vec<Q> = f.point.iter().zip(&f.dirs[k]).map(|(p, d)| p + &t * d).collect();
    let dirs = f
        .dirs
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, dj)| {
            let c = dot_int_q(&h.normal, dj) / &nk;
            dj.iter().zip(&f.dirs[k]).map(|(a, b)| a - &c * b).collect()
        })
        .collect();
    Some((point, dirs))
}

fn in_closed_cube(x: &[Q]) -> bool {
    x.iter().all(|c| !c.is_negative() && *c <= Q::one())
}

/// `x` lies in the closure of the face with sign vector `face`.
fn sign_le(x: &[i8], face: &[i8]) -> bool {
    x.iter().zip(face).all(|(&a, &b)| a == 0 || a == b)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Enumerates the faces of `{<x, v_i> in Z}` on `R^d / Z^d`.
pub fn arrangement_faces(cox: &CoxData) -> Result<Arrangement> {
    let d = cox.dim;
    if d > EXACT_MAX_DIM {
        return Err(Error::ExactModeUnavailable { dim: d });
    }
    let hs = hyperplanes_meeting_cube(&cox.rays, d);
    let signs_of = |x: &[Q]| -> Vec<i8> { hs.iter().map(|h| h.side(x)).collect() };

    // flats by dimension, keyed by the set of hyperplanes containing them
    let mut flats: Vec<Vec<Flat>> = (0..=d).map(|_| Vec::new()).collect();
    let mut children: Vec<Vec<BTreeSet<usize>>> = (0..=d).map(|_| Vec::new()).collect();
    flats[d].push(Flat {
        point: vec![Q::zero(); d],
        dirs: (0..d).map(|j| unit(d, j).iter().map(int_to_q).collect()).collect(),
        on: Vec::new(),
    });
    children[d].push(BTreeSet::new());
    for k in (1..=d).rev() {
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut next: Vec<Flat> = Vec::new();
        for fi in 0..flats[k].len() {
            let mut kids = BTreeSet::new();
            for (hi, h) in hs.iter().enumerate() {
                if flats[k][fi].on.binary_search(&hi).is_ok() {
                    continue;
                }
                let Some((point, dirs)) = intersect(&flats[k][fi], h) else { continue };
                let mut g = Flat { point, dirs, on: Vec::new() };
                g.on = (0..hs.len()).filter(|&j| contains_flat(&hs[j], &g)).collect();
                let id = *index.entry(g.on.clone()).or_insert_with(|| {
                    next.push(g);
                    next.len() - 1
                });
                kids.insert(id);
            }
            children[k][fi] = kids;
        }
        children[k - 1] = vec![BTreeSet::new(); next.len()];
        flats[k - 1] = next;
    }

    // faces of the refined arrangement in the closed cube, by flat
    let mut seen: HashMap<Vec<i8>, usize> = HashMap::new();
    let mut samples: Vec<(usize, Vec<Q>, Vec<i8>)> = Vec::new();
    let mut faces_of_flat: Vec<Vec<Vec<usize>>> = flats.iter().map(|fs| vec![Vec::new(); fs.len()]).collect();
    for (fi, f) in flats[0].iter().enumerate() {
        if in_closed_cube(&f.point) {
            let s = signs_of(&f.point);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(s.clone()) {
                e.insert(samples.len());
                faces_of_flat[0][fi].push(samples.len());
                samples.push((0, f.point.clone(), s));
            }
        }
    }
    for k in 1..=d {
        for li in 0..flats[k].len() {
            let lflat = &flats[k][li];
            for &mi in &children[k][li] {
                let mflat = &flats[k - 1][mi];
                let Some(&h) = mflat.on.iter().find(|j| lflat.on.binary_search(j).is_err()) else {
                    continue;
                };
                let Some(w) = lflat.dirs.iter().find(|dv| !dot_int_q(&hs[h].normal, dv).is_zero()) else {
                    continue;
                };
                for &fid in &faces_of_flat[k - 1][mi].clone() {
                    let p = samples[fid].1.clone();
                    for dir in [1i8, -1] {
                        let w: Vec<Q> = w.iter().map(|x| if dir > 0 { x.clone() } else { -x }).collect();
                        let mut tmin: Option<Q> = None;
                        for hp in &hs {
                            let nw = dot_int_q(&hp.normal, &w);
                            if nw.is_zero() {
                                continue;
                            }
                            let t = (int_to_q(&hp.level) - dot_int_q(&hp.normal, &p)) / nw;
                            if t.is_positive() && tmin.as_ref().is_none_or(|m| t < *m) {
                                tmin = Some(t);
                            }
                        }
                        let Some(t) = tmin else { continue };
                        let half = t / Q::from_integer(BigInt::from(2));
                        let x: Vec<Q> = p.iter().zip(&w).map(|(a, b)| a + &half * b).collect();
                        if !in_closed_cube(&x) {
                            continue;
                        }
                        let s = signs_of(&x);
                        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(s.clone()) {
                            e.insert(samples.len());
                            faces_of_flat[k][li].push(samples.len());
                            samples.push((k, x, s));
                        }
                    }
                }
            }
        }
    }

    // keep the faces that represent torus cells: strictly below every x_j = 1 wall
    let upper_walls: Vec<usize> = (0..d)
        .map(|j| hs.iter().position(|h| h.normal == unit(d, j) && h.level.is_one()).expect("wall present"))
        .collect();
    let vertex_points: Vec<(Vec<Q>, Vec<i8>)> =
        samples.iter().filter(|s| s.0 == 0).map(|s| (s.1.clone(), s.2.clone())).collect();
    let mut cells: Vec<Cell> = samples
        .iter()
        .filter(|(_, _, s)| upper_walls.iter().all(|&w| s[w] < 0))
        .map(|(k, _, s)| {
            let vertices: Vec<Vec<Q>> =
                vertex_points.iter().filter(|(_, vs)| sign_le(vs, s)).map(|(v, _)| v.clone()).collect();
            let m = Q::from_integer(BigInt::from(vertices.len()));
            let barycenter: Vec<Q> =
                (0..d).map(|j| vertices.iter().map(|v| v[j].clone()).sum::<Q>() / &m).collect();
            debug_assert_eq!(&signs_of(&barycenter), s);
            Cell { dim: *k, sign: s.clone(), vertices, barycenter, face: usize::MAX }
        })
        .collect();
    cells.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.barycenter.cmp(&b.barycenter)));

    // closure on the torus: some translate of F's barycenter by m in {0,1}^d
    // lies in the closure of G
    let translates: Vec<Vec<Vec<i8>>> = cells
        .iter()
        .map(|c| {
            (0u32..(1 << d))
                .filter_map(|mask| {
                    let x: Vec<Q> = (0..d)
                        .map(|j| if mask & (1 << j) != 0 { &c.barycenter[j] + Q::one() } else { c.barycenter[j].clone() })
                        .collect();
                    in_closed_cube(&x).then(|| signs_of(&x))
                })
                .collect()
        })
        .collect();
    let mut cell_closure: Vec<(usize, usize)> = Vec::new();
    for (g, cg) in cells.iter().enumerate() {
        for (f, cf) in cells.iter().enumerate() {
            if cf.dim < cg.dim && translates[f].iter().any(|s| sign_le(s, &cg.sign)) {
                cell_closure.push((f, g));
            }
        }
    }

    let patterns: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| (0..cox.rays.len()).filter(|&i| dot_int_q(&cox.rays[i], &c.barycenter).is_integer()).collect())
        .collect();
    let mut uf = UnionFind((0..cells.len()).collect());
    for &(f, g) in &cell_closure {
        if patterns[f] == patterns[g] {
            uf.union(f, g);
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..cells.len() {
        groups.entry(uf.find(c)).or_default().push(c);
    }
    let mut faces: Vec<ArrangementFace> = groups
        .into_values()
        .map(|members| {
            let dim = members.iter().map(|&c| cells[c].dim).max().unwrap_or(0);
            let rep = *members.iter().find(|&&c| cells[c].dim == dim).expect("nonempty");
            let barycenter = cells[rep].barycenter.clone();
            let mut equalities = Vec::new();
            let mut inequalities = Vec::new();
            for (i, r) in cox.rays.iter().enumerate() {
                let a = dot_int_q(r, &barycenter);
                if a.is_integer() {
                    equalities.push((i, a.to_integer()));
                } else {
                    inequalities.push((i, a.floor().to_integer()));
                }
            }
            let euler_characteristic =
                members.iter().map(|&c| if cells[c].dim.is_multiple_of(2) { 1 } else { -1 }).sum();
            ArrangementFace {
                id: 0,
                dim,
                barycenter,
                equalities,
                inequalities,
                cells: members,
                euler_characteristic,
                boundary: Vec::new(),
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.barycenter.cmp(&b.barycenter)));
    for (id, f) in faces.iter_mut().enumerate() {
        f.id = id;
        for &c in &f.cells {
            cells[c].face = id;
        }
    }
    let mut boundary: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); faces.len()];
    for &(f, g) in &cell_closure {
        let (ff, fg) = (cells[f].face, cells[g].face);
        if ff != fg {
            boundary[fg].insert(ff);
        }
    }
    for (face, b) in faces.iter_mut().zip(boundary) {
        face.boundary = b.into_iter().collect();
    }

    Ok(Arrangement { dim: d, hyperplanes: hs, cells, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::catalog;
    use crate::linalg::{q, q_frac};

    #[test]
    fn p1_has_a_vertex_and_an_arc() {
        let arr = arrangement_faces(&catalog::projective_line().cox_data()).unwrap();
        assert_eq!(arr.faces.len(), 2);
        assert_eq!(arr.faces[0].dim, 0);
        assert_eq!(arr.faces[0].barycenter, vec![q(0)]);
        assert_eq!(arr.faces[1].dim, 1);
        assert_eq!(arr.faces[1].barycenter, vec![q_frac(1, 2)]);
        assert_eq!(arr.faces[1].boundary, vec![0]);
        assert_eq!(arr.euler_characteristic(), 0);
    }

    #[test]
    fn p2_counts_and_euler_characteristic() {
        let arr = arrangement_faces(&catalog::projective_plane().cox_data()).unwrap();
        let by_dim = |k| arr.faces.iter().filter(|f| f.dim == k).count();
        assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (1, 3, 2));
        assert_eq!(arr.euler_characteristic(), 0);
        let chi: i64 = arr.faces.iter().map(|f| f.euler_characteristic).sum();
        assert_eq!(chi, 0);
        assert_eq!(arr.barycenter_denominator_lcm(), BigInt::from(6));
    }

    #[test]
    fn no_rays_gives_one_face() {
        let arr = arrangement_faces(&catalog::torus(2).cox_data()).unwrap();
        assert_eq!(arr.faces.len(), 1);
        assert_eq!(arr.faces[0].dim, 2);
        assert_eq!(arr.faces[0].euler_characteristic, 0);
    }

    #[test]
    fn faces_need_not_be_cells() {
        // a single ray (1,0) in the plane: a circle and an open annulus
        let f = crate::fan::Fan::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap();
        let arr = arrangement_faces(&f.cox_data()).unwrap();
        assert_eq!(arr.faces.len(), 2);
        assert_eq!(arr.faces[0].dim, 1);
        assert_eq!(arr.faces[0].euler_characteristic, 0);
        assert_eq!(arr.faces[1].dim, 2);
    }

    #[test]
    fn p3_is_exact_and_four_dimensional_is_not() {
        let arr = arrangement_faces(&catalog::projective_space_3().cox_data()).unwrap();
        assert_eq!(arr.euler_characteristic(), 0);
        let f4 = crate::fan::Fan::new(4, vec![], vec![]).unwrap();
        assert!(matches!(arrangement_faces(&f4.cox_data()), Err(Error::ExactModeUnavailable { dim: 4 })));
    }

    #[test]
    fn zero_dimensional_torus_is_a_point() {
        let arr = arrangement_faces(&catalog::torus(0).cox_data()).unwrap();
        assert_eq!(arr.faces.len(), 1);
        assert_eq!(arr.euler_characteristic(), 1);
    }
}
