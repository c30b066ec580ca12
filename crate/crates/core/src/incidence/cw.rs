use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `{"cells":[{"id":"v0","dim":0},...],"covers":[["e0","v0"],...]}`, upper cell first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CwSpec {
    pub cells: Vec<CellSpec>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub id: String,
    pub dim: usize,
}

/// Face poset of a CW complex, given by its codimension-one incidences.
#[derive(Clone, Debug)]
pub struct CwPoset {
    ids: Vec<String>,
    dims: Vec<usize>,
    covers: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    /// Strict down-sets under the transitive closure of `covers`.
    below: Vec<BTreeSet<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CwDiagnostics {
    pub graded: bool,
    pub acyclic: bool,
    pub closures_nonempty: bool,
    pub diamond: bool,
    pub top_dim: usize,
    pub violations: Vec<String>,
    /// Poset data can only certify necessary conditions for a regular CW complex.
    pub verdict: &'static str,
}

impl CwDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CwPoset {
    pub fn from_spec(spec: &CwSpec) -> Result<CwPoset> {
        let mut index = HashMap::new();
        for (i, c) in spec.cells.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::Parse(format!("cells[{i}]: duplicate id {:?}", c.id)));
            }
        }
        let mut covers = BTreeSet::new();
        for (k, (u, l)) in spec.covers.iter().enumerate() {
            let ui = *index.get(u).ok_or_else(|| Error::Parse(format!("covers[{k}]: unknown cell {u:?}")))?;
            let li = *index.get(l).ok_or_else(|| Error::Parse(format!("covers[{k}]: unknown cell {l:?}")))?;
            covers.insert((ui, li));
        }
        let ids: Vec<String> = spec.cells.iter().map(|c| c.id.clone()).collect();
        let dims: Vec<usize> = spec.cells.iter().map(|c| c.dim).collect();
        let covers: Vec<(usize, usize)> = covers.into_iter().collect();
        let below = down_sets(ids.len(), &covers);
        Ok(CwPoset { ids, dims, covers, index, below })
    }

    pub fn from_json(text: &str) -> Result<CwPoset> {
        let spec: CwSpec = serde_json::from_str(text)?;
        CwPoset::from_spec(&spec)
    }

    pub fn to_spec(&self) -> CwSpec {
        CwSpec {
            cells: self.ids.iter().zip(&self.dims).map(|(id, &dim)| CellSpec { id: id.clone(), dim }).collect(),
            covers: self.covers.iter().map(|&(u, l)| (self.ids[u].clone(), self.ids[l].clone())).collect(),
        }
    }

    fn build(cells: Vec<(String, usize)>, covers: Vec<(String, String)>) -> CwPoset {
        let spec = CwSpec {
            cells: cells.into_iter().map(|(id, dim)| CellSpec { id, dim }).collect(),
            covers,
        };
        CwPoset::from_spec(&spec).expect("builder produces consistent ids")
    }

    /// A single 0-cell.
    pub fn point() -> CwPoset {
        Self::build(vec![("p".into(), 0)], vec![])
    }

    /// The circle as two vertices and two edges.
    pub fn circle() -> CwPoset {
        Self::build(
            vec![("v0".into(), 0), ("v1".into(), 0), ("e0".into(), 1), ("e1".into(), 1)],
            vec![
                ("e0".into(), "v0".into()),
                ("e0".into(), "v1".into()),
                ("e1".into(), "v0".into()),
                ("e1".into(), "v1".into()),
            ],
        )
    }

    /// A chain `c0 < c1 < ... < cn` with `dim ci = i`.
    pub fn chain(n: usize) -> CwPoset {
        Self::build(
            (0..=n).map(|i| (format!("c{i}"), i)).collect(),
            (1..=n).map(|i| (format!("c{i}"), format!("c{}", i - 1))).collect(),
        )
    }

    /// Bottom, two middle cells, top.
    pub fn diamond() -> CwPoset {
        Self::build(
            vec![("b".into(), 0), ("m0".into(), 1), ("m1".into(), 1), ("t".into(), 2)],
            vec![
                ("m0".into(), "b".into()),
                ("m1".into(), "b".into()),
                ("t".into(), "m0".into()),
                ("t".into(), "m1".into()),
            ],
        )
    }

    /// Product cell structure; cell ids are joined with `*`.
    pub fn product(&self, other: &CwPoset) -> CwPoset {
        let name = |a: usize, b: usize| format!("{}*{}", self.ids[a], other.ids[b]);
        let mut cells = Vec::new();
        let mut covers = Vec::new();
        for a in 0..self.len() {
            for b in 0..other.len() {
                cells.push((name(a, b), self.dims[a] + other.dims[b]));
                for &(u, l) in &self.covers {
                    if u == a {
                        covers.push((name(a, b), name(l, b)));
                    }
                }
                for &(u, l) in &other.covers {
                    if u == b {
                        covers.push((name(a, b), name(a, l)));
                    }
                }
            }
        }
        Self::build(cells, covers)
    }

    /// `T^n` as the `n`-fold product of [`CwPoset::circle`].
    pub fn torus(n: usize) -> CwPoset {
        (0..n).fold(CwPoset::point(), |acc, _| if acc.len() == 1 { CwPoset::circle() } else { acc.product(&CwPoset::circle()) })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn top_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    /// `a < b` in the transitive closure.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(&a)
    }

    /// Cells strictly between `lower` and `upper`.
    pub fn open_interval(&self, lower: usize, upper: usize) -> Vec<usize> {
        self.below[upper].iter().copied().filter(|&c| self.less(lower, c)).collect()
    }

    /// Comparable pairs `(lower, upper)` with `dim upper - dim lower = gap`.
    pub fn pairs_with_gap(&self, gap: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for &l in &self.below[u] {
                if self.dims[u] == self.dims[l] + gap {
                    out.push((l, u));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> CwDiagnostics {
        let mut violations = Vec::new();
        let mut graded = true;
        for &(u, l) in &self.covers {
            if self.dims[u] != self.dims[l] + 1 {
                graded = false;
                violations.push(format!(
                    "cover {} > {} drops dimension {} -> {}",
                    self.ids[u], self.ids[l], self.dims[u], self.dims[l]
                ));
            }
        }
        let acyclic = (0..self.len()).all(|i| !self.below[i].contains(&i));
        if !acyclic {
            violations.push("cover relation has a cycle".to_string());
        }
        let mut closures_nonempty = true;
        for i in 0..self.len() {
            if self.dims[i] > 0 && !self.covers.iter().any(|&(u, _)| u == i) {
                closures_nonempty = false;
                violations.push(format!("cell {} of dim {} covers nothing", self.ids[i], self.dims[i]));
            }
        }
        let mut diamond = true;
        if graded && acyclic {
            for (l, u) in self.pairs_with_gap(2) {
                let mid = self.open_interval(l, u);
                if mid.len() != 2 {
                    diamond = false;
                    violations.push(format!(
                        "interval [{}, {}] has {} intermediate cells, expected 2",
                        self.ids[l],
                        self.ids[u],
                        mid.len()
                    ));
                }
            }
        } else {
            diamond = false;
        }
        CwDiagnostics {
            graded,
            acyclic,
            closures_nonempty,
            diamond,
            top_dim: self.top_dim(),
            violations,
            verdict: "necessary conditions for a regular CW face poset (graded, diamond)",
        }
    }
}

fn down_sets(n: usize, covers: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, l) in covers {
        lower[u].push(l);
    }
    (0..n)
        .map(|s| {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<usize> = lower[s].clone();
            while let Some(c) = stack.pop() {
                if seen.insert(c) {
                    stack.extend(lower[c].iter().copied());
                }
            }
            seen
        })
        .collect()
}
