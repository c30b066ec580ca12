//! Rational simplicial fans and the lattice data they induce.

pub mod catalog;
mod cox;
mod validate;

pub use cox::{ConeLattices, CoxData};
pub use validate::{ConeMultiplicity, FanCheck, FanDiagnostics, Violation};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ints;
use crate::linalg::{self, int_to_q, Q};

/// On-disk fan format: `{"dim":2,"rays":[[1,0],...],"max_cones":[[0,1],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A fan with rays sorted lexicographically; cone index sets refer to the
/// sorted order and are themselves sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn from_spec(spec: &FanSpec) -> Result<Fan> {
        let rays: Vec<Vec<BigInt>> = spec.rays.iter().map(|r| ints(r)).collect();
        Fan::new(spec.dim, rays, spec.max_cones.clone())
    }

    pub fn from_json(text: &str) -> Result<Fan> {
        let spec: FanSpec = serde_json::from_str(text)?;
        Fan::from_spec(&spec)
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            dim,
            rays.iter().map(|r| ints(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// Structural checks only (lengths, indices, duplicates). Geometric
    /// problems are reported by [`Fan::validate`].
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::Parse(format!(
                    "rays[{i}]: has {} entries, expected dim = {dim}",
                    r.len()
                )));
            }
        }
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        for w in order.windows(2) {
            if rays[w[0]] == rays[w[1]] {
                return Err(Error::Parse(format!("rays[{}]: duplicate ray", w[1].max(w[0]))));
            }
        }
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_rays: Vec<Vec<BigInt>> = order.iter().map(|&o| rays[o].clone()).collect();

        let mut maxes = BTreeSet::new();
        for (c, cone) in max_cones.iter().enumerate() {
            let mut mapped = Vec::with_capacity(cone.len());
            for &i in cone {
                if i >= rays.len() {
                    return Err(Error::Parse(format!(
                        "max_cones[{c}]: ray index {i} out of range ({} rays)",
                        rays.len()
                    )));
                }
                mapped.push(new_index[i]);
            }
            mapped.sort_unstable();
            if mapped.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse(format!("max_cones[{c}]: repeated ray index")));
            }
            maxes.insert(mapped);
        }
        let max_cones: Vec<Vec<usize>> = maxes.into_iter().collect();

        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert(Vec::new());
        for cone in &max_cones {
            if cone.len() > 20 {
                return Err(Error::Parse("max_cones: cone with more than 20 rays".into()));
            }
            for mask in 1u32..(1u32 << cone.len()) {
                let face: Vec<usize> =
                    (0..cone.len()).filter(|k| mask & (1 << k) != 0).map(|k| cone[k]).collect();
                faces.insert(face);
            }
        }
        let mut cones: Vec<Vec<usize>> = faces.into_iter().collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        Ok(Fan { dim, rays: sorted_rays, max_cones, cones })
    }

    pub fn to_spec(&self) -> FanSpec {
        FanSpec {
            dim: self.dim,
            rays: self
                .rays
                .iter()
                .map(|r| r.iter().map(|x| x.to_i64().expect("ray entry fits i64")).collect())
                .collect(),
            max_cones: self.max_cones.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Every cone of the fan (all faces of the listed cones, including the
    /// zero cone), ordered by dimension and then lexicographically.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Listed cones that are not faces of other listed cones.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.max_cones
            .iter()
            .filter(|c| {
                !self.max_cones.iter().any(|o| o.len() > c.len() && c.iter().all(|i| o.contains(i)))
            })
            .cloned()
            .collect()
    }

    pub fn is_face(&self, cone: &[usize]) -> bool {
        let mut c = cone.to_vec();
        c.sort_unstable();
        self.cones.binary_search_by(|x| x.len().cmp(&c.len()).then_with(|| x.cmp(&c))).is_ok()
    }

    pub fn cone_rays(&self, cone: &[usize]) -> Vec<Vec<BigInt>> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Coordinates of `x` in the ray basis of a simplicial cone, if `x` lies
    /// in the linear span of its rays.
    pub fn cone_coordinates(&self, cone: &[usize], x: &[Q]) -> Option<Vec<Q>> {
        let gens: Vec<Vec<Q>> =
            cone.iter().map(|&i| self.rays[i].iter().map(int_to_q).collect()).collect();
        let c = linalg::express_in(&gens, x)?;
        // express_in zeroes free variables; for independent rays the answer
        // is unique, so just confirm it reproduces x
        let back: Vec<Q> = (0..self.dim)
            .map(|k| gens.iter().zip(&c).map(|(g, ci)| &g[k] * ci).sum())
            .collect();
        (back == x).then_some(c)
    }

    /// Whether `x` lies in the (closed) cone.
    pub fn cone_contains(&self, cone: &[usize], x: &[Q]) -> bool {
        self.cone_coordinates(cone, x).is_some_and(|c| c.iter().all(|v| !v.is_negative()))
    }

    /// The unique cone whose relative interior contains `x`, if `x` lies in
    /// the support.
    pub fn carrier(&self, x: &[Q]) -> Option<Vec<usize>> {
        for cone in &self.max_cones {
            if let Some(c) = self.cone_coordinates(cone, x) {
                if c.iter().all(|v| !v.is_negative()) {
                    return Some(
                        cone.iter().zip(&c).filter(|(_, v)| !v.is_zero()).map(|(&i, _)| i).collect(),
                    );
                }
            }
        }
        None
    }

    pub fn is_simplicial_cone(&self, cone: &[usize]) -> bool {
        let rows: Vec<Vec<Q>> =
            cone.iter().map(|&i| self.rays[i].iter().map(int_to_q).collect()).collect();
        linalg::rank(&rows) == cone.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rays_are_sorted_and_cones_remapped() {
        let f = Fan::from_json(r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[2,0]]}"#)
            .unwrap();
        assert_eq!(f.rays(), &[ints(&[-1, -1]), ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(f.max_cones(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(f.cones().len(), 7);
        assert!(f.is_face(&[2, 0]));
        assert!(!f.is_face(&[0, 1, 2]));
    }

    #[test]
    fn structural_errors_name_the_field() {
        let e = Fan::from_json(r#"{"dim":2,"rays":[[1,0,0]],"max_cones":[]}"#).unwrap_err();
        assert!(e.to_string().contains("rays[0]"));
        let e = Fan::from_json(r#"{"dim":1,"rays":[[1]],"max_cones":[[3]]}"#).unwrap_err();
        assert!(e.to_string().contains("max_cones[0]"));
        let e = Fan::from_json(r#"{"dim":1,"rays":[[1]]}"#).unwrap_err();
        assert!(e.to_string().contains("max_cones"));
    }

    #[test]
    fn carrier_of_interior_point() {
        let f = catalog::projective_plane();
        let c = f.carrier(&[linalg::q(1), linalg::q(0)]).unwrap();
        assert_eq!(f.cone_rays(&c), vec![ints(&[1, 0])]);
        assert_eq!(f.carrier(&[linalg::q(0), linalg::q(0)]).unwrap(), Vec::<usize>::new());
    }
}
