use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Fan;
use crate::lattice::{content, saturation_index, JsonInt};
use crate::linalg::{self, int_to_q, Q};

/// Dimension up to which the fan condition is decided exactly.
pub const EXACT_FAN_CHECK_MAX_DIM: usize = 3;

const SAMPLES_PER_FACE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FanCheck {
    Exact,
    Probabilistic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonPrimitiveRay { ray: usize },
    DependentRays { cone: Vec<usize> },
    OverlappingCones { first: Vec<usize>, second: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMultiplicity {
    pub cone: Vec<usize>,
    pub multiplicity: BigInt,
}

impl Serialize for ConeMultiplicity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConeMultiplicity", 2)?;
        st.serialize_field("cone", &self.cone)?;
        st.serialize_field("multiplicity", &JsonInt(&self.multiplicity))?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FanDiagnostics {
    pub is_valid: bool,
    pub is_simplicial: bool,
    pub is_smooth: bool,
    pub is_complete: bool,
    pub krull_dim: usize,
    /// Whether the rays span `N_R`; otherwise `beta_dual` has a kernel.
    pub rays_span: bool,
    pub fan_check: FanCheck,
    pub multiplicities: Vec<ConeMultiplicity>,
    pub violations: Vec<Violation>,
}

impl Fan {
    pub fn validate(&self) -> FanDiagnostics {
        let d = self.dim();
        let mut violations = Vec::new();

        for (i, r) in self.rays().iter().enumerate() {
            if !content(r).is_one() {
                violations.push(Violation::NonPrimitiveRay { ray: i });
            }
        }

        let mut is_simplicial = true;
        for cone in self.max_cones() {
            if !self.is_simplicial_cone(cone) {
                is_simplicial = false;
                violations.push(Violation::DependentRays { cone: cone.clone() });
            }
        }

        let multiplicities: Vec<ConeMultiplicity> = self
            .max_cones()
            .iter()
            .map(|c| ConeMultiplicity { cone: c.clone(), multiplicity: saturation_index(&self.cone_rays(c), d) })
            .collect();

        let fan_check = if d <= EXACT_FAN_CHECK_MAX_DIM { FanCheck::Exact } else { FanCheck::Probabilistic };
        if is_simplicial {
            let facets = self.facets();
            for (a, i) in facets.iter().enumerate() {
                for j in &facets[a + 1..] {
                    let overlap = match fan_check {
                        FanCheck::Exact => self.overlap_exact(i, j),
                        FanCheck::Probabilistic => self.overlap_sampled(i, j),
                    };
                    if overlap {
                        violations.push(Violation::OverlappingCones { first: i.clone(), second: j.clone() });
                    }
                }
            }
        }

        let all_rays: Vec<Vec<Q>> = self.rays().iter().map(|r| r.iter().map(int_to_q).collect()).collect();
        let rays_span = linalg::rank(&all_rays) == d;

        let is_valid = violations.is_empty();
        let is_smooth = is_simplicial && multiplicities.iter().all(|m| m.multiplicity.is_one());
        let is_complete = is_valid && self.is_complete_simplicial();

        FanDiagnostics {
            is_valid,
            is_simplicial,
            is_smooth,
            is_complete,
            krull_dim: d,
            rays_span,
            fan_check,
            multiplicities,
            violations,
        }
    }

    /// Whether two simplicial cones meet in more than their common face:
    /// is there `lambda, mu >= 0` with `sum lambda_i v_i = sum mu_j v_j` and
    /// positive weight on a ray outside `I ∩ J`?
    fn overlap_exact(&self, i: &[usize], j: &[usize]) -> bool {
        let d = self.dim();
        let cols = i.len() + j.len();
        let mut m: Vec<Vec<Q>> = (0..d)
            .map(|k| {
                i.iter()
                    .map(|&r| int_to_q(&self.ray(r)[k]))
                    .chain(j.iter().map(|&r| -int_to_q(&self.ray(r)[k])))
                    .collect()
            })
            .collect();
        let mut norm: Vec<Q> = i.iter().map(|r| if j.contains(r) { Q::zero() } else { Q::one() }).collect();
        norm.extend(j.iter().map(|r| if i.contains(r) { Q::zero() } else { Q::one() }));
        m.push(norm);
        let mut b = vec![Q::zero(); d];
        b.push(Q::one());
        linalg::nonneg_solution(&m, &b, cols).is_some()
    }

    /// Samples relative-interior points of each face of `i` not shared with
    /// `j` and tests them against `j` (and vice versa).
    fn overlap_sampled(&self, i: &[usize], j: &[usize]) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fa11);
        for (a, b) in [(i, j), (j, i)] {
            for mask in 1u32..(1u32 << a.len()) {
                let face: Vec<usize> = (0..a.len()).filter(|k| mask & (1 << k) != 0).map(|k| a[k]).collect();
                if face.iter().all(|r| b.contains(r)) {
                    continue;
                }
                for _ in 0..SAMPLES_PER_FACE {
                    let weights: Vec<Q> = face.iter().map(|_| Q::from_integer(rng.gen_range(1..=97).into())).collect();
                    let x: Vec<Q> = (0..self.dim())
                        .map(|k| face.iter().zip(&weights).map(|(&r, w)| w * int_to_q(&self.ray(r)[k])).sum())
                        .collect();
                    if self.cone_contains(b, &x) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// For a valid simplicial fan: every facet is full-dimensional and every
    /// codimension-one face lies in exactly two facets.
    fn is_complete_simplicial(&self) -> bool {
        let d = self.dim();
        if d == 0 {
            return true;
        }
        let facets = self.facets();
        if facets.is_empty() || facets.iter().any(|c| c.len() != d) {
            return false;
        }
        let mut walls: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &facets {
            for skip in 0..c.len() {
                let w: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
                *walls.entry(w).or_default() += 1;
            }
        }
        walls.values().all(|&n| n == 2)
    }
}
