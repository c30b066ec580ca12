//! The Bondal–Ruan map `Phi : M_R / M -> Ghat`,
//! `x ↦ mu(-sum_i floor(<x, v_i>) e_i)`, its image and its level-set
//! stratification of the torus.

mod arrangement;

pub use arrangement::{arrangement_faces, Arrangement, ArrangementFace, Cell, Hyperplane, EXACT_MAX_DIM};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::CoxData;
use crate::lattice::{GClass, IntMatrix, JsonInt};
use crate::linalg::{dot_int_q, fmt_q, parse_q_vec, Q};

/// A point of `M_R / M`, given by a rational lift.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint(pub Vec<Q>);

impl TorusPoint {
    /// Parses `"1/3,1/3"`.
    pub fn parse(s: &str) -> Result<TorusPoint> {
        parse_q_vec(s).map(TorusPoint)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The lift in `[0,1)^d`.
    pub fn reduced(&self) -> TorusPoint {
        TorusPoint(self.0.iter().map(|x| x - x.floor()).collect())
    }

    pub fn translated(&self, m: &[BigInt]) -> TorusPoint {
        TorusPoint(self.0.iter().zip(m).map(|(x, k)| x + Q::from_integer(k.clone())).collect())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `Phi(x) = mu(-sum_i floor(<x, v_i>) e_i)`.
pub fn phi_eval(cox: &CoxData, x: &TorusPoint) -> Result<GClass> {
    if x.dim() != cox.dim {
        return Err(Error::DimensionMismatch { expected: cox.dim, found: x.dim() });
    }
    let v: Vec<BigInt> = cox.rays.iter().map(|r| -dot_int_q(r, &x.0).floor().to_integer()).collect();
    cox.mu(&v)
}

/// `Phi(u / level)` using integer arithmetic only.
fn phi_on_grid(cox: &CoxData, u: &[BigInt], level: &BigInt) -> GClass {
    let v: Vec<BigInt> = cox
        .rays
        .iter()
        .map(|r| {
            let a: BigInt = r.iter().zip(u).map(|(x, y)| x * y).sum();
            -a.div_floor(level)
        })
        .collect();
    cox.mu(&v).expect("ray count matches")
}

/// `{ Phi(u / level) : u in {0..level-1}^d }`: the classes of the line
/// bundles in the level-`level` toric Frobenius pushforward of `O`.
pub fn frobenius_level_set(cox: &CoxData, level: u64) -> BTreeSet<GClass> {
    assert!(level >= 1, "Frobenius level must be positive");
    let d = cox.dim as u32;
    let total = level.checked_pow(d).expect("grid size overflows u64");
    let lvl = BigInt::from(level);
    (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let u: Vec<BigInt> = (0..d)
                .map(|_| {
                    let c = idx % level;
                    idx /= level;
                    BigInt::from(c)
                })
                .collect();
            phi_on_grid(cox, &u, &lvl)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageMethod {
    /// Evaluate at one interior point of every arrangement face (d <= 3).
    Chambers,
    /// Union of Frobenius level sets for levels `1..=lmax`; `None` picks a
    /// default bound.
    Grid { lmax: Option<u64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub method: &'static str,
    pub verdict: Verdict,
    pub lmax: Option<u64>,
    /// Grid level that provably suffices (lcm of face barycenter denominators).
    pub sufficient_level: Option<BigInt>,
    /// Smallest level after which the grid union stopped growing.
    pub stable_from: Option<u64>,
    /// Union unchanged between `lmax / 2` and `lmax`.
    pub stabilized: Option<bool>,
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Provenance", 6)?;
        st.serialize_field("method", self.method)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("lmax", &self.lmax)?;
        st.serialize_field("sufficient_level", &self.sufficient_level.as_ref().map(JsonInt))?;
        st.serialize_field("stable_from", &self.stable_from)?;
        st.serialize_field("stabilized", &self.stabilized)?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiImage {
    pub classes: Vec<GClass>,
    pub count: usize,
    pub provenance: Provenance,
}

/// Default grid bound when no arrangement is available: `d + 1` times the
/// lcm of the nonzero `|det|` over all `d`-subsets of rays. The factor
/// `d + 1` is what `P^d` needs.
pub fn default_grid_level(cox: &CoxData) -> u64 {
    let d = cox.dim;
    let n = cox.n_rays();
    let mut l = BigInt::one();
    let mut subset: Vec<usize> = (0..d).collect();
    if d > 0 && n >= d {
        loop {
            let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| cox.rays[i].clone()).collect();
            let det = IntMatrix::from_rows(&rows, d).expect("square").det();
            if !det.is_zero() {
                l = l.lcm(&det);
            }
            // next combination
            let Some(k) = (0..d).rev().find(|&k| subset[k] < n - d + k) else { break };
            subset[k] += 1;
            for j in k + 1..d {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    (l * (d as u64 + 1)).to_u64().unwrap_or(u64::MAX)
}

pub fn image_phi(cox: &CoxData, method: ImageMethod) -> Result<PhiImage> {
    match method {
        ImageMethod::Chambers => {
            let arr = arrangement_faces(cox)?;
            let classes: BTreeSet<GClass> = arr
                .faces
                .par_iter()
                .map(|f| phi_eval(cox, &TorusPoint(f.barycenter.clone())))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .collect();
            let classes: Vec<GClass> = classes.into_iter().collect();
            Ok(PhiImage {
                count: classes.len(),
                classes,
                provenance: Provenance {
                    method: "chambers",
                    verdict: Verdict::Exact,
                    lmax: None,
                    sufficient_level: Some(arr.barycenter_denominator_lcm()),
                    stable_from: None,
                    stabilized: None,
                },
            })
        }
        ImageMethod::Grid { lmax } => {
            let sufficient = if cox.dim <= EXACT_MAX_DIM {
                Some(arrangement_faces(cox)?.barycenter_denominator_lcm())
            } else {
                None
            };
            let lmax = lmax
                .or_else(|| sufficient.as_ref().and_then(|s| s.to_u64()))
                .unwrap_or_else(|| default_grid_level(cox))
                .max(1);
            let mut union = BTreeSet::new();
            let mut half = BTreeSet::new();
            let mut stable_from = 1;
            for level in 1..=lmax {
                let before = union.len();
                union.extend(frobenius_level_set(cox, level));
                if union.len() != before {
                    stable_from = level;
                }
                if level == lmax / 2 {
                    half = union.clone();
                }
            }
            let stabilized = lmax >= 2 && half == union;
            let verdict = match &sufficient {
                Some(s) if BigInt::from(lmax) >= *s => Verdict::Exact,
                _ => Verdict::Heuristic,
            };
            let classes: Vec<GClass> = union.into_iter().collect();
            Ok(PhiImage {
                count: classes.len(),
                classes,
                provenance: Provenance {
                    method: "grid",
                    verdict,
                    lmax: Some(lmax),
                    sufficient_level: sufficient,
                    stable_from: Some(stable_from),
                    stabilized: Some(stabilized),
                },
            })
        }
    }
}

/// One level set `S_D = Phi^{-1}(D)` as a union of arrangement faces.
#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    pub class: GClass,
    pub faces: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct BRStratification {
    pub arrangement: Arrangement,
    /// Ordered by class.
    pub strata: Vec<Stratum>,
    /// `(lower, upper)` stratum indices with `S_lower` meeting the closure of
    /// `S_upper`, `lower != upper`.
    pub closure: Vec<(usize, usize)>,
}

impl BRStratification {
    pub fn stratum_of_face(&self, face: usize) -> usize {
        self.strata.iter().position(|s| s.faces.contains(&face)).expect("every face is assigned")
    }
}

impl Serialize for BRStratification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BRStratification", 3)?;
        st.serialize_field("strata", &self.strata)?;
        st.serialize_field("closure", &self.closure)?;
        st.serialize_field("arrangement", &self.arrangement)?;
        st.end()
    }
}

pub fn br_stratification(cox: &CoxData) -> Result<BRStratification> {
    let arrangement = arrangement_faces(cox)?;
    let values: Vec<GClass> = arrangement
        .faces
        .iter()
        .map(|f| phi_eval(cox, &TorusPoint(f.barycenter.clone())))
        .collect::<Result<_>>()?;
    let classes: BTreeSet<GClass> = values.iter().cloned().collect();
    let strata: Vec<Stratum> = classes
        .into_iter()
        .map(|class| {
            let faces: Vec<usize> = (0..values.len()).filter(|&i| values[i] == class).collect();
            let dim = faces.iter().map(|&f| arrangement.faces[f].dim).max().unwrap_or(0);
            Stratum { class, faces, dim }
        })
        .collect();
    let index_of = |face: usize| strata.iter().position(|s| s.faces.contains(&face)).expect("assigned");
    let mut closure = BTreeSet::new();
    for f in &arrangement.faces {
        let upper = index_of(f.id);
        for &b in &f.boundary {
            let lower = index_of(b);
            if lower != upper {
                closure.insert((lower, upper));
            }
        }
    }
    Ok(BRStratification { arrangement, strata, closure: closure.into_iter().collect() })
}
