//! Skeleton strata on the cotangent bundle of the torus: for each cone
//! `sigma`, the covectors in `-sigma` over the points where a congruence
//! lattice pairs integrally.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bondal_ruan::{arrangement_faces, phi_eval, TorusPoint};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{hermite_basis, in_hermite_span, json_ints, lattice_contains};
use crate::linalg::{self, dot_int_q, fmt_q, int_to_q, Q};

/// Which congruence lattice a cone imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Saturated lattice of the cone: the underlying (possibly singular) variety.
    Variety,
    /// Ray generators only: the Cox stack.
    Stack,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "variety" => Ok(Mode::Variety),
            "stack" => Ok(Mode::Stack),
            other => Err(Error::Parse(format!("mode: expected variety or stack, got {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Variety => "variety",
            Mode::Stack => "stack",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModePair {
    pub coarse: Mode,
    pub fine: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonStratum {
    pub cone: Vec<usize>,
    /// `-v_i` for the rays of the cone.
    pub covectors: Vec<Vec<BigInt>>,
    /// Hermite basis of the congruence lattice.
    pub lattice: Vec<Vec<BigInt>>,
    pub mode: Mode,
}

impl Serialize for SkeletonStratum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SkeletonStratum", 4)?;
        st.serialize_field("cone", &self.cone)?;
        let c: Vec<_> = self.covectors.iter().map(|v| json_ints(v)).collect();
        let l: Vec<_> = self.lattice.iter().map(|v| json_ints(v)).collect();
        st.serialize_field("covectors", &c)?;
        st.serialize_field("lattice", &l)?;
        st.serialize_field("mode", &self.mode)?;
        st.end()
    }
}

/// `(x, xi)` with `x` a lift of a torus point and `xi` a covector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentPoint {
    pub x: TorusPoint,
    pub xi: Vec<Q>,
}

impl CotangentPoint {
    pub fn new(x: Vec<Q>, xi: Vec<Q>) -> CotangentPoint {
        CotangentPoint { x: TorusPoint(x), xi }
    }
}

impl Serialize for CotangentPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CotangentPoint", 2)?;
        let x: Vec<String> = self.x.0.iter().map(fmt_q).collect();
        let xi: Vec<String> = self.xi.iter().map(fmt_q).collect();
        st.serialize_field("x", &x)?;
        st.serialize_field("xi", &xi)?;
        st.end()
    }
}

fn congruence_lattice(fan: &Fan, cone: &[usize], mode: Mode) -> Vec<Vec<BigInt>> {
    let l = fan.cone_lattices(cone).expect("cone of this fan");
    match mode {
        Mode::Variety => l.saturated_lattice,
        Mode::Stack => l.ray_lattice,
    }
}

/// One stratum per cone, zero cone (the zero section) first.
pub fn skeleton_strata(fan: &Fan, mode: Mode) -> Vec<SkeletonStratum> {
    fan.cones()
        .iter()
        .map(|cone| SkeletonStratum {
            cone: cone.clone(),
            covectors: cone.iter().map(|&i| fan.ray(i).iter().map(|x| -x).collect()).collect(),
            lattice: congruence_lattice(fan, cone, mode),
            mode,
        })
        .collect()
}

/// A fan's skeleton with its strata precomputed, for repeated membership tests.
pub struct Skeleton<'a> {
    fan: &'a Fan,
    strata: Vec<SkeletonStratum>,
}

impl<'a> Skeleton<'a> {
    pub fn new(fan: &'a Fan, mode: Mode) -> Skeleton<'a> {
        Skeleton { fan, strata: skeleton_strata(fan, mode) }
    }

    pub fn strata(&self) -> &[SkeletonStratum] {
        &self.strata
    }

    /// First stratum (in cone order) containing the point.
    pub fn stratum_of(&self, p: &CotangentPoint) -> Result<Option<&SkeletonStratum>> {
        let d = self.fan.dim();
        for len in [p.x.dim(), p.xi.len()] {
            if len != d {
                return Err(Error::DimensionMismatch { expected: d, found: len });
            }
        }
        let minus_xi: Vec<Q> = p.xi.iter().map(|v| -v).collect();
        Ok(self.strata.iter().find(|s| {
            self.fan.cone_contains(&s.cone, &minus_xi)
                && s.lattice.iter().all(|b| dot_int_q(b, &p.x.0).is_integer())
        }))
    }

    pub fn contains(&self, p: &CotangentPoint) -> Result<bool> {
        Ok(self.stratum_of(p)?.is_some())
    }
}

pub fn skeleton_member(fan: &Fan, mode: Mode, p: &CotangentPoint) -> Result<bool> {
    Skeleton::new(fan, mode).contains(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SubsetVerdict {
    Proved,
    Refuted { witness: CotangentPoint },
    Unknown { reason: String },
}

/// Containment check for one fine cone against the coarse cone carrying
/// its relative interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceCheck {
    pub fine_cone: Vec<usize>,
    pub coarse_carrier: Vec<usize>,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FalsifierRun {
    pub samples: usize,
    pub seed: u64,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    pub modes: ModePair,
    #[serde(flatten)]
    pub verdict: SubsetVerdict,
    pub pieces: Vec<PieceCheck>,
    pub falsifier: Option<FalsifierRun>,
}

#[derive(Clone, Copy, Debug)]
pub struct SubsetOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SubsetOptions {
    fn default() -> Self {
        SubsetOptions { samples: 10_000, seed: 0x5eed }
    }
}

fn ray_sum(fan: &Fan, cone: &[usize]) -> Vec<Q> {
    (0..fan.dim()).map(|k| cone.iter().map(|&i| int_to_q(&fan.ray(i)[k])).sum()).collect()
}

/// Why `fine` does not refine `coarse`, if it does not.
fn refinement_gap(coarse: &Fan, fine: &Fan) -> Option<String> {
    if coarse.dim() != fine.dim() {
        return Some(format!("lattice ranks differ: {} vs {}", coarse.dim(), fine.dim()));
    }
    for cone in fine.max_cones() {
        let inside = coarse.max_cones().iter().any(|c| {
            cone.iter().all(|&i| coarse.cone_contains(c, &fine.ray(i).iter().map(int_to_q).collect::<Vec<_>>()))
        });
        if !inside {
            return Some(format!("fine cone {cone:?} lies in no coarse cone"));
        }
    }
    // each coarse cone must be covered by the fine cones inside it: the
    // top-dimensional pieces form a pseudomanifold whose free walls lie on
    // the boundary
    for c in coarse.max_cones() {
        let k = c.len();
        let inside: Vec<&Vec<usize>> = fine
            .cones()
            .iter()
            .filter(|f| f.len() == k && coarse.carrier(&ray_sum(fine, f)).is_some_and(|car| car == *c))
            .collect();
        if inside.is_empty() {
            return Some(format!("coarse cone {c:?} is not covered"));
        }
        let mut walls: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for f in &inside {
            for drop in 0..f.len() {
                let w: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &r)| r).collect();
                *walls.entry(w).or_default() += 1;
            }
        }
        for (w, n) in walls {
            let interior = coarse.carrier(&ray_sum(fine, &w)).is_some_and(|car| car == *c);
            let want = if interior { 2 } else { 1 };
            if n != want {
                return Some(format!("coarse cone {c:?} is not covered near fine wall {w:?}"));
            }
        }
    }
    None
}

/// Point of the coarse skeleton over cone `coarse_cone` that misses the fine
/// congruence `g`; `xi` is fixed by the caller.
fn witness(coarse_lattice: &[Vec<BigInt>], g: &[BigInt], dim: usize, xi: Vec<Q>) -> Option<CotangentPoint> {
    let b: Vec<Vec<Q>> = coarse_lattice.iter().map(|r| r.iter().map(int_to_q).collect()).collect();
    let gq: Vec<Q> = g.iter().map(int_to_q).collect();
    let x = match linalg::express_in(&b, &gq) {
        Some(coeffs) => {
            let j = coeffs.iter().position(|c| !c.is_integer())?;
            let mut e = vec![Q::zero(); b.len()];
            e[j] = Q::one();
            linalg::solve(&b, &e, dim)?
        }
        None => {
            // g leaves the span: pair it with 1/2 and the lattice with 0
            let mut rows = b.clone();
            rows.push(gq);
            let mut rhs = vec![Q::zero(); b.len()];
            rhs.push(Q::new(BigInt::one(), BigInt::from(2)));
            linalg::solve(&rows, &rhs, dim)?
        }
    };
    Some(CotangentPoint::new(x, xi))
}

fn random_q(rng: &mut ChaCha8Rng, num: i64) -> Q {
    Q::new(BigInt::from(rng.gen_range(-num..=num)), BigInt::from(rng.gen_range(1..=12)))
}

/// A random point of the coarse skeleton over a random cone.
fn sample_point(coarse: &Fan, lattices: &[Vec<Vec<BigInt>>], rng: &mut ChaCha8Rng) -> CotangentPoint {
    let d = coarse.dim();
    let ci = rng.gen_range(0..coarse.cones().len());
    let cone = &coarse.cones()[ci];
    let mut xi = vec![Q::zero(); d];
    for &i in cone {
        // zero weights keep faces in play
        let w = Q::new(BigInt::from(rng.gen_range(0..=6)), BigInt::from(rng.gen_range(1..=6)));
        for (x, v) in xi.iter_mut().zip(coarse.ray(i)) {
            *x -= &w * int_to_q(v);
        }
    }
    let b: Vec<Vec<Q>> = lattices[ci].iter().map(|r| r.iter().map(int_to_q).collect()).collect();
    let target: Vec<Q> = b.iter().map(|_| Q::from_integer(BigInt::from(rng.gen_range(-3..=3)))).collect();
    let mut x = linalg::solve(&b, &target, d).expect("lattice basis is independent");
    for k in linalg::nullspace(&b, d) {
        let t = random_q(rng, 12);
        for (xj, kj) in x.iter_mut().zip(&k) {
            *xj += &t * kj;
        }
    }
    CotangentPoint::new(x, xi)
}

/// Sampled search for a point of the coarse skeleton outside the fine one.
pub fn falsify(coarse: &Fan, fine: &Fan, modes: ModePair, opts: SubsetOptions) -> (FalsifierRun, Option<CotangentPoint>) {
    let lattices: Vec<Vec<Vec<BigInt>>> = coarse.cones().iter().map(|c| congruence_lattice(coarse, c, modes.coarse)).collect();
    let fine_sk = Skeleton::new(fine, modes.fine);
    let failures: Vec<(usize, CotangentPoint)> = (0..opts.samples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
            let p = sample_point(coarse, &lattices, &mut rng);
            (!fine_sk.contains(&p).expect("dimensions agree")).then_some((i, p))
        })
        .collect();
    let run = FalsifierRun { samples: opts.samples, seed: opts.seed, counterexamples: failures.len() };
    (run, failures.into_iter().next().map(|(_, p)| p))
}

/// Decides whether the skeleton of `coarse` lies inside the skeleton of
/// `fine`, for a fan `fine` refining `coarse`.
pub fn skeleton_subset(coarse: &Fan, fine: &Fan, modes: ModePair, opts: SubsetOptions) -> SubsetReport {
    if let Some(reason) = refinement_gap(coarse, fine) {
        return SubsetReport { modes, verdict: SubsetVerdict::Unknown { reason }, pieces: Vec::new(), falsifier: None };
    }
    let d = fine.dim();
    let mut pieces = Vec::new();
    let mut refuted = None;
    for cone in fine.cones() {
        let bary = ray_sum(fine, cone);
        let carrier = coarse.carrier(&bary).expect("refinement keeps the support");
        let lf = congruence_lattice(fine, cone, modes.fine);
        let lc = congruence_lattice(coarse, &carrier, modes.coarse);
        let contained = lattice_contains(&lc, &lf, d);
        if !contained && refuted.is_none() {
            let h = hermite_basis(&lc, d);
            let g = lf.iter().find(|g| !in_hermite_span(&h, g)).expect("some generator escapes");
            let xi: Vec<Q> = bary.iter().map(|v| -v).collect();
            refuted = witness(&h, g, d, xi);
        }
        pieces.push(PieceCheck { fine_cone: cone.clone(), coarse_carrier: carrier, contained });
    }
    if let Some(w) = refuted {
        debug_assert!(skeleton_member(coarse, modes.coarse, &w).unwrap());
        debug_assert!(!skeleton_member(fine, modes.fine, &w).unwrap());
        return SubsetReport { modes, verdict: SubsetVerdict::Refuted { witness: w }, pieces, falsifier: None };
    }
    let (run, counterexample) = falsify(coarse, fine, modes, opts);
    let verdict = match counterexample {
        // the lattice test and the sampler disagree: surface it rather than hide it
        Some(witness) => SubsetVerdict::Refuted { witness },
        None => SubsetVerdict::Proved,
    };
    SubsetReport { modes, verdict, pieces, falsifier: Some(run) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceConstancy {
    pub face: usize,
    pub samples: usize,
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumImplication {
    pub cone: Vec<usize>,
    /// Rays whose walls contain the stratum's base locus.
    pub active_rays: Vec<usize>,
    pub implied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoarseningReport {
    pub pass: bool,
    pub faces: Vec<FaceConstancy>,
    pub strata: Vec<StratumImplication>,
}

/// `Phi` is constant on arrangement faces, and every stack-mode congruence
/// is generated by arrangement normals vanishing mod 1 on its base locus.
pub fn coarsening_check(fan: &Fan, samples_per_face: usize, seed: u64) -> Result<CoarseningReport> {
    let cox = fan.cox_data();
    let arr = arrangement_faces(&cox)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = Vec::new();
    for face in &arr.faces {
        let reference = phi_eval(&cox, &TorusPoint(face.barycenter.clone()))?;
        let mut constant = true;
        for s in 0..samples_per_face {
            let cell = &arr.cells[face.cells[s % face.cells.len()]];
            // strictly positive weights land in the relative interior of the cell
            let weights: Vec<Q> = cell.vertices.iter().map(|_| Q::from_integer(BigInt::from(rng.gen_range(1..=9)))).collect();
            let total: Q = weights.iter().sum();
            let p: Vec<Q> = (0..arr.dim)
                .map(|k| cell.vertices.iter().zip(&weights).map(|(v, w)| &v[k] * w).sum::<Q>() / &total)
                .collect();
            if phi_eval(&cox, &TorusPoint(p))? != reference {
                constant = false;
            }
        }
        faces.push(FaceConstancy { face: face.id, samples: samples_per_face, constant });
    }
    let mut strata = Vec::new();
    for s in skeleton_strata(fan, Mode::Stack) {
        let active_rays: Vec<usize> =
            (0..fan.n_rays()).filter(|&j| s.cone.contains(&j) || in_hermite_span(&s.lattice, fan.ray(j))).collect();
        let normals: Vec<Vec<BigInt>> = active_rays.iter().map(|&j| fan.ray(j).to_vec()).collect();
        let implied = lattice_contains(&normals, &s.lattice, fan.dim());
        strata.push(StratumImplication { cone: s.cone, active_rays, implied });
    }
    let pass = faces.iter().all(|f| f.constant) && strata.iter().all(|s| s.implied);
    Ok(CoarseningReport { pass, faces, strata })
}

/// `(x, xi)` scaled and translated; used by property tests.
pub fn transform(p: &CotangentPoint, shift: &[BigInt], scale: &Q) -> CotangentPoint {
    assert!(scale.is_positive());
    CotangentPoint { x: p.x.translated(shift), xi: p.xi.iter().map(|v| v * scale).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::catalog;
    use crate::linalg::{parse_q_vec, q_frac};

    fn pt(x: &str, xi: &str) -> CotangentPoint {
        CotangentPoint::new(parse_q_vec(x).unwrap(), parse_q_vec(xi).unwrap())
    }

    #[test]
    fn p1_strata() {
        let s = skeleton_strata(&catalog::projective_line(), Mode::Variety);
        assert_eq!(s.len(), 3);
        assert!(s[0].cone.is_empty() && s[0].lattice.is_empty());
        assert_eq!(s[1].lattice.len(), 1);
    }

    #[test]
    fn weighted_cone_lattices() {
        let f = catalog::weighted_112_cone();
        let top = vec![0, 1];
        assert_eq!(congruence_lattice(&f, &top, Mode::Variety).len(), 2);
        assert_eq!(f.cone_lattices(&top).unwrap().multiplicity, BigInt::from(2));
    }

    #[test]
    fn membership_examples() {
        let p1 = catalog::projective_line();
        assert!(!skeleton_member(&p1, Mode::Stack, &pt("1/2", "-1")).unwrap());
        assert!(skeleton_member(&p1, Mode::Stack, &pt("1/2", "0")).unwrap());
        let p2 = catalog::projective_plane();
        assert!(!skeleton_member(&p2, Mode::Variety, &pt("1/2,0", "-1,0")).unwrap());
        assert!(skeleton_member(&p2, Mode::Variety, &pt("0,1/3", "-1,0")).unwrap());
        assert!(skeleton_member(&p2, Mode::Variety, &pt("0,1/3", "-2,0")).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let p2 = catalog::projective_plane();
        assert!(matches!(skeleton_member(&p2, Mode::Stack, &pt("0", "0,0")), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn singular_cone_inclusion_is_mode_sensitive() {
        let coarse = catalog::singular_cone();
        let fine = catalog::singular_cone_resolution();
        let opts = SubsetOptions { samples: 500, seed: 1 };
        let r = skeleton_subset(&coarse, &fine, ModePair { coarse: Mode::Variety, fine: Mode::Variety }, opts);
        assert_eq!(r.verdict, SubsetVerdict::Proved);
        let r = skeleton_subset(&coarse, &fine, ModePair { coarse: Mode::Stack, fine: Mode::Stack }, opts);
        let expected = CotangentPoint::new(vec![q_frac(1, 2), Q::zero()], vec![q_frac(-1, 1), Q::zero()]);
        assert_eq!(r.verdict, SubsetVerdict::Refuted { witness: expected });
    }

    #[test]
    fn same_fan_is_proved_and_non_refinement_is_unknown() {
        let p2 = catalog::projective_plane();
        let modes = ModePair { coarse: Mode::Stack, fine: Mode::Stack };
        let opts = SubsetOptions { samples: 200, seed: 2 };
        assert_eq!(skeleton_subset(&p2, &p2, modes, opts).verdict, SubsetVerdict::Proved);
        let r = skeleton_subset(&catalog::singular_cone_resolution(), &catalog::singular_cone(), modes, opts);
        assert!(matches!(r.verdict, SubsetVerdict::Unknown { .. }));
        let r = skeleton_subset(&p2, &catalog::p1_times_p1(), modes, opts);
        assert!(matches!(r.verdict, SubsetVerdict::Unknown { .. }));
    }

    #[test]
    fn coarsening_passes_on_small_fans() {
        for f in [catalog::projective_line(), catalog::projective_plane(), catalog::torus(2), catalog::singular_cone()] {
            let r = coarsening_check(&f, 3, 7).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
