//! Face posets of regular CW complexes and their Koszul incidence algebras.

mod cw;
mod homology;
mod quadratic;

pub use cw::{CellSpec, CwDiagnostics, CwPoset, CwSpec};
pub use homology::{interval_homology, IntervalHomology};
pub use quadratic::{
    incidence_algebra, koszul_hilbert_check, loewy_profile, quadratic_dual, HilbertResidual, KoszulHilbertCheck,
    LoewyProfile, QuadraticAlgebra,
};

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationTimeBounds {
    pub dim_x: usize,
    /// `LL(A^!) - 1`
    pub t_ga: usize,
    /// `LL(A) - 1`
    pub t_ga_dual: usize,
    pub consistent: bool,
    pub findings: Vec<String>,
}

/// Generation-time bounds read off the Loewy lengths of `A` and `A^!`.
pub fn generation_time_bounds(poset: &CwPoset) -> Result<GenerationTimeBounds> {
    let a = incidence_algebra(poset)?;
    let dual = quadratic_dual(&a);
    let cap = poset.top_dim() + 2;
    let la = loewy_profile(&a, cap)?.loewy_length;
    let ld = loewy_profile(&dual, cap)?.loewy_length;
    let dim_x = poset.top_dim();
    let (t_ga, t_ga_dual) = (ld.saturating_sub(1), la.saturating_sub(1));
    let mut findings = Vec::new();
    if t_ga != dim_x {
        findings.push(format!("LL(A^!) - 1 = {t_ga} differs from dim X = {dim_x}"));
    }
    if t_ga_dual != dim_x {
        findings.push(format!("LL(A) - 1 = {t_ga_dual} differs from dim X = {dim_x}"));
    }
    Ok(GenerationTimeBounds { dim_x, t_ga, t_ga_dual, consistent: findings.is_empty(), findings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusCohomologyLoewy {
    pub n: usize,
    /// `dim H^k(T^n)` for `k = 0..=n`.
    pub graded_dims: Vec<u64>,
    pub loewy_length: usize,
    pub lower_bound: usize,
}

/// Exterior algebra on `n` generators, counted by subset size.
pub fn torus_cohomology_loewy(n: usize) -> TorusCohomologyLoewy {
    assert!(n < 31, "subset enumeration is limited to n < 31");
    let mut graded_dims = vec![0u64; n + 1];
    for mask in 0u32..(1u32 << n) {
        graded_dims[mask.count_ones() as usize] += 1;
    }
    let loewy_length = graded_dims.iter().rposition(|&d| d > 0).map_or(0, |k| k + 1);
    TorusCohomologyLoewy { n, graded_dims, loewy_length, lower_bound: loewy_length - 1 }
}

#[derive(Clone, Debug, Serialize)]
pub struct CwSummary {
    pub cells: usize,
    pub diagnostics: CwDiagnostics,
    pub intervals: Vec<IntervalHomology>,
    pub all_intervals_spherical: bool,
    pub algebra: LoewyProfile,
    pub dual: LoewyProfile,
    pub koszul_hilbert: KoszulHilbertCheck,
    pub bounds: GenerationTimeBounds,
}

/// Full pipeline for a CW face poset; intervals of every gap >= 2 are swept.
pub fn cw_summary(poset: &CwPoset) -> Result<CwSummary> {
    let diagnostics = poset.validate();
    let a = incidence_algebra(poset)?;
    let dual = quadratic_dual(&a);
    let cap = poset.top_dim() + 2;
    let pa = loewy_profile(&a, cap)?;
    let pd = loewy_profile(&dual, cap)?;
    let koszul_hilbert = koszul_hilbert_check(&a, &pa, &pd);
    let mut intervals = Vec::new();
    for gap in 2..=poset.top_dim() {
        for (l, u) in poset.pairs_with_gap(gap) {
            intervals.push(interval_homology(poset, poset.id(l), poset.id(u))?);
        }
    }
    let all_intervals_spherical = intervals.iter().all(|h| h.is_sphere);
    Ok(CwSummary {
        cells: poset.len(),
        diagnostics,
        intervals,
        all_intervals_spherical,
        algebra: pa,
        dual: pd,
        koszul_hilbert,
        bounds: generation_time_bounds(poset)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_bounds_match_dimension() {
        for n in 1..=3 {
            let b = generation_time_bounds(&CwPoset::torus(n)).unwrap();
            assert_eq!((b.t_ga, b.t_ga_dual, b.dim_x), (n, n, n));
            assert!(b.consistent);
        }
    }

    #[test]
    fn exterior_algebra_counts() {
        let t = torus_cohomology_loewy(3);
        assert_eq!(t.graded_dims, vec![1, 3, 3, 1]);
        assert_eq!((t.loewy_length, t.lower_bound), (4, 3));
        assert_eq!(torus_cohomology_loewy(0).loewy_length, 1);
    }

    #[test]
    fn t3_summary_is_spherical() {
        let s = cw_summary(&CwPoset::torus(3)).unwrap();
        assert!(s.all_intervals_spherical && s.koszul_hilbert.holds);
        assert_eq!(s.algebra.loewy_length, 4);
    }
}
