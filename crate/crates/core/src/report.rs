//! End-to-end pipeline from a fan to the generation-time report.

use std::time::Instant;

use log::{info, warn};
use num_bigint::BigInt;
use serde::Serialize;

use crate::bondal_ruan::{br_stratification, image_phi, ImageMethod, PhiImage, EXACT_MAX_DIM};
use crate::error::{Error, Result};
use crate::fan::{Fan, FanCheck, FanDiagnostics};
use crate::incidence::{generation_time_bounds, torus_cohomology_loewy, CwPoset};
use crate::lattice::{json_ints, JsonInt, QuotientGroup};
use crate::skeleton::{coarsening_check, CoarseningReport};

pub const SCHEMA: &str = "toric-rouquier/1";

/// Largest torus whose CW incidence algebra is built for the upper bound.
pub const CW_UPPER_BOUND_MAX_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Worker threads; the output does not depend on it.
    pub jobs: usize,
    /// Adds wall-clock timing, which makes output differ run to run.
    pub timing: bool,
    /// Forces the grid method with this bound.
    pub grid_lmax: Option<u64>,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { jobs: 1, timing: false, grid_lmax: None, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FanSummary {
    pub dim: usize,
    #[serde(serialize_with = "int_rows")]
    pub rays: Vec<Vec<BigInt>>,
    pub max_cones: Vec<Vec<usize>>,
    pub smooth: bool,
    pub simplicial: bool,
    pub complete: bool,
    pub fan_check: FanCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouquierBounds {
    pub krull_dim: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub generator_description: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonSummary {
    pub mode: &'static str,
    pub coarsening: Option<CoarseningReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub fan: FanSummary,
    pub ghat: QuotientGroup,
    pub image_phi: PhiImage,
    pub strata_count: Option<usize>,
    pub rouquier: RouquierBounds,
    pub skeleton: SkeletonSummary,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn int_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<JsonInt>> = rows.iter().map(|r| json_ints(r)).collect();
    v.serialize(s)
}

/// Runs the pipeline on `fan` inside a pool of `opts.jobs` threads.
pub fn run_report(fan: &Fan, opts: &ReportOptions) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    pool.install(|| build_report(fan, opts))
}

/// Diagnostics of an invalid fan, as the error payload.
pub fn invalid_fan_error(diag: &FanDiagnostics) -> Error {
    Error::InvalidFan(serde_json::to_string(&diag.violations).expect("violations serialize"))
}

fn build_report(fan: &Fan, opts: &ReportOptions) -> Result<Report> {
    let start = Instant::now();
    let d = fan.dim();
    let mut warnings = Vec::new();
    let diag = fan.validate();
    if !diag.is_valid {
        return Err(invalid_fan_error(&diag));
    }
    if diag.fan_check == FanCheck::Probabilistic {
        warnings.push(format!("fan: overlap check in dimension {d} is sampled, not exact"));
    }
    let cox = fan.cox_data();
    if !cox.rays_span {
        warnings.push(format!("fan: rays do not span R^{d}; Ghat has free rank {}", cox.ghat.free_rank()));
    }
    info!("cox data: {} rays, Ghat free rank {}", cox.n_rays(), cox.ghat.free_rank());
    let method = match opts.grid_lmax {
        Some(l) => ImageMethod::Grid { lmax: Some(l) },
        None if d <= EXACT_MAX_DIM => ImageMethod::Chambers,
        None => ImageMethod::Grid { lmax: None },
    };
    let image = image_phi(&cox, method)?;
    if image.provenance.verdict == crate::bondal_ruan::Verdict::Heuristic {
        warnings.push("bondal_ruan: image computed on a Frobenius grid below the exact level (heuristic)".to_string());
    }
    let (strata_count, coarsening) = if d <= EXACT_MAX_DIM {
        let s = br_stratification(&cox)?;
        let c = coarsening_check(fan, 3, opts.seed)?;
        if !c.pass {
            warnings.push("skeleton: coarsening check failed".to_string());
        }
        (Some(s.strata.len()), Some(c))
    } else {
        warnings.push(format!("bondal_ruan: no exact stratification in dimension {d}"));
        (None, None)
    };

    let lower_bound = torus_cohomology_loewy(d).lower_bound;
    let upper_bound = if d <= CW_UPPER_BOUND_MAX_DIM {
        generation_time_bounds(&CwPoset::torus(d))?.t_ga
    } else {
        warnings.push(format!("incidence: torus CW model skipped in dimension {d}; upper bound is dim X"));
        d
    };
    if lower_bound != d || upper_bound != d {
        warn!("bounds ({lower_bound}, {upper_bound}) differ from Krull dimension {d}");
    }
    let classes: Vec<String> = image.classes.iter().map(|c| c.to_string()).collect();
    let generator_description = format!(
        "direct sum of the {} line bundles O(-D) with D in im Phi = {{{}}}",
        image.count,
        classes.join(", ")
    );
    let report = Report {
        schema: SCHEMA,
        fan: FanSummary {
            dim: d,
            rays: fan.rays().to_vec(),
            max_cones: fan.max_cones().to_vec(),
            smooth: diag.is_smooth,
            simplicial: diag.is_simplicial,
            complete: diag.is_complete,
            fan_check: diag.fan_check,
        },
        ghat: cox.ghat.clone(),
        image_phi: image,
        strata_count,
        rouquier: RouquierBounds { krull_dim: d, lower_bound, upper_bound, generator_description },
        skeleton: SkeletonSummary { mode: "stack", coarsening },
        warnings,
        timing: opts.timing.then(|| Timing { total_ms: start.elapsed().as_millis() }),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::catalog;

    #[test]
    fn p2_report() {
        let r = run_report(&catalog::projective_plane(), &ReportOptions::default()).unwrap();
        assert_eq!((r.rouquier.krull_dim, r.rouquier.lower_bound, r.rouquier.upper_bound), (2, 2, 2));
        assert_eq!(r.image_phi.count, 3);
        assert!(r.warnings.is_empty());
        assert!(r.to_json().contains("\"schema\": \"toric-rouquier/1\""));
    }

    #[test]
    fn affine_line_report() {
        let r = run_report(&catalog::affine_line(), &ReportOptions::default()).unwrap();
        assert_eq!((r.rouquier.lower_bound, r.rouquier.upper_bound), (1, 1));
        assert_eq!(r.image_phi.count, 1);
    }

    #[test]
    fn non_spanning_rays_are_flagged() {
        let fan = Fan::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap();
        let r = run_report(&fan, &ReportOptions::default()).unwrap();
        assert!(r.warnings.iter().any(|w| w.starts_with("fan: rays do not span")));
        assert_eq!((r.rouquier.lower_bound, r.rouquier.upper_bound), (2, 2));
    }

    #[test]
    fn timing_is_opt_in() {
        let r = run_report(&catalog::projective_line(), &ReportOptions::default()).unwrap();
        assert!(!r.to_json().contains("timing"));
        let opts = ReportOptions { timing: true, ..ReportOptions::default() };
        assert!(run_report(&catalog::projective_line(), &opts).unwrap().to_json().contains("total_ms"));
    }
}
