//! SVG picture of a 2-dimensional Bondal–Ruan stratification on the unit square.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bondal_ruan::BRStratification;
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
    "#86bcb6", "#d37295",
];
const SIDE: i64 = 400;
const MARGIN: i64 = 20;

fn color(class_index: usize) -> &'static str {
    PALETTE[class_index % PALETTE.len()]
}

/// Rounds to three decimals using integer arithmetic.
fn decimal(x: &Q) -> String {
    let scaled = x * q(1000);
    let two = BigInt::from(2);
    let num: BigInt = scaled.numer() * &two + scaled.denom();
    let n = num.div_floor(&(scaled.denom() * &two));
    let neg = n.is_negative();
    let (int, frac) = n.abs().div_rem(&BigInt::from(1000));
    let sign = if neg { "-" } else { "" };
    if frac.is_zero() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{}", format!("{frac:03}").trim_end_matches('0'))
    }
}

fn px(p: &[Q]) -> (String, String) {
    let x = q(MARGIN) + &p[0] * q(SIDE);
    let y = q(MARGIN + SIDE) - &p[1] * q(SIDE);
    (decimal(&x), decimal(&y))
}

/// Counter-clockwise order around `c`, starting from the positive x direction.
fn angular_cmp(c: &[Q], a: &[Q], b: &[Q]) -> Ordering {
    let (ax, ay) = (&a[0] - &c[0], &a[1] - &c[1]);
    let (bx, by) = (&b[0] - &c[0], &b[1] - &c[1]);
    let half = |x: &Q, y: &Q| u8::from(!(y.is_positive() || (y.is_zero() && x.is_positive())));
    half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
        let cross = &ax * &by - &ay * &bx;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub fn render_svg(strat: &BRStratification) -> Result<String> {
    let arr = &strat.arrangement;
    if arr.dim != 2 {
        return Err(Error::UnsupportedDimension { dim: arr.dim, what: "SVG output needs d = 2" });
    }
    let width = MARGIN * 3 + SIDE + 200;
    let height = MARGIN * 2 + SIDE;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#).unwrap();
    for dim in [2, 1, 0] {
        writeln!(out, r#"<g id="cells-{dim}">"#).unwrap();
        for cell in arr.cells.iter().filter(|c| c.dim == dim) {
            let col = color(strat.stratum_of_face(cell.face));
            match dim {
                2 => {
                    let mut vs = cell.vertices.clone();
                    vs.sort_by(|a, b| angular_cmp(&cell.barycenter, a, b));
                    let pts: Vec<String> = vs.iter().map(|v| {
                        let (x, y) = px(v);
                        format!("{x},{y}")
                    }).collect();
                    writeln!(out, r#"<polygon points="{}" fill="{col}" stroke="none"/>"#, pts.join(" ")).unwrap();
                }
                1 => {
                    let (x1, y1) = px(&cell.vertices[0]);
                    let (x2, y2) = px(&cell.vertices[1]);
                    writeln!(
                        out,
                        r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{col}" stroke-width="4"/>"#
                    )
                    .unwrap();
                }
                _ => {
                    let (x, y) = px(&cell.vertices[0]);
                    writeln!(out, r#"<circle cx="{x}" cy="{y}" r="6" fill="{col}" stroke="black" stroke-width="1"/>"#)
                        .unwrap();
                }
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIDE}" height="{SIDE}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    writeln!(out, r#"<g id="legend" font-family="monospace" font-size="14">"#).unwrap();
    let lx = MARGIN * 2 + SIDE;
    for (i, s) in strat.strata.iter().enumerate() {
        let y = MARGIN + 24 * i as i64;
        writeln!(out, r#"<rect x="{lx}" y="{y}" width="16" height="16" fill="{}"/>"#, color(i)).unwrap();
        writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, lx + 24, y + 13, s.class).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

pub fn emit_svg(strat: &BRStratification, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(strat)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bondal_ruan::br_stratification;
    use crate::fan::catalog;
    use crate::linalg::q_frac;

    #[test]
    fn decimals_are_exact_roundings() {
        assert_eq!(decimal(&q_frac(1, 3)), "0.333");
        assert_eq!(decimal(&q_frac(2, 3)), "0.667");
        assert_eq!(decimal(&q(420)), "420");
        assert_eq!(decimal(&q_frac(-1, 8)), "-0.125");
    }

    #[test]
    fn p2_has_three_colors() {
        let s = br_stratification(&catalog::projective_plane().cox_data()).unwrap();
        let svg = render_svg(&s).unwrap();
        let used: std::collections::BTreeSet<&str> =
            PALETTE.iter().copied().filter(|c| svg.split("id=\"legend\"").next().unwrap().contains(c)).collect();
        assert_eq!(used.len(), 3);
        assert_eq!(svg, render_svg(&s).unwrap());
    }

    #[test]
    fn p1xp1_has_four_classes() {
        let s = br_stratification(&catalog::p1_times_p1().cox_data()).unwrap();
        assert_eq!(s.strata.len(), 4);
        assert!(render_svg(&s).unwrap().contains(PALETTE[3]));
    }

    #[test]
    fn p1_is_unsupported() {
        let s = br_stratification(&catalog::projective_line().cox_data()).unwrap();
        assert!(matches!(render_svg(&s), Err(Error::UnsupportedDimension { dim: 1, .. })));
    }
}
