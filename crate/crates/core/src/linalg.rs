//! Exact linear algebra over the rationals.
//!
//! Matrices are dense `Vec<Vec<Q>>` in row-major order. Everything here is
//! exact; the sizes that show up in this crate are small (tens of columns),
//! so plain Gauss-Jordan elimination is enough.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_q(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Parses `"p/q"` or a bare integer.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parses a comma-separated list of rationals, e.g. `"1/2,0"`.
pub fn parse_q_vec(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_q(a: &[BigInt], x: &[Q]) -> Q {
    a.iter().zip(x).map(|(ai, xi)| xi * int_to_q(ai)).sum()
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Row-reduced echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Rank of a list of sparse-ish rows, eliminating incrementally so that
/// large families of mostly-dependent vectors stay cheap.
pub fn rank_incremental(rows: impl IntoIterator<Item = Vec<Q>>) -> usize {
    // basis rows stored with their pivot column, each fully reduced on its pivot
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    for mut v in rows {
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= y * &f;
                    }
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        if !y.is_zero() {
                            *x -= y * &f;
                        }
                    }
                }
            }
            basis.push((p, v));
        }
    }
    basis.len()
}

/// Basis of the right null space `{x : m x = 0}`; `cols` is needed when `m`
/// has no rows.
pub fn nullspace(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -w[r][f].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `m x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &[Vec<Q>], b: &[Q], cols: usize) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

/// Solves `sum_j coeffs[j] * gens[j] = target` for generators given as
/// vectors; `None` if `target` is outside their span.
pub fn express_in(gens: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let dim = target.len();
    let m: Vec<Vec<Q>> = (0..dim)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    solve(&m, target, gens.len())
}

/// Decides whether `{y >= 0 : m y = b}` is nonempty, returning a basic
/// feasible point. Enumerates supports of linearly independent columns,
/// so it is only meant for the handful of columns a pair of simplicial
/// cones produces.
pub fn nonneg_solution(m: &[Vec<Q>], b: &[Q], cols: usize) -> Option<Vec<Q>> {
    let r = rank(m);
    assert!(cols < 24, "nonneg_solution: too many columns ({cols})");
    for mask in 0u32..(1u32 << cols) {
        if mask.count_ones() as usize > r {
            continue;
        }
        let support: Vec<usize> = (0..cols).filter(|c| mask & (1 << c) != 0).collect();
        let sub: Vec<Vec<Q>> = m
            .iter()
            .map(|row| support.iter().map(|&c| row[c].clone()).collect())
            .collect();
        if rank(&sub) != support.len() {
            continue;
        }
        if let Some(y) = solve(&sub, b, support.len()) {
            if y.iter().all(|v| !v.is_negative()) {
                let mut full = vec![Q::zero(); cols];
                for (k, &c) in support.iter().enumerate() {
                    full[c] = y[k].clone();
                }
                return Some(full);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_q("1/2").unwrap(), q_frac(1, 2));
        assert_eq!(parse_q("-3").unwrap(), q(-3));
        assert_eq!(parse_q(" 4/6 ").unwrap(), q_frac(2, 3));
        assert_eq!(fmt_q(&q_frac(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("1/0").is_err());
        assert_eq!(parse_q_vec("1/2,0").unwrap(), vec![q_frac(1, 2), q(0)]);
    }

    #[test]
    fn nullspace_of_row_sum() {
        let m = vec![vec![q(1), q(1), q(1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot_q(&m[0], v).is_zero());
        }
    }

    #[test]
    fn incremental_rank_matches_rref() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
            vec![q(1), q(3), q(4)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank_incremental(rows), 2);
    }

    #[test]
    fn nonneg_feasibility() {
        // y0 - y1 = 1 has the nonnegative solution (1, 0)
        let m = vec![vec![q(1), q(-1)]];
        assert!(nonneg_solution(&m, &[q(1)], 2).is_some());
        // y0 + y1 = -1 has none
        let m = vec![vec![q(1), q(1)]];
        assert!(nonneg_solution(&m, &[q(-1)], 2).is_none());
    }
}
