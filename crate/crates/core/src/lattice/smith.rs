use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// diagonal entries positive and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// row[dst] += f * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * f;
        m[(dst, j)] += v;
    }
}

/// col[dst] += f * col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * f;
        m[(i, dst)] += v;
    }
}

/// Smith normal form by repeated Euclidean pivoting. The pivot at each
/// stage is the first entry of least absolute value in row-major order of
/// the trailing block, which makes `u` and `v` deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithDecomposition> {
    if a.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(SmithDecomposition { u, d, v });
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let f = -d[(i, t)].div_floor(&d[(t, t)]);
                    add_row(&mut d, i, t, &f);
                    add_row(&mut u, i, t, &f);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let f = -d[(t, j)].div_floor(&d[(t, t)]);
                    add_col(&mut d, j, t, &f);
                    add_col(&mut v, j, t, &f);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pull an offending row into row t and go again
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    Ok(SmithDecomposition { u, d, v })
}
