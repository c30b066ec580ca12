//! Exact integer lattice algebra: Smith and Hermite normal forms, integer
//! kernels, saturation and finitely generated quotient groups.

mod quotient;
mod smith;

pub use quotient::{GClass, QuotientGroup};
pub use smith::{smith_normal_form, SmithDecomposition};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(&rows, cols).expect("ragged literal matrix")
    }

    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// Rank over the rationals, read off the Smith form.
    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        smith_normal_form(self).expect("nonempty").rank()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "{}x{} [{}]", self.rows, self.cols, rows.join(", "))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInt>> =
            (0..self.rows).map(|i| self.row(i).iter().map(JsonInt).collect()).collect();
        rows.serialize(s)
    }
}

/// Serializes a big integer as a JSON number when it fits in `i64`, and as a
/// decimal string otherwise.
pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn json_ints(v: &[BigInt]) -> Vec<JsonInt<'_>> {
    v.iter().map(JsonInt).collect()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Row-style Hermite normal form of the lattice generated by `rows`: an
/// echelon basis with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Two generating sets span the same lattice iff their
/// Hermite forms are equal.
pub fn hermite_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
            else {
                break;
            };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let f = m[i][c].div_floor(&m[r][c]);
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                    if !m[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = m[r].clone();
            for i in 0..r {
                let f = m[i][c].div_floor(&pivot_row[c]);
                if !f.is_zero() {
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Whether `v` lies in the integer span of a Hermite basis (as produced by
/// [`hermite_basis`]).
pub fn in_hermite_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        let (f, rem) = w[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        if !f.is_zero() {
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    w.iter().all(Zero::is_zero)
}

/// Whether the lattice spanned by `sub` is contained in the one spanned by `sup`.
pub fn lattice_contains(sup: &[Vec<BigInt>], sub: &[Vec<BigInt>], dim: usize) -> bool {
    let h = hermite_basis(sup, dim);
    sub.iter().all(|v| in_hermite_span(&h, v))
}

/// Basis (in Hermite form) of the integer kernel `{x in Z^cols : A x = 0}`.
/// Returns an empty list iff the kernel is trivial.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if a.rows() == 0 {
        return IntMatrix::identity(n).row_vecs();
    }
    if n == 0 {
        return Vec::new();
    }
    let snf = smith_normal_form(a).expect("nonempty");
    let r = snf.rank();
    let gens: Vec<Vec<BigInt>> = (r..n).map(|j| snf.v.column(j)).collect();
    hermite_basis(&gens, n)
}

/// Basis of the saturated lattice `span_R(gens) ∩ Z^dim`, in Hermite form.
pub fn saturation(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let live: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    if live.is_empty() {
        return Vec::new();
    }
    // integer functionals vanishing on the span, then their common kernel
    let a = IntMatrix::from_rows(&live, dim).expect("uniform length");
    let perp = kernel_basis(&a);
    let p = IntMatrix::from_rows(&perp, dim).expect("uniform length");
    kernel_basis(&p)
}

/// Index of the lattice spanned by `gens` inside its saturation: the product
/// of the nonzero invariant factors.
pub fn saturation_index(gens: &[Vec<BigInt>], dim: usize) -> BigInt {
    if gens.is_empty() || dim == 0 {
        return BigInt::one();
    }
    let a = IntMatrix::from_rows(gens, dim).expect("uniform length");
    let snf = smith_normal_form(&a).expect("nonempty");
    snf.invariant_factors().iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| ints(r)).collect()
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_basis(&rows(&[&[0, 1], &[2, -1]]), 2);
        assert_eq!(a, rows(&[&[2, 0], &[0, 1]]));
        let b = hermite_basis(&rows(&[&[2, 1], &[0, 1], &[4, 0]]), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
        let k = kernel_basis(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k, rows(&[&[1, 0, -1], &[0, 1, -1]]));
        let z = IntMatrix::zeros(1, 2);
        assert_eq!(kernel_basis(&z).len(), 2);
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation(&rows(&[&[2, 0]]), 2), rows(&[&[1, 0]]));
        assert_eq!(saturation(&rows(&[&[1, 0]]), 2), rows(&[&[1, 0]]));
        assert_eq!(saturation(&rows(&[&[1, 1], &[1, -1]]), 2), rows(&[&[1, 0], &[0, 1]]));
        assert!(saturation(&[], 3).is_empty());
        assert_eq!(saturation_index(&rows(&[&[1, 1], &[1, -1]]), 2), BigInt::from(2));
    }

    #[test]
    fn span_membership() {
        let h = hermite_basis(&rows(&[&[0, 1], &[2, -1]]), 2);
        assert!(in_hermite_span(&h, &ints(&[2, 5])));
        assert!(!in_hermite_span(&h, &ints(&[1, 0])));
        assert!(lattice_contains(&rows(&[&[1, 0], &[0, 1]]), &rows(&[&[1, 0]]), 2));
    }

    #[test]
    fn bareiss_det() {
        assert_eq!(IntMatrix::from_i64(&[&[0, 2], &[1, -1]]).det(), BigInt::from(-2));
        assert_eq!(IntMatrix::from_i64(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]).det(), BigInt::from(4));
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).det(), BigInt::from(0));
    }
}
