use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{dot, hermite_basis, json_ints, smith_normal_form, IntMatrix, JsonInt};
use crate::error::{Error, Result};

/// An element of a presented abelian group in canonical normal form.
///
/// Torsion coordinates lie in `[0, order)`; free coordinates are the values
/// of a Hermite-reduced basis of the integer functionals killing the
/// relations. Ordering is lexicographic (torsion first, then free).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GClass {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl GClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|x| x.to_string()).collect();
        if self.torsion.is_empty() {
            write!(f, "({})", free.join(","))
        } else {
            let tors: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
            write!(f, "({}|{})", tors.join(","), free.join(","))
        }
    }
}

impl Serialize for GClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GClass", 2)?;
        st.serialize_field("torsion", &json_ints(&self.torsion))?;
        st.serialize_field("free", &json_ints(&self.free))?;
        st.end()
    }
}

/// `Z^n / (column span of R)`, presented through a Smith decomposition of `R`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    torsion_orders: Vec<BigInt>,
    torsion_rows: Vec<Vec<BigInt>>,
    free_rows: Vec<Vec<BigInt>>,
}

impl QuotientGroup {
    /// `relations` is `n x m`; its columns generate the subgroup.
    pub fn new(relations: IntMatrix) -> Self {
        let n = relations.rows();
        if relations.is_empty() || relations.is_zero() {
            return QuotientGroup {
                ambient_rank: n,
                relations,
                torsion_orders: Vec::new(),
                torsion_rows: Vec::new(),
                free_rows: IntMatrix::identity(n).row_vecs(),
            };
        }
        let snf = smith_normal_form(&relations).expect("nonempty");
        let diag = snf.diagonal();
        let r = snf.rank();
        let mut torsion_orders = Vec::new();
        let mut torsion_rows = Vec::new();
        for (i, d) in diag.iter().enumerate().take(r) {
            if !d.is_one() {
                torsion_orders.push(d.clone());
                torsion_rows.push(snf.u.row(i).to_vec());
            }
        }
        // the last n - r rows of U are a basis of the left kernel; any basis
        // of it works, so pick the canonical one
        let kernel_rows: Vec<Vec<BigInt>> = (r..n).map(|i| snf.u.row(i).to_vec()).collect();
        let free_rows = hermite_basis(&kernel_rows, n);
        QuotientGroup { ambient_rank: n, relations, torsion_orders, torsion_rows, free_rows }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors greater than one.
    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    pub fn free_rank(&self) -> usize {
        self.free_rows.len()
    }

    /// Integer functionals giving the free coordinates.
    pub fn free_rows(&self) -> &[Vec<BigInt>] {
        &self.free_rows
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion_orders.is_empty() && self.free_rows.is_empty()
    }

    pub fn zero(&self) -> GClass {
        GClass {
            torsion: vec![BigInt::zero(); self.torsion_orders.len()],
            free: vec![BigInt::zero(); self.free_rows.len()],
        }
    }

    pub fn normal_form(&self, v: &[BigInt]) -> Result<GClass> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: v.len() });
        }
        let torsion = self
            .torsion_rows
            .iter()
            .zip(&self.torsion_orders)
            .map(|(row, d)| dot(row, v).mod_floor(d))
            .collect();
        let free = self.free_rows.iter().map(|row| dot(row, v)).collect();
        Ok(GClass { torsion, free })
    }

    /// Whether `v - w` lies in the relation lattice.
    pub fn congruent(&self, v: &[BigInt], w: &[BigInt]) -> Result<bool> {
        Ok(self.normal_form(v)? == self.normal_form(w)?)
    }
}

impl Serialize for QuotientGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuotientGroup", 4)?;
        st.serialize_field("ambient_rank", &self.ambient_rank)?;
        st.serialize_field("torsion_orders", &json_ints(&self.torsion_orders))?;
        st.serialize_field("free_rank", &self.free_rank())?;
        let free: Vec<Vec<JsonInt>> = self.free_rows.iter().map(|r| json_ints(r)).collect();
        st.serialize_field("free_coordinates", &free)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ints;

    #[test]
    fn line_mod_antidiagonal_is_z() {
        let g = QuotientGroup::new(IntMatrix::from_i64(&[&[1], &[-1]]));
        assert_eq!(g.free_rank(), 1);
        assert!(g.torsion_orders().is_empty());
        assert_eq!(g.normal_form(&ints(&[0, 1])).unwrap(), GClass { torsion: vec![], free: ints(&[1]) });
        assert_eq!(g.normal_form(&ints(&[3, 4])).unwrap().free, ints(&[7]));
        assert!(g.normal_form(&ints(&[0, 0])).unwrap().is_zero());
    }

    #[test]
    fn parity() {
        let g = QuotientGroup::new(IntMatrix::from_i64(&[&[2]]));
        assert_eq!(g.torsion_orders(), &ints(&[2])[..]);
        assert_eq!(g.normal_form(&ints(&[3])).unwrap().torsion, ints(&[1]));
        assert_eq!(g.normal_form(&ints(&[-4])).unwrap().torsion, ints(&[0]));
    }

    #[test]
    fn no_relations_is_free() {
        let g = QuotientGroup::new(IntMatrix::zeros(2, 0));
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.normal_form(&ints(&[5, -1])).unwrap().free, ints(&[5, -1]));
    }

    #[test]
    fn dimension_mismatch() {
        let g = QuotientGroup::new(IntMatrix::from_i64(&[&[1], &[-1]]));
        assert!(matches!(g.normal_form(&ints(&[1])), Err(Error::DimensionMismatch { .. })));
    }
}
