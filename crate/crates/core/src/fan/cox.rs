use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::Fan;
use crate::error::{Error, Result};
use crate::lattice::{hermite_basis, json_ints, saturation, saturation_index, GClass, IntMatrix, JsonInt, QuotientGroup};

/// Cox data of a fan: `beta : Z^n -> N` (columns are the rays),
/// `beta_dual : M -> Z^n` (rows are the rays read as functionals) and the
/// class group `Ghat = Z^n / im(beta_dual)`, whose normal form is `mu`.
#[derive(Clone, Debug)]
pub struct CoxData {
    pub dim: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub beta: IntMatrix,
    pub beta_dual: IntMatrix,
    pub ghat: QuotientGroup,
    /// `rank(beta_dual) == dim`, i.e. `0 -> M -> Z^n` is injective.
    pub rays_span: bool,
}

impl CoxData {
    pub fn new(fan: &Fan) -> CoxData {
        let d = fan.dim();
        let n = fan.n_rays();
        let beta_dual = IntMatrix::from_rows(fan.rays(), d).expect("rays have length dim");
        let beta = beta_dual.transpose();
        let rays_span = beta_dual.rank() == d;
        let ghat = QuotientGroup::new(beta_dual.clone());
        debug_assert_eq!(ghat.ambient_rank(), n);
        CoxData { dim: d, rays: fan.rays().to_vec(), beta, beta_dual, ghat, rays_span }
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    /// The quotient map `mu : Z^n -> Ghat`.
    pub fn mu(&self, v: &[BigInt]) -> Result<GClass> {
        self.ghat.normal_form(v)
    }

    /// `beta_dual(m)`: the vector `(<m, v_i>)_i`.
    pub fn pair_with_rays(&self, m: &[BigInt]) -> Result<Vec<BigInt>> {
        self.beta_dual.mul_vec(m)
    }
}

impl Serialize for CoxData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoxData", 5)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("n_rays", &self.n_rays())?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("beta_dual", &self.beta_dual)?;
        st.serialize_field("ghat", &self.ghat)?;
        st.serialize_field("rays_span", &self.rays_span)?;
        st.end()
    }
}

/// Lattices attached to a cone: the integer span of its rays, the
/// saturation of that span, and the index between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeLattices {
    pub cone: Vec<usize>,
    pub ray_lattice: Vec<Vec<BigInt>>,
    pub saturated_lattice: Vec<Vec<BigInt>>,
    pub multiplicity: BigInt,
}

impl Serialize for ConeLattices {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConeLattices", 4)?;
        st.serialize_field("cone", &self.cone)?;
        let rl: Vec<Vec<JsonInt>> = self.ray_lattice.iter().map(|r| json_ints(r)).collect();
        let sl: Vec<Vec<JsonInt>> = self.saturated_lattice.iter().map(|r| json_ints(r)).collect();
        st.serialize_field("ray_lattice", &rl)?;
        st.serialize_field("saturated_lattice", &sl)?;
        st.serialize_field("multiplicity", &JsonInt(&self.multiplicity))?;
        st.end()
    }
}

impl Fan {
    pub fn cox_data(&self) -> CoxData {
        CoxData::new(self)
    }

    pub fn cone_lattices(&self, cone: &[usize]) -> Result<ConeLattices> {
        if !self.is_face(cone) {
            return Err(Error::UnknownCone(cone.to_vec()));
        }
        let mut cone = cone.to_vec();
        cone.sort_unstable();
        let rays = self.cone_rays(&cone);
        Ok(ConeLattices {
            ray_lattice: hermite_basis(&rays, self.dim()),
            saturated_lattice: saturation(&rays, self.dim()),
            multiplicity: saturation_index(&rays, self.dim()),
            cone,
        })
    }
}
