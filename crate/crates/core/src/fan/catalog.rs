//! Small standard fans used throughout the tests and examples.

use super::Fan;

/// `A^1`: a single ray in dimension one.
pub fn affine_line() -> Fan {
    Fan::from_i64(1, &[&[1]], &[&[0]]).unwrap()
}

pub fn projective_line() -> Fan {
    Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap()
}

pub fn projective_plane() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
}

pub fn p1_times_p1() -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
    .unwrap()
}

/// Hirzebruch surface `F_a`, rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
    .unwrap()
}

/// `P^3`.
pub fn projective_space_3() -> Fan {
    Fan::from_i64(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    )
    .unwrap()
}

/// The affine chart of `P(1,1,2)` at its singular point: one cone on
/// `(1,0), (1,2)`, multiplicity 2.
pub fn weighted_112_cone() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap()
}

/// Weighted projective plane `P(1,1,2)`: rays `(1,0), (0,1), (-1,-2)`.
pub fn weighted_projective_112() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap()
}

/// `A^2 / ±1`-type singular cone on `(0,1), (2,-1)`.
pub fn singular_cone() -> Fan {
    Fan::from_i64(2, &[&[0, 1], &[2, -1]], &[&[0, 1]]).unwrap()
}

/// Stellar subdivision of [`singular_cone`] along `(1,0)`; both pieces are smooth.
pub fn singular_cone_resolution() -> Fan {
    Fan::from_i64(2, &[&[0, 1], &[1, 0], &[2, -1]], &[&[0, 1], &[1, 2]]).unwrap()
}

/// No rays at all: the torus itself.
pub fn torus(dim: usize) -> Fan {
    Fan::new(dim, Vec::new(), Vec::new()).unwrap()
}
