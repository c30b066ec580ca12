// Smith normal form, integer kernels and saturations.

use toric_rouquier::lattice::{ints, kernel_basis, saturation, saturation_index, smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = smith_normal_form(&a).unwrap();
    println!("invariant factors: {:?}", snf.invariant_factors());
    assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.d);

    let beta_dual_p2 = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]);
    println!("kernel of beta^T for P^2: {:?}", kernel_basis(&beta_dual_p2.transpose()));

    let rays = vec![ints(&[1, 0]), ints(&[1, 2])];
    println!("saturation of <(1,0),(1,2)>: {:?}", saturation(&rays, 2));
    println!("index: {}", saturation_index(&rays, 2));
}
