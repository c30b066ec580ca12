// Loewy length of `H^*(T^n)`, an exterior algebra.

use toric_rouquier::incidence::torus_cohomology_loewy;

fn main() {
    for n in 0..=6 {
        let t = torus_cohomology_loewy(n);
        println!("n = {n}: dims {:?}, LL {}, bound {}", t.graded_dims, t.loewy_length, t.lower_bound);
    }
}
