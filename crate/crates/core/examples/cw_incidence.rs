// Face posets of CW tori: interval homology, incidence algebras and their
// quadratic duals, Loewy lengths.

use toric_rouquier::incidence::{
    generation_time_bounds, incidence_algebra, interval_homology, koszul_hilbert_check, loewy_profile,
    quadratic_dual, CwPoset,
};

fn main() {
    let t2 = CwPoset::torus(2);
    println!("T^2: {} cells, valid {}", t2.len(), t2.validate().is_valid());
    let h = interval_homology(&t2, "v0*v0", "e0*e0").unwrap();
    println!("interval [v0*v0, e0*e0]: reduced Betti {:?}", h.reduced_betti);

    let a = incidence_algebra(&t2).unwrap();
    let dual = quadratic_dual(&a);
    let pa = loewy_profile(&a, 4).unwrap();
    let pd = loewy_profile(&dual, 4).unwrap();
    println!("A: dims {:?}, LL {}", pa.totals, pa.loewy_length);
    println!("A^!: dims {:?}, LL {}", pd.totals, pd.loewy_length);
    println!("Hilbert identity holds: {}", koszul_hilbert_check(&a, &pa, &pd).holds);

    for n in 0..=3 {
        let b = generation_time_bounds(&CwPoset::torus(n)).unwrap();
        println!("T^{n}: t(G_A) = {}, t(G_A^!) = {}", b.t_ga, b.t_ga_dual);
    }
}
