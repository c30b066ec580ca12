// Cox data of a few toric varieties: `beta`, `beta^T` and the group `Ghat`.

use toric_rouquier::fan::catalog;
use toric_rouquier::lattice::ints;

fn main() {
    for (name, fan) in [
        ("P^1", catalog::projective_line()),
        ("P^2", catalog::projective_plane()),
        ("P^1 x P^1", catalog::p1_times_p1()),
        ("P(1,1,2)", catalog::weighted_projective_112()),
        ("A^1", catalog::affine_line()),
    ] {
        let cox = fan.cox_data();
        println!(
            "{name}: free rank {}, torsion {:?}, rays span: {}",
            cox.ghat.free_rank(),
            cox.ghat.torsion_orders(),
            cox.rays_span
        );
    }
    let p2 = catalog::projective_plane().cox_data();
    println!("mu(1,1,1) on P^2 = {}", p2.mu(&ints(&[1, 1, 1])).unwrap());
}
