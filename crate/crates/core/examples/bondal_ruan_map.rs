// The Bondal–Ruan map and its image, exact and by Frobenius grid.

use toric_rouquier::bondal_ruan::{image_phi, phi_eval, ImageMethod, TorusPoint};
use toric_rouquier::fan::catalog;

fn main() {
    let cox = catalog::projective_plane().cox_data();
    for p in ["0,0", "1/2,1/2", "2/3,2/3", "-1/3,5/3"] {
        let x = TorusPoint::parse(p).unwrap();
        println!("Phi({x}) = {}", phi_eval(&cox, &x).unwrap());
    }
    let exact = image_phi(&cox, ImageMethod::Chambers).unwrap();
    let grid = image_phi(&cox, ImageMethod::Grid { lmax: None }).unwrap();
    println!("chambers: {} classes, grid: {} classes", exact.count, grid.count);
    assert_eq!(exact.classes, grid.classes);
    println!("{}", serde_json::to_string_pretty(&grid.provenance).unwrap());
}
