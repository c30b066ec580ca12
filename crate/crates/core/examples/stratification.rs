// Level-set stratification of the torus and its SVG picture.

use toric_rouquier::bondal_ruan::br_stratification;
use toric_rouquier::fan::catalog;
use toric_rouquier::svg::emit_svg;

fn main() {
    let s = br_stratification(&catalog::projective_plane().cox_data()).unwrap();
    for st in &s.strata {
        println!("class {}: {} faces, dim {}", st.class, st.faces.len(), st.dim);
    }
    println!("closure relations: {:?}", s.closure);
    let path = std::env::temp_dir().join("p2_strata.svg");
    emit_svg(&s, &path).unwrap();
    println!("wrote {}", path.display());
}
