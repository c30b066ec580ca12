// Fan diagnostics: smoothness, completeness, multiplicities and violations.

use toric_rouquier::fan::{catalog, Fan};

fn main() {
    let f = catalog::weighted_projective_112().validate();
    println!("P(1,1,2): valid {} smooth {} complete {}", f.is_valid, f.is_smooth, f.is_complete);
    for m in &f.multiplicities {
        println!("  cone {:?} multiplicity {}", m.cone, m.multiplicity);
    }

    let bad = Fan::from_json(r#"{"dim":2,"rays":[[1,0],[0,1],[1,1]],"max_cones":[[0,1],[0,2]]}"#).unwrap();
    let d = bad.validate();
    println!("overlapping cones: valid {}", d.is_valid);
    println!("{}", serde_json::to_string_pretty(&d.violations).unwrap());

    let err = Fan::from_json(r#"{"dim":2,"rays":[[1,0],[0]],"max_cones":[[0,1]]}"#).unwrap_err();
    println!("malformed: {err}");
}
