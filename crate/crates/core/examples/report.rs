// Full report for `P^2`.

use toric_rouquier::fan::catalog;
use toric_rouquier::report::{run_report, ReportOptions};

fn main() {
    let r = run_report(&catalog::projective_plane(), &ReportOptions::default()).unwrap();
    println!("{}", serde_json::to_string_pretty(&r.rouquier).unwrap());
    println!("im Phi has {} classes, {} strata", r.image_phi.count, r.strata_count.unwrap());
}
