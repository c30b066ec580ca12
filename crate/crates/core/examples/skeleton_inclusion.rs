// Skeleton of a singular cone versus its resolution, in both modes.

use toric_rouquier::fan::catalog;
use toric_rouquier::skeleton::{skeleton_subset, Mode, ModePair, SubsetOptions};

fn main() {
    let coarse = catalog::singular_cone();
    let fine = catalog::singular_cone_resolution();
    let opts = SubsetOptions { samples: 2_000, ..SubsetOptions::default() };
    for mode in [Mode::Variety, Mode::Stack] {
        let r = skeleton_subset(&coarse, &fine, ModePair { coarse: mode, fine: mode }, opts);
        println!("{mode}: {}", serde_json::to_string(&r.verdict).unwrap());
    }
}
