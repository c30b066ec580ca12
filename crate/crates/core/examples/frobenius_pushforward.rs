// Line-bundle classes in the toric Frobenius pushforward of `O`.

use toric_rouquier::bondal_ruan::frobenius_level_set;
use toric_rouquier::fan::catalog;

fn main() {
    let cox = catalog::p1_times_p1().cox_data();
    for level in 1..=4 {
        let classes: Vec<String> = frobenius_level_set(&cox, level).iter().map(|c| c.to_string()).collect();
        println!("level {level}: {}", classes.join(" "));
    }
}
