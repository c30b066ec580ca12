// Points of the cotangent bundle tested against the skeleton.

use toric_rouquier::fan::catalog;
use toric_rouquier::linalg::parse_q_vec;
use toric_rouquier::skeleton::{skeleton_member, skeleton_strata, CotangentPoint, Mode};

fn main() {
    let p2 = catalog::projective_plane();
    println!("{} strata", skeleton_strata(&p2, Mode::Variety).len());
    for (x, xi) in [("1/2,0", "-1,0"), ("0,1/3", "-1,0"), ("1/5,2/7", "0,0"), ("0,0", "1,1")] {
        let p = CotangentPoint::new(parse_q_vec(x).unwrap(), parse_q_vec(xi).unwrap());
        println!("x = ({x}), xi = ({xi}): {}", skeleton_member(&p2, Mode::Variety, &p).unwrap());
    }
}
