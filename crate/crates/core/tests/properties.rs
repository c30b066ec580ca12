use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use toric_rouquier::bondal_ruan::{frobenius_level_set, phi_eval, TorusPoint};
use toric_rouquier::fan::{catalog, Fan};
use toric_rouquier::lattice::{hermite_basis, kernel_basis, saturation, IntMatrix};
use toric_rouquier::linalg::Q;
use toric_rouquier::skeleton::{skeleton_member, CotangentPoint, Mode};

fn fans2() -> Vec<Fan> {
    vec![
        catalog::projective_plane(),
        catalog::p1_times_p1(),
        catalog::hirzebruch(1),
        catalog::hirzebruch(3),
        catalog::weighted_projective_112(),
        catalog::singular_cone(),
        catalog::weighted_112_cone(),
        catalog::singular_cone_resolution(),
    ]
}

fn rational() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-7i64..=7, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            IntMatrix::from_rows(&rows, c).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kernel_is_annihilated_with_full_rank(a in matrix()) {
        let k = kernel_basis(&a);
        for v in &k {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let rank_k = if k.is_empty() { 0 } else { IntMatrix::from_rows(&k, a.cols()).unwrap().rank() };
        prop_assert_eq!(rank_k, a.cols() - a.rank());
    }

    #[test]
    fn saturation_is_idempotent(a in matrix()) {
        let s = saturation(&a.row_vecs(), a.cols());
        prop_assert_eq!(hermite_basis(&saturation(&s, a.cols()), a.cols()), hermite_basis(&s, a.cols()));
    }

    #[test]
    fn normal_form_respects_relations(i in 0usize..8, v in proptest::collection::vec(-5i64..=5, 4), z in proptest::collection::vec(-5i64..=5, 2)) {
        let fan = &fans2()[i];
        let cox = fan.cox_data();
        let n = cox.n_rays();
        let v: Vec<BigInt> = v[..n.min(4)].iter().map(|&x| BigInt::from(x)).chain(std::iter::repeat(BigInt::zero())).take(n).collect();
        let z: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        let shift = cox.beta_dual.mul_vec(&z).unwrap();
        let w: Vec<BigInt> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
        prop_assert_eq!(cox.ghat.normal_form(&v).unwrap(), cox.ghat.normal_form(&w).unwrap());
    }

    #[test]
    fn phi_is_periodic(i in 0usize..8, x in proptest::collection::vec(rational(), 2), m in proptest::collection::vec(-9i64..=9, 2)) {
        let cox = fans2()[i].cox_data();
        let p = TorusPoint(x);
        let m: Vec<BigInt> = m.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(phi_eval(&cox, &p).unwrap(), phi_eval(&cox, &p.translated(&m)).unwrap());
    }

    #[test]
    fn level_sets_grow_under_divisibility(i in 0usize..8, l in 1u64..=4, k in 2u64..=3) {
        let cox = fans2()[i].cox_data();
        prop_assert!(frobenius_level_set(&cox, l).is_subset(&frobenius_level_set(&cox, k * l)));
    }

    #[test]
    fn zero_section_and_mode_monotonicity(i in 0usize..8, x in proptest::collection::vec(rational(), 2), xi in proptest::collection::vec(-3i64..=3, 2)) {
        let fan = &fans2()[i];
        let zero = CotangentPoint::new(x.clone(), vec![Q::zero(), Q::zero()]);
        prop_assert!(skeleton_member(fan, Mode::Stack, &zero).unwrap());
        let p = CotangentPoint::new(x, xi.into_iter().map(|t| Q::from_integer(t.into())).collect());
        let stack = skeleton_member(fan, Mode::Stack, &p).unwrap();
        let variety = skeleton_member(fan, Mode::Variety, &p).unwrap();
        // the saturated lattice contains the ray lattice, so variety congruences are the stronger ones
        prop_assert!(!variety || stack);
        if fan.validate().is_smooth {
            prop_assert_eq!(stack, variety);
        }
    }
}
