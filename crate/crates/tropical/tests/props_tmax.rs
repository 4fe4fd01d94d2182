use num_bigint::BigInt;
use proptest::prelude::*;
use tropical::tmax::{t_add, t_div, t_mul, t_pow, t_scale, Bot, Fin};
use tropical::{GVal, Rat};

fn rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=8).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn gval() -> impl Strategy<Value = GVal> {
    prop_oneof![1 => Just(Bot), 6 => rat().prop_map(Fin)]
}

proptest! {
    #[test]
    fn add_is_max(a in gval(), b in gval()) {
        prop_assert_eq!(t_add(&a, &b), a.clone().max(b));
    }

    #[test]
    fn add_commutes(a in gval(), b in gval()) {
        prop_assert_eq!(t_add(&a, &b), t_add(&b, &a));
    }

    #[test]
    fn add_associates(a in gval(), b in gval(), c in gval()) {
        prop_assert_eq!(t_add(&t_add(&a, &b), &c), t_add(&a, &t_add(&b, &c)));
    }

    #[test]
    fn add_idempotent(a in gval()) {
        prop_assert_eq!(t_add(&a, &a), a);
    }

    #[test]
    fn bot_is_additive_identity(a in gval()) {
        prop_assert_eq!(t_add(&a, &Bot), a);
    }

    #[test]
    fn mul_commutes(a in gval(), b in gval()) {
        prop_assert_eq!(t_mul(&a, &b), t_mul(&b, &a));
    }

    #[test]
    fn mul_associates(a in gval(), b in gval(), c in gval()) {
        prop_assert_eq!(t_mul(&t_mul(&a, &b), &c), t_mul(&a, &t_mul(&b, &c)));
    }

    #[test]
    fn unit_is_multiplicative_identity(a in gval()) {
        prop_assert_eq!(t_mul(&a, &GVal::one()), a);
    }

    #[test]
    fn bot_annihilates(a in gval()) {
        prop_assert_eq!(t_mul(&a, &Bot), Bot);
    }

    #[test]
    fn mul_distributes(a in gval(), b in gval(), c in gval()) {
        prop_assert_eq!(
            t_mul(&a, &t_add(&b, &c)),
            t_add(&t_mul(&a, &b), &t_mul(&a, &c))
        );
    }

    #[test]
    fn pow_is_iterated_mul(a in gval(), k in 0usize..6) {
        let mut acc = GVal::one();
        for _ in 0..k {
            acc = t_mul(&acc, &a);
        }
        prop_assert_eq!(t_pow(&a, k), acc);
    }

    #[test]
    fn div_inverts_mul(a in gval(), b in rat().prop_map(Fin)) {
        let q = t_div(&a, &b).unwrap();
        prop_assert_eq!(t_mul(&q, &b), a);
    }

    #[test]
    fn scale_matches_repeated_pow(a in rat(), n in 0usize..5) {
        let n_rat = Rat::new(BigInt::from(n as i64), BigInt::from(1));
        prop_assert_eq!(t_scale(&Fin(a.clone()), &n_rat), t_pow(&Fin(a), n));
    }

    #[test]
    fn natural_order_is_total_order(a in gval(), b in gval()) {
        // b dominates in the sum exactly when b is the larger element
        let absorbed = t_add(&a, &b) == b;
        prop_assert_eq!(absorbed, a <= b);
    }

    #[test]
    fn mul_is_order_monotone(a in gval(), b in gval(), c in gval()) {
        if a <= b {
            prop_assert!(t_mul(&a, &c) <= t_mul(&b, &c));
        }
    }
}

#[test]
fn empty_product_convention() {
    assert_eq!(t_pow::<Rat>(&Bot, 0), GVal::one());
    assert_eq!(t_pow::<Rat>(&Bot, 1), Bot);
    assert_eq!(t_pow::<Rat>(&Bot, 3), Bot);
}

#[test]
fn division_by_bot_is_an_error() {
    let a: GVal = Fin(Rat::from_integer(BigInt::from(2)));
    let err = t_div(&a, &Bot).unwrap_err();
    assert_eq!(err.kind(), "domain");
}

#[test]
fn bot_divided_by_finite_is_bot() {
    let b: GVal = Fin(Rat::from_integer(BigInt::from(2)));
    assert_eq!(t_div(&Bot, &b).unwrap(), Bot);
}

#[test]
fn bot_sorts_below_every_finite_value() {
    let small: GVal = Fin(Rat::from_integer(BigInt::from(-1000)));
    assert!(Bot < small);
}
