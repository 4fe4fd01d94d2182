use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tropical::sturm::{sturm_count, sturm_squarefree_check, Interval, RatPolynomial};
use tropical::Rat;

fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn rat() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=2).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn product_of_roots(roots: &[Rat]) -> RatPolynomial {
    let mut p = RatPolynomial::constant(int(1));
    for r in roots {
        p = p.mul(&RatPolynomial::new(vec![-r.clone(), int(1)]));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn counts_match_known_roots(roots in prop::collection::vec(rat(), 1..=6), scale in rat()) {
        let mut p = product_of_roots(&roots);
        if !scale.is_zero() {
            p = p.mul(&RatPolynomial::constant(scale));
        }
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let pos = distinct.iter().filter(|r| r.is_positive()).count();
        let neg = distinct.iter().filter(|r| r.is_negative()).count();
        prop_assert_eq!(sturm_count(&p, Interval::Positive).unwrap(), pos);
        prop_assert_eq!(sturm_count(&p, Interval::Negative).unwrap(), neg);
        prop_assert_eq!(sturm_count(&p, Interval::All).unwrap(), distinct.len());
        prop_assert_eq!(
            sturm_squarefree_check(&p).unwrap(),
            distinct.len() == roots.len()
        );
    }

    #[test]
    fn rootless_even_polynomials_count_zero(a in 1i64..=5, b in 1i64..=5) {
        // a Y^2 + b has no real roots for positive a, b
        let p = RatPolynomial::new(vec![int(b), int(0), int(a)]);
        prop_assert_eq!(sturm_count(&p, Interval::All).unwrap(), 0);
        prop_assert!(sturm_squarefree_check(&p).unwrap());
    }

    #[test]
    fn division_reconstructs(a in prop::collection::vec(rat(), 1..=6), b in prop::collection::vec(rat(), 1..=4)) {
        let a = RatPolynomial::new(a);
        let b = RatPolynomial::new(b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(q.mul(&b).add_for_tests(&r), a);
        prop_assert!(r.is_zero() || r.deg().unwrap() < b.deg().unwrap());
    }

    #[test]
    fn derivative_obeys_the_product_rule(f in prop::collection::vec(rat(), 1..=4), g in prop::collection::vec(rat(), 1..=4)) {
        let f = RatPolynomial::new(f);
        let g = RatPolynomial::new(g);
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add_for_tests(&f.mul(&g.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_vanishes_exactly_at_roots(roots in prop::collection::vec(rat(), 1..=5), x in rat()) {
        let p = product_of_roots(&roots);
        prop_assert_eq!(p.eval(&x).is_zero(), roots.contains(&x));
    }
}

/// Polynomial addition, assembled from the public surface for oracle
/// checks; the library itself never needs it.
trait AddForTests {
    fn add_for_tests(&self, other: &RatPolynomial) -> RatPolynomial;
}

impl AddForTests for RatPolynomial {
    fn add_for_tests(&self, other: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs().len().max(other.coeffs().len());
        RatPolynomial::new(
            (0..n)
                .map(|k| self.coeff(k) + other.coeff(k))
                .collect(),
        )
    }
}

#[test]
fn depressed_cubic_root_distribution() {
    // Y^3 - 3 Y + 1 has three real roots: two positive, one negative
    let p = RatPolynomial::from_terms([(3, int(1)), (1, int(-3)), (0, int(1))]);
    assert_eq!(sturm_count(&p, Interval::Positive).unwrap(), 2);
    assert_eq!(sturm_count(&p, Interval::Negative).unwrap(), 1);
    assert_eq!(sturm_count(&p, Interval::All).unwrap(), 3);
    assert!(sturm_squarefree_check(&p).unwrap());
}

#[test]
fn zero_roots_are_counted_once_on_the_full_line() {
    // Y (Y - 1)
    let p = RatPolynomial::from_terms([(2, int(1)), (1, int(-1))]);
    assert_eq!(sturm_count(&p, Interval::Positive).unwrap(), 1);
    assert_eq!(sturm_count(&p, Interval::Negative).unwrap(), 0);
    assert_eq!(sturm_count(&p, Interval::All).unwrap(), 2);

    // Y^3 alone: only the zero root
    let q = RatPolynomial::from_terms([(3, int(1))]);
    assert_eq!(sturm_count(&q, Interval::All).unwrap(), 1);
    assert_eq!(sturm_count(&q, Interval::Positive).unwrap(), 0);
}

#[test]
fn repeated_roots_are_counted_once_and_flagged() {
    // (Y - 1)^2
    let p = RatPolynomial::new(vec![int(1), int(-2), int(1)]);
    assert_eq!(sturm_count(&p, Interval::Positive).unwrap(), 1);
    assert_eq!(sturm_count(&p, Interval::All).unwrap(), 1);
    assert!(!sturm_squarefree_check(&p).unwrap());
}

#[test]
fn zero_polynomial_rejections() {
    let z = RatPolynomial::zero();
    assert_eq!(sturm_count(&z, Interval::All).unwrap_err().kind(), "domain");
    assert_eq!(sturm_squarefree_check(&z).unwrap_err().kind(), "domain");
}

#[test]
fn stripping_zero_roots_and_content() {
    let p = RatPolynomial::from_terms([(3, int(2)), (2, int(4))]);
    let (core, power) = p.strip_zero_roots();
    assert_eq!(power, 2);
    assert_eq!(core, RatPolynomial::new(vec![int(4), int(2)]));
    assert_eq!(core.strip_content(), RatPolynomial::new(vec![int(2), int(1)]));

    // content stripping keeps signs
    let q = RatPolynomial::new(vec![int(-6), int(9)]);
    assert_eq!(q.strip_content(), RatPolynomial::new(vec![int(-2), int(3)]));
}

#[test]
fn interval_tags_round_trip() {
    assert_eq!(Interval::from_tag("positive").unwrap(), Interval::Positive);
    assert_eq!(Interval::from_tag("pos").unwrap(), Interval::Positive);
    assert_eq!(Interval::from_tag("neg").unwrap(), Interval::Negative);
    assert_eq!(Interval::from_tag("all").unwrap(), Interval::All);
    assert_eq!(Interval::from_tag("everywhere").unwrap_err().kind(), "domain");
}

#[test]
fn constant_polynomials_have_no_roots() {
    let p = RatPolynomial::constant(int(5));
    assert_eq!(sturm_count(&p, Interval::All).unwrap(), 0);
    assert!(sturm_squarefree_check(&p).unwrap());
}
