use num_bigint::BigInt;
use proptest::prelude::*;
use tropical::mult::{
    bs_digits, divide_witness, divides_balanced, factor_from_multiplicities, gap_condition, mult,
    mult_from_unique_factorization, mult_oracle_report, mult_recursive_bs, mult_recursive_smax,
    mult_sum_check, sign_changes, BsOracle, FactorFromMult, MultPath, ORACLE_DEGREE_CAP,
};
use tropical::spoly::{
    root_candidates, s_eval, sharp_representative, unique_factorization, SPolynomial,
    UniqueFactorization,
};
use tropical::system::{SValue, Zero};
use tropical::{Rat, SPoly, SVal};

fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn unit() -> SVal {
    SValue::one()
}

fn m_unit() -> SVal {
    SValue::neg(int(0))
}

/// Small magnitudes with occasional halves, chosen to make saturation
/// sets collide often.
fn mag() -> impl Strategy<Value = Rat> {
    prop_oneof![
        6 => (-2i64..=2).prop_map(|n| Rat::from_integer(BigInt::from(n))),
        1 => Just(Rat::new(BigInt::from(1), BigInt::from(2))),
        1 => Just(Rat::new(BigInt::from(-1), BigInt::from(2))),
    ]
}

fn tangible() -> impl Strategy<Value = SVal> {
    (mag(), prop::bool::ANY).prop_map(|(m, neg)| if neg { SValue::neg(m) } else { SValue::pos(m) })
}

fn spoly_signed(max_deg: usize) -> impl Strategy<Value = SPoly> {
    prop::collection::vec(
        prop_oneof![1 => Just(None), 3 => tangible().prop_map(Some)],
        2..=max_deg + 1,
    )
    .prop_map(|v| {
        let mut p = SPolynomial::zero();
        for (k, c) in v.into_iter().enumerate() {
            if let Some(c) = c {
                p.set(k, c);
            }
        }
        if p.deg().is_none() || p.deg() == Some(0) {
            p.set(1, SValue::one());
        }
        p
    })
}

fn poly_from_digits(digits: &[u8]) -> SPoly {
    let mut p = SPolynomial::zero();
    for (k, &d) in digits.iter().enumerate() {
        match d {
            1 => p.set(k, SValue::pos(int(0))),
            2 => p.set(k, SValue::neg(int(0))),
            _ => {}
        }
    }
    p
}

fn digit_root(d: u8) -> SVal {
    match d {
        0 => Zero,
        1 => unit(),
        _ => m_unit(),
    }
}

/// All signed unit-coefficient polynomials of exactly the given degree,
/// as digit vectors indexed by degree.
fn all_bs_digit_polys(deg: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut digits = vec![0u8; deg + 1];
    loop {
        for lead in [1u8, 2u8] {
            digits[deg] = lead;
            out.push(digits.clone());
        }
        let mut i = 0;
        loop {
            if i == deg {
                return out;
            }
            if digits[i] < 2 {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn sign_change_formula_matches_the_exhaustive_recursion() {
    // every signed unit polynomial of degree up to four, every root
    let mut oracle = BsOracle::new();
    let mut checked = 0usize;
    for deg in 1..=4 {
        for digits in all_bs_digit_polys(deg) {
            let p = poly_from_digits(&digits);
            for root_digit in [0u8, 1, 2] {
                let r = digit_root(root_digit);
                let fast = mult(&p, &r).unwrap().mult;
                let slow = oracle.mult_digits(&digits, root_digit);
                assert_eq!(
                    fast, slow,
                    "digits {digits:?} root {root_digit}: {fast} vs {slow}"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 3 * 2 * (3 + 9 + 27 + 81));
}

#[test]
fn three_quartics_with_one_function_but_different_multiplicities() {
    // Y^4 - 1; Y^4 + Y^3 + Y^2 + Y - 1; Y^4 - Y^3 + Y^2 - Y - 1
    let p1 = SPolynomial::from_terms([(4, unit()), (0, m_unit())]);
    let p2 = SPolynomial::from_terms([
        (4, unit()),
        (3, unit()),
        (2, unit()),
        (1, unit()),
        (0, m_unit()),
    ]);
    let p3 = SPolynomial::from_terms([
        (4, unit()),
        (3, m_unit()),
        (2, unit()),
        (1, m_unit()),
        (0, m_unit()),
    ]);
    let expected = [(1usize, 1usize), (1, 3), (3, 1)];
    for (p, (at_one, at_minus_one)) in [&p1, &p2, &p3].into_iter().zip(expected) {
        assert_eq!(mult(p, &unit()).unwrap().mult, at_one);
        assert_eq!(mult(p, &m_unit()).unwrap().mult, at_minus_one);
        assert_eq!(mult_recursive_smax(p, &unit()).unwrap(), at_one);
        assert_eq!(mult_recursive_smax(p, &m_unit()).unwrap(), at_minus_one);
        assert_eq!(mult_recursive_bs(p, &unit()).unwrap(), at_one);
        assert_eq!(mult_recursive_bs(p, &m_unit()).unwrap(), at_minus_one);
    }
}

#[test]
fn quintic_root_has_multiplicity_one() {
    // Y^5 + 4 Y^3 + Y + 1 at the root -(-1)
    let p = SPolynomial::from_terms([
        (5, SValue::pos(int(0))),
        (3, SValue::pos(int(4))),
        (1, SValue::pos(int(0))),
        (0, SValue::pos(int(1))),
    ]);
    let report = mult(&p, &SValue::neg(int(-1))).unwrap();
    assert_eq!(report.mult, 1);
    assert_eq!(report.sat_set, vec![0, 3]);
    assert_eq!(report.path, MultPath::SignChange);
    assert_eq!(
        report.sat_poly,
        SPolynomial::from_terms([(0, SValue::pos(int(0))), (3, SValue::neg(int(0)))])
    );

    // the other candidates all have multiplicity zero
    for r in [
        SValue::pos(int(-1)),
        SValue::pos(int(2)),
        SValue::neg(int(2)),
    ] {
        assert_eq!(mult(&p, &r).unwrap().mult, 0);
        assert_eq!(mult_recursive_smax(&p, &r).unwrap(), 0);
    }
    assert_eq!(mult_recursive_smax(&p, &SValue::neg(int(-1))).unwrap(), 1);

    let oracle_report = mult_oracle_report(&p, &SValue::neg(int(-1))).unwrap();
    assert_eq!(oracle_report.mult, 1);
    assert_eq!(oracle_report.path, MultPath::RecursiveOracle);
    assert_eq!(oracle_report.sat_set, vec![0, 3]);

    let summary = mult_sum_check(&p).unwrap();
    assert_eq!(summary.total, 1);
    assert_eq!(summary.zero_mult, 0);
    assert!(!gap_condition(&p).unwrap());
    assert_eq!(
        factor_from_multiplicities(&p).unwrap(),
        FactorFromMult::CannotConclude { total: 1 }
    );
}

#[test]
fn cubic_multiplicities_agree_across_all_three_routes() {
    // Y^3 + 2 Y^2 - 2 Y + 2 = (Y + 2)(Y - 1)^2 as a function
    let p = SPolynomial::from_terms([
        (3, SValue::pos(int(0))),
        (2, SValue::pos(int(2))),
        (1, SValue::neg(int(2))),
        (0, SValue::pos(int(2))),
    ]);
    assert_eq!(mult(&p, &SValue::neg(int(2))).unwrap().mult, 1);
    assert_eq!(mult(&p, &unit()).unwrap().mult, 2);
    assert_eq!(mult(&p, &SValue::pos(int(2))).unwrap().mult, 0);
    assert_eq!(mult(&p, &m_unit()).unwrap().mult, 0);
    assert_eq!(mult_recursive_smax(&p, &SValue::neg(int(2))).unwrap(), 1);
    assert_eq!(mult_recursive_smax(&p, &unit()).unwrap(), 2);

    let summary = mult_sum_check(&p).unwrap();
    assert_eq!(summary.total, 3);
    assert!(gap_condition(&p).unwrap());

    let FactorFromMult::Factored(c) = factor_from_multiplicities(&p).unwrap() else {
        panic!("multiplicities reach the degree");
    };
    assert!(c.gap_condition);
    assert!(c.function_equal);
    assert_eq!(
        c.factorization.roots,
        vec![SValue::neg(int(2)), unit(), unit()]
    );

    assert_eq!(
        mult_from_unique_factorization(&p).unwrap(),
        vec![(SValue::neg(int(2)), 1), (unit(), 2)]
    );
}

#[test]
fn division_witness_for_the_balanced_quartic() {
    // (Y^4 - 1) / (Y - 1): quotient Y^3 + Y^2 + Y + 1, multiplier one
    let p = SPolynomial::from_terms([(4, unit()), (0, m_unit())]);
    let (lambda, q) = divide_witness(&p, &unit()).unwrap();
    assert_eq!(lambda, unit());
    assert_eq!(
        q,
        SPolynomial::from_terms([(3, unit()), (2, unit()), (1, unit()), (0, unit())])
    );
    assert!(divides_balanced(&p, &unit(), &q));
}

#[test]
fn division_witness_for_a_simple_linear_factor() {
    // (Y - c) / c for c = 3: quotient one, multiplier one
    let c = SValue::pos(int(3));
    let p = SPolynomial::from_terms([(1, unit()), (0, SValue::neg(int(3)))]);
    let (lambda, q) = divide_witness(&p, &c).unwrap();
    assert_eq!(lambda, unit());
    assert_eq!(q, SPolynomial::monomial(0, unit()));
}

#[test]
fn division_witness_for_the_zero_root_shifts() {
    let p = SPolynomial::from_terms([(3, unit()), (2, SValue::pos(int(2)))]);
    let (lambda, q) = divide_witness(&p, &Zero).unwrap();
    assert_eq!(lambda, unit());
    assert_eq!(
        q,
        SPolynomial::from_terms([(2, unit()), (1, SValue::pos(int(2)))])
    );
}

#[test]
fn division_rejections() {
    let p = SPolynomial::from_terms([(1, unit()), (0, unit())]);
    // the only signed roots of Y + 1 have magnitude 0, but neither sign balances
    assert_eq!(divide_witness(&p, &unit()).unwrap_err().kind(), "domain");
    assert_eq!(divide_witness(&p, &Zero).unwrap_err().kind(), "domain");
    assert_eq!(
        divide_witness(&p, &SValue::bal(int(0))).unwrap_err().kind(),
        "domain"
    );
    let z: SPoly = SPolynomial::zero();
    assert_eq!(divide_witness(&z, &unit()).unwrap_err().kind(), "domain");
    let balanced = SPolynomial::from_terms([(1, unit()), (0, SValue::bal(int(0)))]);
    assert_eq!(
        divide_witness(&balanced, &unit()).unwrap_err().kind(),
        "domain"
    );
}

#[test]
fn oracle_degree_cap_is_enforced() {
    let mut p: SPoly = SPolynomial::zero();
    p.set(ORACLE_DEGREE_CAP + 1, unit());
    p.set(0, m_unit());
    assert_eq!(
        mult_recursive_smax(&p, &unit()).unwrap_err().kind(),
        "capacity"
    );
    assert_eq!(
        mult_recursive_bs(&p, &unit()).unwrap_err().kind(),
        "capacity"
    );
    // the fast path has no cap
    assert!(mult(&p, &unit()).is_ok());
}

#[test]
fn sign_change_input_validation() {
    let bad_mag = SPolynomial::from_terms([(1, SValue::pos(int(1))), (0, unit())]);
    assert_eq!(sign_changes(&bad_mag).unwrap_err().kind(), "domain");
    let balanced = SPolynomial::from_terms([(1, SValue::bal(int(0))), (0, unit())]);
    assert_eq!(sign_changes(&balanced).unwrap_err().kind(), "domain");
    assert_eq!(bs_digits(&bad_mag).unwrap_err().kind(), "domain");
    let z: SPoly = SPolynomial::zero();
    assert_eq!(sign_changes(&z).unwrap(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn fast_path_matches_the_exhaustive_recursion(p in spoly_signed(5)) {
        for r in root_candidates(&p).unwrap() {
            let fast = mult(&p, &r).unwrap().mult;
            let slow = mult_recursive_smax(&p, &r).unwrap();
            prop_assert_eq!(fast, slow, "root {:?}", r);
        }
    }

    #[test]
    fn positive_multiplicity_characterizes_roots(p in spoly_signed(5)) {
        for r in root_candidates(&p).unwrap() {
            let is_root = s_eval(&p, &r).is_bal_or_zero();
            let m = mult(&p, &r).unwrap().mult;
            prop_assert_eq!(is_root, m >= 1);
            prop_assert_eq!(is_root, divide_witness(&p, &r).is_ok());
        }
    }

    #[test]
    fn division_witnesses_divide(p in spoly_signed(5)) {
        let n = p.deg().unwrap();
        for r in root_candidates(&p).unwrap() {
            let Ok((lambda, q)) = divide_witness(&p, &r) else { continue };
            prop_assert_eq!(&lambda, &SValue::one());
            prop_assert!(q.all_signed());
            prop_assert_eq!(q.deg(), Some(n - 1));
            prop_assert_eq!(q.coeff(n - 1), p.coeff(n));
            prop_assert!(divides_balanced(&p, &r, &q));
        }
    }

    #[test]
    fn division_strictly_decreases_multiplicity(p in spoly_signed(5)) {
        // the multiplicity is one plus the best over all balanced
        // quotients, so any witness quotient sits strictly below
        for r in root_candidates(&p).unwrap() {
            let Ok((_, q)) = divide_witness(&p, &r) else { continue };
            if q.is_zero() { continue; }
            let mp = mult(&p, &r).unwrap().mult;
            let mq = mult(&q, &r).unwrap().mult;
            prop_assert!(mq < mp, "root {:?}: {} then {}", r, mp, mq);
        }
    }

    #[test]
    fn bounds_and_the_gap_biconditional(p in spoly_signed(5)) {
        let summary = mult_sum_check(&p).unwrap();
        let n = p.deg().unwrap();
        prop_assert!(summary.total <= n);
        for cm in &summary.per_corner {
            prop_assert!(cm.mult_pos + cm.mult_neg <= cm.corner_mult);
        }
        prop_assert_eq!(summary.zero_mult, p.uval().unwrap());
        let gap = gap_condition(&p).unwrap();
        prop_assert_eq!(gap, summary.total == n);
        match factor_from_multiplicities(&p).unwrap() {
            FactorFromMult::Factored(c) => {
                prop_assert!(gap);
                prop_assert!(c.gap_condition);
                prop_assert!(c.function_equal);
                prop_assert_eq!(c.factorization.roots.len(), n);
                let expansion = sharp_representative(&c.factorization);
                prop_assert!(tropical::spoly::function_eq(&expansion, &p));
            }
            FactorFromMult::CannotConclude { total } => {
                prop_assert!(!gap);
                prop_assert_eq!(total, summary.total);
                prop_assert!(total < n);
            }
        }
    }

    #[test]
    fn unique_factorizations_count_multiplicities(p in spoly_signed(5)) {
        if let UniqueFactorization::Unique(f) = unique_factorization(&p).unwrap() {
            let counts = mult_from_unique_factorization(&p).unwrap();
            let total: usize = counts.iter().map(|(_, c)| c).sum();
            prop_assert_eq!(total, f.roots.len());
            for (root, count) in counts {
                prop_assert_eq!(mult(&p, &root).unwrap().mult, count, "root {:?}", root);
            }
        }
    }

    #[test]
    fn oracle_reports_carry_the_same_count(p in spoly_signed(5)) {
        for r in root_candidates(&p).unwrap() {
            let fast = mult(&p, &r).unwrap();
            let slow = mult_oracle_report(&p, &r).unwrap();
            prop_assert_eq!(fast.mult, slow.mult);
            prop_assert_eq!(fast.sat_set, slow.sat_set);
        }
    }
}
