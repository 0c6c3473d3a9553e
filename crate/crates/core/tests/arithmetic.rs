use num_bigint::BigInt;
use proptest::prelude::*;
use regwt_core::arith::numtheory::divisors;
use regwt_core::arith::{
    birational_eq, cyclotomic_polynomial, poly_exact_div, substitute_ybar_inverse, BiLaurent, BiRational,
    CycloField, IntPolynomial, Rational,
};
use regwt_core::ArithError;

fn poly(coeffs: Vec<i64>) -> IntPolynomial {
    IntPolynomial::from_i64s(&coeffs)
}

fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
    proptest::collection::vec(-5i64..=5, 1..6)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(poly)
}

fn laurent(unit: u64, field: &CycloField, terms: &[((i64, i64), i64)]) -> BiLaurent {
    let mut out = BiLaurent::zero(unit, field);
    for &(e, c) in terms {
        out.add_term(e, field.integer(c));
    }
    out
}

fn small_laurent() -> impl Strategy<Value = Vec<((i64, i64), i64)>> {
    proptest::collection::vec(((-3i64..=3, -3i64..=3), -3i64..=3), 1..4)
}

#[test]
fn cyclotomic_products() {
    for n in 1..=120u64 {
        let mut prod = IntPolynomial::one();
        for d in divisors(n) {
            prod = &prod * &cyclotomic_polynomial(d);
        }
        let mut expected = vec![BigInt::from(0); n as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[n as usize] = BigInt::from(1);
        assert_eq!(prod, IntPolynomial::new(expected), "n = {n}");
    }
}

#[test]
fn exact_division_examples() {
    let num = poly(vec![-1, 0, 0, 0, 0, 0, 1]);
    let q = poly_exact_div(&num, &poly(vec![-1, 1])).unwrap();
    assert_eq!(q, poly(vec![1, 1, 1, 1, 1, 1]));
    assert!(poly_exact_div(&poly(vec![1, 0, 1]), &poly(vec![1, 1])).is_none());
}

#[test]
fn birational_examples() {
    let field = CycloField::new(1);
    let one_minus_t = laurent(1, &field, &[((0, 0), 1), ((1, 1), -1)]);
    let one_minus_t2 = laurent(1, &field, &[((0, 0), 1), ((2, 2), -1)]);
    let one_plus_t = laurent(1, &field, &[((0, 0), 1), ((1, 1), 1)]);
    let a = BiRational::new(one_minus_t2, one_minus_t).unwrap();
    let b = BiRational::from_laurent(one_plus_t);
    assert!(birational_eq(&a, &b).unwrap());
    assert!(!birational_eq(&a, &BiRational::one(1, &field)).unwrap());

    let other_unit = BiRational::one(2, &field);
    assert_eq!(birational_eq(&a, &other_unit), Err(ArithError::UnitMismatch(1, 2)));
    assert_eq!(
        BiRational::new(BiLaurent::one(1, &field), BiLaurent::zero(1, &field)).unwrap_err(),
        ArithError::ZeroDenominator
    );
}

#[test]
fn ybar_substitution() {
    let field = CycloField::new(3);
    let f = laurent(4, &field, &[((1, 2), 1), ((0, -3), 2)]);
    let g = BiRational::new(f.clone(), laurent(4, &field, &[((0, 1), 1), ((0, 0), -1)])).unwrap();
    let once = substitute_ybar_inverse(&g);
    assert_eq!(once.num().coeff((1, -2)).unwrap(), &field.integer(1));
    assert!(substitute_ybar_inverse(&once).try_eq(&g).unwrap());
    assert_eq!(field.rational(Rational::from_integer(2.into())), field.integer(2));
}

proptest! {
    #[test]
    fn exact_division_recovers_factor(p in nonzero_poly(), q in nonzero_poly()) {
        let prod = &p * &q;
        prop_assert_eq!(poly_exact_div(&prod, &q), Some(p));
    }

    #[test]
    fn birational_equality_is_an_equivalence(
        n in small_laurent(), d in small_laurent(), k in small_laurent(), l in small_laurent()
    ) {
        let field = CycloField::new(4);
        let num = laurent(2, &field, &n);
        let den = laurent(2, &field, &d);
        let k = laurent(2, &field, &k);
        let l = laurent(2, &field, &l);
        prop_assume!(!den.is_zero() && !k.is_zero() && !l.is_zero());
        let a = BiRational::new(num.clone(), den.clone()).unwrap();
        let b = BiRational::new(&num * &k, &den * &k).unwrap();
        let c = BiRational::new(&(&num * &k) * &l, &(&den * &k) * &l).unwrap();
        prop_assert!(a.try_eq(&a).unwrap());
        prop_assert_eq!(a.try_eq(&b).unwrap(), b.try_eq(&a).unwrap());
        prop_assert!(a.try_eq(&b).unwrap() && b.try_eq(&c).unwrap() && a.try_eq(&c).unwrap());
        let shifted = a.shift((1, 0));
        prop_assert_eq!(shifted.try_eq(&a).unwrap(), num.is_zero());
    }

    #[test]
    fn ybar_substitution_is_an_involution(n in small_laurent(), d in small_laurent()) {
        let field = CycloField::new(6);
        let den = laurent(3, &field, &d);
        prop_assume!(!den.is_zero());
        let f = BiRational::new(laurent(3, &field, &n), den).unwrap();
        prop_assert!(substitute_ybar_inverse(&substitute_ybar_inverse(&f)).try_eq(&f).unwrap());
    }
}
