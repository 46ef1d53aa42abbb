use lambda_qhr::coeffring::{Branch, CoeffError, Poly, RationalFunction, Scalar};
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

const RADICALS: [&str; 6] = ["1", "sqrt(1-2k)", "sqrt(5+8k)", "i*sqrt(1+2k)", "sqrt(1+3k)", "i"];

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn term() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, prop::collection::vec(-3i64..=3, 1..=3), 0..RADICALS.len(), any::<bool>()).prop_map(
        |(n, d, poly, r, inverse)| {
            let p = Scalar::from_poly(Poly::from_ints(&poly));
            let p = if inverse && !p.is_zero() { p.inv().unwrap() } else { p };
            Scalar::from_ratio(n, d).mul(&p).mul(&s(RADICALS[r]))
        },
    )
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(term(), 0..=3).prop_map(|ts| ts.iter().fold(Scalar::zero(), |acc, t| acc.add(t)))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn self_difference_is_empty(a in scalar()) {
        let d = a.sub(&a);
        prop_assert!(d.is_zero());
        prop_assert!(d.terms().is_empty());
    }

    #[test]
    fn evaluation_is_multiplicative(a in scalar(), b in scalar(), num in 1i64..40, den in 7i64..13) {
        let k = BigRational::new(num.into(), den.into());
        let branch = Branch::principal();
        let (Ok(x), Ok(y), Ok(xy)) = (a.eval_at_branch(&k, &branch), b.eval_at_branch(&k, &branch), a.mul(&b).eval_at_branch(&k, &branch)) else {
            return Ok(());
        };
        prop_assert!(rel(xy, x * y) <= 1e-12, "{} vs {}", xy, x * y);
    }

    #[test]
    fn text_form_round_trips(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(s(&text), a);
    }

    #[test]
    fn nonzero_scalars_invert(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }
}

#[test]
fn square_root_squared() {
    let r = s("sqrt(1-2k)");
    assert_eq!(r.mul(&r), s("1-2k"));
}

#[test]
fn roots_merge_into_product() {
    assert_eq!(s("sqrt(1+2k)").mul(&s("sqrt(1+3k)")), s("sqrt(1+5k+6k^2)"));
    assert_eq!(s("sqrt(1-2k)").mul(&s("sqrt(5+8k)")), s("sqrt(5-2k-16k^2)"));
}

#[test]
fn negative_radicand_uses_i() {
    assert_eq!(s("sqrt(-1-2k)"), s("i*sqrt(1+2k)"));
    assert_eq!(s("i").mul(&s("i")), Scalar::from_int(-1));
}

#[test]
fn factorization_of_denominator() {
    let p = Poly::from_ints(&[5, 18, 16]);
    let mut roots = p.rational_roots();
    roots.sort();
    assert_eq!(roots, vec![BigRational::new((-5).into(), 8.into()), BigRational::new((-1).into(), 2.into())]);
    assert_eq!(Poly::from_ints(&[1, 2]).mul(&Poly::from_ints(&[5, 8])), p);
    let r = RationalFunction::new(Poly::one(), p).unwrap();
    assert_eq!(r.denom().degree(), Some(2));
}

#[test]
fn evaluation_examples() {
    let third = BigRational::new(1.into(), 3.into());
    let c = Scalar::central_charge().eval_at(&third).unwrap();
    assert!(rel(c, Complex64::new(12.0, 0.0)) < 1e-15);
    assert_eq!(Scalar::zero().eval_at(&third).unwrap(), Complex64::new(0.0, 0.0));
    let r = s("sqrt(1-2k)").eval_at(&BigRational::from_integer(0.into())).unwrap();
    assert!(rel(r, Complex64::new(1.0, 0.0)) < 1e-15);
}

#[test]
fn pole_is_reported() {
    let x = s("1/(1-2k)");
    assert!(matches!(
        x.eval_at(&BigRational::new(1.into(), 2.into())),
        Err(CoeffError::EvaluationPole { .. })
    ));
}

#[test]
fn radical_content_is_extracted() {
    assert_eq!(s("sqrt(k+1/2)"), s("sqrt(2)*sqrt(1+2k)/2"));
    assert_eq!(s("sqrt(4+8k)"), s("2*sqrt(1+2k)"));
}
