use lambda_qhr::coeffring::Scalar;
use lambda_qhr::reduction::{
    build_setup, check_level, formulas, parse_formula, primary_identities, quadruple, spin7_instance, sw32_identities, verify_formulas,
    verify_primary, verify_sw32, verify_sw32_at, Mode, Quadruple, ReductionError, VerificationReport,
};
use lambda_qhr::vertexcore::{skew_transform, Engine, LambdaPoly, Parity, State};
use num_complex::Complex64;
use num_rational::BigRational;
use std::sync::OnceLock;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn free() -> &'static Quadruple {
    static Q: OnceLock<Quadruple> = OnceLock::new();
    Q.get_or_init(|| quadruple(Mode::Free).unwrap())
}

fn full() -> &'static Quadruple {
    static Q: OnceLock<Quadruple> = OnceLock::new();
    Q.get_or_init(|| quadruple(Mode::Full).unwrap())
}

fn c_over(n: i64) -> State<Scalar> {
    State::scalar(Scalar::central_charge().scale(&q(1, n)))
}

#[test]
fn free_setup_has_two_bosons_and_two_fermions() {
    let s = build_setup(Mode::Free).unwrap();
    let names: Vec<&str> = s.algebra.generators().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names.len(), 4);
    for n in ["J^{(h_1)}", "J^{(h_2)}", "\\Phi_{-1}", "\\Phi_{12}"] {
        assert!(names.contains(&n), "{n} missing from {names:?}");
    }
    let odd = s.algebra.generators().iter().filter(|g| g.parity == Parity::Odd).count();
    assert_eq!(odd, 2);
}

#[test]
fn full_mode_current_bracket() {
    let s = build_setup(Mode::Full).unwrap();
    let e = Engine::symbolic(s.algebra.clone());
    let e1 = e.gen("J^{(e_1)}").unwrap();
    let f12 = e.gen("J^{(f_{12})}").unwrap();
    let f2 = e.gen("J^{(f_2)}").unwrap();
    assert_eq!(e.bracket(&e1, &f12), LambdaPoly::constant(f2.scale_ratio(&q(-1, 2))));
}

#[test]
fn printed_coefficients_are_transcribed() {
    assert!(formulas::FULL_L.contains(r"\left(\tfrac{1+2k}{8}\right):\Phi^{-1}\partial \Phi^{12}:"));
    assert!(formulas::FULL_U.contains(r"\tfrac{\left(1+6 k+8 k^2\right)}{24}\partial^{2}\Phi^{-1}"));
    let s = build_setup(Mode::Full).unwrap();
    let e = Engine::symbolic(s.algebra.clone());
    let term = parse_formula(&e, "snippet", r"\left(\tfrac{1+2k}{8}\right):\Phi^{-1}\partial \Phi^{12}:").unwrap();
    let bare = parse_formula(&e, "snippet", r":\Phi^{-1}\partial \Phi^{12}:").unwrap();
    assert_eq!(term, bare.scale(&"(1+2k)/8".parse().unwrap()));
}

#[test]
fn l_is_half_the_zero_product_of_g() {
    for quad in [free(), full()] {
        let e = Engine::symbolic(quad.algebra.clone());
        assert_eq!(e.nth_product(&quad.g, 0, &quad.g).scale_ratio(&q(1, 2)), quad.l);
    }
}

#[test]
fn sw32_closes_in_both_modes() {
    let rf = verify_sw32(free()).unwrap();
    let rl = verify_sw32(full()).unwrap();
    assert!(rf.pass(), "{}", rf.to_text());
    assert!(rl.pass(), "{}", rl.to_text());
    assert_eq!(rf.identities().len(), 8);
    assert_eq!(rf.identities(), rl.identities());
    assert!(rf.notes.iter().any(|n| n.contains("U is minus the printed formula")));
}

#[test]
fn named_brackets() {
    let quad = free();
    let e = Engine::symbolic(quad.algebra.clone());
    let gu = e.bracket(&quad.g, &quad.u);
    let mut want = LambdaPoly::constant(e.derivative(&quad.w));
    want.add_at(1, &quad.w.scale_ratio(&q(4, 1)));
    assert_eq!(gu, want);
    assert_eq!(e.bracket(&quad.g, &quad.w), LambdaPoly::constant(quad.u.clone()));
    assert_eq!(e.bracket(&quad.w, &quad.w).coeff(3), c_over(12));
    assert_eq!(e.bracket(&quad.u, &quad.u).coeff(4), c_over(12).scale(&Scalar::from_int(-1)));
    assert_eq!(e.bracket(&quad.l, &quad.l).coeff(3), c_over(12));
}

#[test]
fn primary_fields() {
    let quad = free();
    let e = Engine::symbolic(quad.algebra.clone());
    for (x, w) in [(&quad.g, q(3, 2)), (&quad.w, q(2, 1)), (&quad.u, q(5, 2))] {
        let p = e.bracket(&quad.l, x);
        assert_eq!(p.coeff(0), e.derivative(x));
        assert_eq!(p.coeff(1), x.scale_ratio(&w));
        assert!(p.coeffs().len() <= 2);
    }
    for j in 1..=3 {
        assert!(e.nth_product(&quad.g, j, &quad.w).is_zero(), "G_({j})W");
    }
}

#[test]
fn w3w_is_three_factorial_times_the_lambda_cube_coefficient() {
    let quad = free();
    let e = Engine::symbolic(quad.algebra.clone());
    let w3w = e.nth_product(&quad.w, 3, &quad.w);
    assert_eq!(w3w, c_over(2));
    assert_ne!(w3w, c_over(12));
    let r = verify_primary(quad).unwrap();
    assert!(!r.identity_pass("W_(3)W"), "{}", r.to_text());
    assert!(r.identity_pass("λ^3 coefficient of [W_λ W]"));
    let names: Vec<String> = primary_identities(quad).unwrap().into_iter().map(|i| i.name).collect();
    assert!(names.iter().any(|n| n.contains("λ^3")), "{names:?}");
}

#[test]
fn skew_symmetry_among_generators() {
    let quad = free();
    let e = Engine::symbolic(quad.algebra.clone());
    let gens = [(&quad.g, true), (&quad.l, false), (&quad.w, false), (&quad.u, true)];
    for (a, pa) in gens {
        for (b, pb) in gens {
            let sign = if pa && pb { Scalar::from_int(-1) } else { Scalar::one() };
            let skewed = skew_transform(&e.bracket(a, b), &sign, |s, k| e.derivative_n(s, k as u32));
            assert_eq!(skewed, e.bracket(b, a));
        }
    }
}

#[test]
fn spin7_point() {
    let third = q(1, 3);
    let c = Scalar::central_charge().eval_at(&third).unwrap();
    assert!((c - Complex64::new(12.0, 0.0)).norm() < 1e-14);
    let r: Scalar = "1+3k".parse().unwrap();
    assert!((r.eval_at(&third).unwrap() - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    let coeff: Scalar = "2*(6+5*(6+18k))/(sqrt(15-(6+18k))*sqrt(21+4*(6+18k)))".parse().unwrap();
    let v = coeff.eval_at(&third).unwrap();
    let want = 132.0 / (3.0f64.sqrt() * 69.0f64.sqrt());
    assert!((v.re - want).abs() / want < 1e-12 && v.im.abs() < 1e-12, "{v}");
    let report = spin7_instance(free()).unwrap();
    assert!(report.pass(), "{}", report.to_text());
}

#[test]
fn numeric_run_agrees_with_symbolic() {
    let r = verify_sw32_at(free(), &q(1, 3)).unwrap();
    assert!(r.pass(), "{}", r.to_text());
    assert_eq!(r.central_charge.as_deref(), Some("12"));
    assert!(r.to_text().lines().next().unwrap().contains("c = 12"));
    assert_eq!(r.identities().iter().filter(|n| n.contains("symbolic result")).count(), 8);
    let r2 = verify_sw32_at(full(), &q(2, 1)).unwrap();
    assert!(r2.pass(), "{}", r2.to_text());
}

#[test]
fn degenerate_levels_are_rejected() {
    for (n, d) in [(1, 2), (-1, 2), (-1, 3), (-5, 8)] {
        match check_level(&q(n, d)) {
            Err(ReductionError::DegenerateLevel { why, .. }) => assert!(why.contains("vanishes")),
            other => panic!("k = {n}/{d}: {other:?}"),
        }
        assert!(verify_sw32_at(free(), &q(n, d)).is_err());
    }
    assert!(check_level(&q(1, 3)).is_ok());
}

#[test]
fn formula_audits() {
    let full = verify_formulas(Mode::Full).unwrap();
    assert!(full.identity_pass("L = G_(0)G/2"));
    assert!(full.identity_pass("G = a J^{e_1-f_12}"));
    assert!(!full.identity_pass("printed L, before the ∂J^{(h_1)} fix, = G_(0)G/2"));
    let free = verify_formulas(Mode::Free).unwrap();
    for x in ["G", "W", "U"] {
        assert!(free.identity_pass(&format!("printed free {x} = projection of full {x}")));
    }
    assert!(!free.identity_pass("printed free L = G_(0)G/2"));
}

#[test]
fn reports_are_byte_stable() {
    let a = verify_sw32(free()).unwrap().to_json();
    let b = verify_sw32(free()).unwrap().to_json();
    assert_eq!(a, b);
    let back = VerificationReport::from_json(&a).unwrap();
    assert_eq!(back.to_json(), a);
    assert!(!a.contains("seconds"));
}

#[test]
fn identities_carry_exact_zero_residuals() {
    for (id, _) in sw32_identities(free()).unwrap() {
        assert!(id.computed.sub(&id.expected).is_zero(), "{}", id.name);
    }
}
