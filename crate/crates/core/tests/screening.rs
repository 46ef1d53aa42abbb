use lambda_qhr::coeffring::Scalar;
use lambda_qhr::screening::{ChargedState, FreeField, ScreeningError, ScreeningOperator};
use lambda_qhr::vertexcore::{Engine, LambdaPoly, Parity, State};
use num_rational::BigRational;
use num_traits::{One, Zero};

thread_local! {
    static FF: &'static FreeField = Box::leak(Box::new(FreeField::new().unwrap()));
}

fn ff() -> &'static FreeField {
    FF.with(|f| *f)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn gens(f: &FreeField) -> Vec<(State<Scalar>, bool)> {
    let e = f.engine();
    vec![
        (e.gen("J^{(h_1)}").unwrap(), false),
        (e.gen("J^{(h_2)}").unwrap(), false),
        (e.gen("\\Phi_{-1}").unwrap(), true),
        (e.gen("\\Phi_{12}").unwrap(), true),
    ]
}

/// Generators, derivatives and composites.
fn samples(f: &FreeField) -> Vec<(State<Scalar>, bool)> {
    let e = f.engine();
    let g = gens(f);
    let mut out = g.clone();
    out.push((e.derivative(&g[0].0), false));
    out.push((e.nprod(&g[2].0, &g[1].0), true));
    out.push((e.nprod(&g[2].0, &g[3].0), false));
    out.push((e.nprod(&g[0].0, &g[1].0), false));
    out.push((e.nprod(&g[3].0, &g[0].0), true));
    out.push((e.derivative(&g[3].0), true));
    out
}

fn operators(f: &FreeField) -> Vec<ScreeningOperator> {
    let [q1, q2] = f.screening_operators().unwrap();
    vec![q1, q2, f.corrected_q2().unwrap()]
}

#[test]
fn zero_modes_are_derivations() {
    let f = ff();
    let e = f.engine();
    let mut nontrivial = 0;
    for op in operators(f) {
        let pq = op.parity == Parity::Odd;
        for (a, pa) in samples(f) {
            for (b, _) in samples(f) {
                for n in 0..=2u32 {
                    let lhs = f.zero_mode_apply(&op, &e.nth_product(&a, n as i64, &b));
                    let first = f.charged_product(&f.zero_mode_apply(&op, &a), n, &b);
                    let mut second = f.act(&a, n as i32, &f.zero_mode_apply(&op, &b));
                    if pq && pa {
                        second.poly = second.poly.neg();
                    }
                    let rhs = first.poly.add(&second.poly);
                    nontrivial += usize::from(!rhs.is_zero());
                    assert_eq!(lhs.poly, rhs, "{} on a_({n})b", op.name);
                    assert_eq!(lhs.charge, op.state.charge);
                }
            }
        }
    }
    assert!(nontrivial > 40, "{nontrivial}");
}

#[test]
fn charge_zero_matches_the_engine() {
    let f = ff();
    let e = f.engine();
    let zero = f.zero_charge();
    for (a, _) in samples(f) {
        for (b, _) in samples(f) {
            let x = ChargedState { charge: zero.clone(), poly: b.clone() };
            assert_eq!(f.charged_bracket(&a, &x).poly, e.bracket(&a, &b));
            let y = ChargedState { charge: zero.clone(), poly: a.clone() };
            assert_eq!(f.bracket_charged(&y, &x).unwrap().poly, e.bracket(&a, &b));
        }
    }
}

#[test]
fn charge_is_conserved() {
    let f = ff();
    for op in operators(f) {
        for (a, _) in samples(f) {
            let p = f.charged_bracket(&a, &op.state);
            assert_eq!(p.charge, op.state.charge);
            assert_eq!(f.zero_mode_apply(&op, &a).charge, op.state.charge);
        }
    }
}

#[test]
fn two_charged_states_are_unsupported() {
    let f = ff();
    let [q1, q2] = f.screening_operators().unwrap();
    match f.bracket_charged(&q1.state, &q2.state) {
        Err(ScreeningError::UnsupportedChargePair { .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn heisenberg_pairing_with_lattice_states() {
    let f = ff();
    let g = gens(f);
    let gamma1 = f.gamma(&f.charge("α_1/ν", [q(1, 1), q(0, 1)]));
    let gamma2 = f.gamma(&f.charge("-α_2/ν", [q(0, 1), q(-1, 1)]));
    assert!(f.charged_bracket(&g[0].0, &gamma1).poly.is_zero());
    assert_eq!(
        f.charged_bracket(&g[1].0, &gamma1).poly,
        LambdaPoly::constant(State::scalar(Scalar::from_ratio(1, 2)))
    );
    assert_eq!(
        f.charged_bracket(&g[0].0, &gamma2).poly,
        LambdaPoly::constant(State::scalar(Scalar::from_ratio(-1, 2)))
    );
    assert!(f.charged_bracket(&g[3].0, &gamma2).poly.is_zero());
    let vac = f.gamma(&f.zero_charge());
    for (a, _) in gens(f) {
        assert!(f.charged_bracket(&a, &vac).poly.is_zero());
    }
    assert_eq!(f.roots[0], [q(0, 1), q(1, 2)]);
}

#[test]
fn translation_of_the_vacuum_module() {
    let f = ff();
    let e = f.engine();
    let l = &f.quad.l;
    for op in operators(f) {
        let lq = f.act(l, 0, &op.state);
        assert_eq!(lq, f.translate(&op.state));
        let weight = f.conformal_weight(&op.state);
        let l1 = f.act(l, 1, &op.state);
        assert_eq!(l1.poly, op.state.poly.scale(&weight));
    }
    assert!(e.bracket(l, l).coeff(3).vacuum_part().is_some());
}

#[test]
fn conformal_weights() {
    let f = ff();
    let ops = operators(f);
    assert!(f.conformal_weight(&ops[0].state).is_one());
    assert_eq!(f.conformal_weight(&ops[1].state), "2k/(1+2k)".parse().unwrap());
    assert!(f.conformal_weight(&ops[2].state).is_one());
}

#[test]
fn kernels() {
    let f = ff();
    let [q1, q2] = f.screening_operators().unwrap();
    let q2c = f.corrected_q2().unwrap();
    assert!(f.zero_mode_apply(&q2, &State::vacuum()).is_zero());
    for x in [&f.quad.g, &f.quad.l, &f.quad.w, &f.quad.u] {
        assert!(f.zero_mode_apply(&q1, x).is_zero());
        assert!(f.zero_mode_apply(&q2c, x).is_zero());
    }
    assert!(!f.zero_mode_apply(&q2, &f.quad.l).is_zero());
    assert!(!f.zero_mode_apply(&q2, &f.quad.w).is_zero());
}

#[test]
fn negative_controls() {
    let f = ff();
    let g = gens(f);
    let [q1, _] = f.screening_operators().unwrap();
    let q2c = f.corrected_q2().unwrap();
    assert!(f.zero_mode_apply(&q1, &g[0].0).is_zero());
    assert!(!f.zero_mode_apply(&q1, &g[1].0).is_zero());
    assert!(!f.zero_mode_apply(&q2c, &g[0].0).is_zero());
}

#[test]
fn kernel_report_outcome() {
    let f = ff();
    let r = f.kernel_suite(None).unwrap();
    let failing: Vec<&str> = r.failures().map(|e| e.identity.as_str()).collect();
    assert_eq!(
        failing,
        vec!["Q_2(0) G = 0", "Q_2(0) L = 0", "Q_2(0) W = 0", "Q_2(0) U = 0", "Q_1(0) b_1 ≠ 0 (negative control)"],
        "{}",
        r.to_text()
    );
    assert_eq!(r.entries.len(), 15);
    let numeric = f.kernel_suite(Some(&q(1, 3))).unwrap();
    assert_eq!(numeric.entries.iter().filter(|e| e.pass).count(), 10);
    assert!(matches!(f.kernel_suite(Some(&q(1, 2))), Err(ScreeningError::Reduction(_))));
}

#[test]
fn charge_units() {
    let f = ff();
    let nu = f.nu().unwrap();
    assert_eq!(nu.mul(&nu).mul(f.level()), Scalar::one());
    let c = f.charge("α_1/ν", [BigRational::one(), BigRational::zero()]);
    assert!(!c.is_zero());
    assert!(f.zero_charge().is_zero());
    let _ = Engine::symbolic(f.quad.algebra.clone());
}
