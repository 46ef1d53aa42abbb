mod common;

use std::sync::Arc;

use common::{idempotence, jacobi, random_state, skew, wick};
use lambda_qhr::coeffring::Scalar;
use lambda_qhr::reduction::{build_setup, quadruple, Mode};
use lambda_qhr::vertexcore::{AlgebraConfig, Engine, Factor, LambdaPoly, Monomial, Parity, State, Unlisted, VertexAlgebra, VertexError};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn full() -> Arc<VertexAlgebra> {
    build_setup(Mode::Full).unwrap().algebra
}

fn free() -> Arc<VertexAlgebra> {
    build_setup(Mode::Free).unwrap().algebra
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn jacobi_identity_on_random_triples() {
    let n = jacobi(&Engine::symbolic(full()), 7, 300).unwrap();
    assert!(n >= 50, "only {n} triples with a nonzero bracket");
}

#[test]
fn skew_symmetry_on_corpus() {
    for alg in [full(), free()] {
        assert!(skew(&Engine::symbolic(alg), 11, 80).unwrap() > 20);
    }
}

#[test]
fn wick_formula_consistency() {
    let n = wick(&Engine::symbolic(full()), 3, 60).unwrap();
    assert!(n >= 20, "only {n} nonzero cases");
}

#[test]
fn normal_form_is_idempotent() {
    idempotence(&Engine::symbolic(full()), 5, 300).unwrap();
}


#[test]
fn sesquilinearity() {
    let e = Engine::symbolic(full());
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..30 {
        let (a, b) = (random_state(&e, &mut rng), random_state(&e, &mut rng));
        let ab = e.bracket(&a, &b);
        assert_eq!(e.bracket(&e.derivative(&a), &b), ab.shift(1).neg());
        let mut right = ab.shift(1);
        right.add_assign(&e.derivative_poly(&ab));
        assert_eq!(e.bracket(&a, &e.derivative(&b)), right);
    }
}

#[test]
fn fermion_products() {
    let e = Engine::symbolic(free());
    let phi1 = e.gen("\\Phi_{-1}").unwrap();
    let phi12 = e.gen("\\Phi_{12}").unwrap();
    assert_eq!(e.nprod(&State::vacuum(), &phi1), phi1);
    assert!(e.nprod(&phi1, &phi1).is_zero());
    assert_eq!(e.nprod(&phi12, &phi1), e.nprod(&phi1, &phi12).neg());
    assert_eq!(e.bracket(&phi1, &phi12), LambdaPoly::constant(State::scalar(Scalar::from_ratio(1, 2))));
    assert_eq!(e.bracket(&phi12, &phi12), LambdaPoly::constant(State::scalar(Scalar::from_ratio(-1, 4))));
    assert_eq!(e.nth_product(&phi1, -1, &State::vacuum()), phi1);
}

#[test]
fn cartan_currents() {
    let e = Engine::symbolic(free());
    let h1 = e.gen("J^{(h_1)}").unwrap();
    let h2 = e.gen("J^{(h_2)}").unwrap();
    assert!(e.bracket(&h1, &h1).is_zero());
    let level: Scalar = "k+1/2".parse().unwrap();
    let expected = LambdaPoly::monomial(1, State::scalar(level.scale(&q(1, 2))));
    assert_eq!(e.bracket(&h1, &h2), expected);
}

#[test]
fn derivatives() {
    let e = Engine::symbolic(free());
    let phi1 = e.gen("\\Phi_{-1}").unwrap();
    let phi12 = e.gen("\\Phi_{12}").unwrap();
    assert!(e.derivative(&State::vacuum()).is_zero());
    let id = e.algebra().id("\\Phi_{-1}").unwrap();
    assert_eq!(e.derivative(&phi1), State::factor(Factor::new(id, 1)));
    let lhs = e.derivative(&e.nprod(&phi1, &phi12));
    let rhs = e.nprod(&e.derivative(&phi1), &phi12).add(&e.nprod(&phi1, &e.derivative(&phi12)));
    assert_eq!(lhs, rhs);
}

#[test]
fn supercurrent_brackets() {
    let quad = quadruple(Mode::Free).unwrap();
    let e = Engine::symbolic(quad.algebra.clone());
    let gg = e.bracket(&quad.g, &quad.g);
    assert_eq!(gg.coeff(0), quad.l.scale_ratio(&q(2, 1)));
    assert!(gg.coeff(1).is_zero());
    let c3 = Scalar::central_charge().scale(&q(1, 3));
    assert_eq!(gg.coeff(2), State::scalar(c3));
    assert_eq!(e.nth_product(&quad.g, 0, &quad.g).scale_ratio(&q(1, 2)), quad.l);
}

#[test]
fn full_and_free_l_differ_as_states() {
    let full = quadruple(Mode::Full).unwrap();
    let setup = build_setup(Mode::Free).unwrap();
    let projected = lambda_qhr::reduction::project(&full.algebra, &setup.algebra, &full.l);
    assert!(!projected.is_zero());
    let relabelled = lambda_qhr::reduction::project(&full.algebra, &full.algebra, &full.l);
    assert_eq!(relabelled, full.l);
    assert!(full.l.len() > projected.len());
}

#[test]
fn unlisted_pair_is_an_error() {
    let mut cfg = AlgebraConfig::default();
    cfg.unlisted = Unlisted::Error;
    cfg.generator("a", Parity::Even, "1").generator("b", Parity::Even, "1").bracket("a", "a", "\\lambda");
    match cfg.build() {
        Err(VertexError::UnknownBracket { left, right }) => {
            assert!(left == "b" || right == "b", "{left} {right}");
        }
        other => panic!("expected UnknownBracket, got {other:?}"),
    }
}

#[test]
fn inconsistent_table_is_rejected() {
    let mut cfg = AlgebraConfig::default();
    cfg.generator("a", Parity::Even, "1")
        .generator("b", Parity::Even, "1")
        .bracket("a", "b", "a")
        .bracket("b", "a", "a");
    assert!(matches!(cfg.build(), Err(VertexError::InconsistentTable(_))));
}

#[test]
fn monomials_are_canonical() {
    let e = Engine::symbolic(free());
    let alg = e.algebra();
    let (p1, h1) = (alg.id("\\Phi_{-1}").unwrap(), alg.id("J^{(h_1)}").unwrap());
    let m = Monomial::from_factors(&[Factor::new(p1, 0), Factor::new(h1, 0)]);
    let reversed = e.normal_form(&[Factor::new(h1, 0), Factor::new(p1, 0)]);
    assert_eq!(reversed, State::term(m, Scalar::one()));
}
