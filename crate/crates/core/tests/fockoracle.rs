use std::sync::OnceLock;

use lambda_qhr::fockoracle::{compare, crosscheck, OracleError, TruncatedFockSpace, DEFAULT_CUTOFF, ORACLE_TOLERANCE};
use lambda_qhr::reduction::{quadruple, Mode, Quadruple};
use lambda_qhr::vertexcore::{Engine, State};
use num_complex::Complex64;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn free() -> &'static Quadruple {
    static Q: OnceLock<Quadruple> = OnceLock::new();
    Q.get_or_init(|| quadruple(Mode::Free).unwrap())
}

/// Coefficients of `Π_{n≥1} (1-q^n)^{-2} (1+q^{n-1/2})^2` in powers of
/// `q^{1/2}` up to `q^{top2/2}`.
fn ns_character(top2: usize) -> Vec<u64> {
    let mut c = vec![0u64; top2 + 1];
    c[0] = 1;
    for n in 1..=top2 / 2 {
        for _ in 0..2 {
            for i in 2 * n..=top2 {
                c[i] += c[i - 2 * n];
            }
        }
    }
    for r2 in (1..=top2).step_by(2) {
        for _ in 0..2 {
            for i in (r2..=top2).rev() {
                c[i] += c[i - r2];
            }
        }
    }
    c
}

fn unit_at(v: &[Complex64]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i].norm() > 1e-12).collect();
    (nz.len() == 1 && (v[nz[0]].norm() - 1.0).abs() < 1e-12).then_some(nz[0])
}

#[test]
fn dimensions_follow_the_character() {
    let s = TruncatedFockSpace::new(&q(1, 1), 2 * DEFAULT_CUTOFF).unwrap();
    let want: Vec<usize> = ns_character(8).into_iter().map(|x| x as usize).collect();
    assert_eq!(s.dims_by_degree(), want);
    assert_eq!(s.dim(), 182);
    assert_eq!(want, vec![1, 2, 3, 6, 11, 18, 28, 44, 69]);
}

#[test]
fn simple_states() {
    let quad = free();
    let names = quad.algebra.names();
    let e = Engine::symbolic(quad.algebra.clone());
    let s = TruncatedFockSpace::new(&q(1, 1), 6).unwrap();
    let vac = s.realize_state(names, &State::vacuum()).unwrap();
    assert_eq!(vac, s.vacuum());
    assert!(unit_at(&vac).is_some());
    let phi1 = e.gen("\\Phi_{-1}").unwrap();
    let phi12 = e.gen("\\Phi_{12}").unwrap();
    let v1 = s.realize_state(names, &phi1).unwrap();
    let i = unit_at(&v1).expect("one mode");
    assert!(s.fmt_basis(i).contains("(-1)"));
    let pair = s.realize_state(names, &e.nprod(&phi1, &phi12)).unwrap();
    assert!(unit_at(&pair).is_some());
    let swapped = s.realize_state(names, &e.nprod(&phi12, &phi1)).unwrap();
    let (err, _) = compare(&swapped, &pair.iter().map(|z| -z).collect::<Vec<_>>());
    assert!(err < 1e-12);
    for a in [&phi1, &quad.g, &quad.w] {
        let x = s.numeric_nth_product(names, a, -1, &State::vacuum()).unwrap();
        let (err, scale) = compare(&x, &s.realize_state(names, a).unwrap());
        assert!(err <= 1e-12 * scale);
    }
}

#[test]
fn boson_and_fermion_pairings() {
    let quad = free();
    let names = quad.algebra.names();
    let e = Engine::symbolic(quad.algebra.clone());
    let s = TruncatedFockSpace::new(&q(1, 1), 4).unwrap();
    let j2 = e.gen("J^{(h_2)}").unwrap();
    let v = s.numeric_nth_product(names, &j2, 1, &j2).unwrap();
    let want: Vec<Complex64> = s.vacuum().iter().map(|z| z * -0.75).collect();
    assert!(compare(&v, &want).0 < 1e-12, "J2_(1)J2 = -(k+1/2)/2 at k = 1");
    let j1 = e.gen("J^{(h_1)}").unwrap();
    let v = s.numeric_nth_product(names, &j1, 1, &j1).unwrap();
    assert!(v.iter().all(|z| z.norm() < 1e-12));
    let phi1 = e.gen("\\Phi_{-1}").unwrap();
    let phi12 = e.gen("\\Phi_{12}").unwrap();
    let v = s.numeric_nth_product(names, &phi1, 0, &phi12).unwrap();
    assert!(compare(&v, &s.vacuum().iter().map(|z| z * 0.5).collect::<Vec<_>>()).0 < 1e-12);
    let v = s.numeric_nth_product(names, &phi12, 0, &phi12).unwrap();
    assert!(compare(&v, &s.vacuum().iter().map(|z| z * -0.25).collect::<Vec<_>>()).0 < 1e-12);
}

#[test]
fn generator_products_at_cutoff_three() {
    let quad = free();
    let names = quad.algebra.names();
    let s = TruncatedFockSpace::new(&q(1, 1), 6).unwrap();
    let gg = s.numeric_nth_product(names, &quad.g, 0, &quad.g).unwrap();
    let l = s.realize_state(names, &quad.l).unwrap();
    let half: Vec<Complex64> = gg.iter().map(|z| z * 0.5).collect();
    let (err, scale) = compare(&half, &l);
    assert!(err <= ORACLE_TOLERANCE * scale);
    assert!(l.iter().any(|z| z.norm() > 0.1));
    let s3 = TruncatedFockSpace::new(&q(1, 3), 6).unwrap();
    let ww = s3.numeric_nth_product(names, &quad.w, 3, &quad.w).unwrap();
    let want: Vec<Complex64> = s3.vacuum().iter().map(|z| z * 6.0).collect();
    assert!(compare(&ww, &want).0 < 1e-9, "W_(3)W = c/2 at c = 12");
}

#[test]
fn cutoff_too_small() {
    let quad = free();
    let s = TruncatedFockSpace::new(&q(1, 1), 2).unwrap();
    assert!(matches!(
        s.realize_state(quad.algebra.names(), &quad.u),
        Err(OracleError::CutoffTooSmall { .. })
    ));
}

#[test]
fn crosscheck_small_cutoff() {
    for k in [q(1, 3), q(2, 1)] {
        let c = crosscheck(&k, 6).unwrap();
        assert!(c.pass(), "{:?}", c.failures);
        assert!(c.cases > 10_000);
        assert_eq!(c.commutators, 144);
        assert!(c.max_relative_error <= ORACLE_TOLERANCE);
    }
}

#[test]
fn tiny_cutoffs_skip_modes_above_the_cutoff() {
    for cutoff2 in 1..=5 {
        let c = crosscheck(&q(1, 1), cutoff2).unwrap();
        assert!(c.pass(), "cutoff2 = {cutoff2}: {:?}", c.failures);
        assert!(c.commutators < 144);
    }
}
