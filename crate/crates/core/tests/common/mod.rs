#![allow(dead_code)]

use std::collections::BTreeMap;

use lambda_qhr::coeffring::Scalar;
use lambda_qhr::vertexcore::{Engine, Factor, LambdaPoly, Parity, State};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type E = Engine<Scalar>;
pub type TwoVar = BTreeMap<(usize, usize), State<Scalar>>;




pub fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn odd(e: &E, s: &State<Scalar>) -> bool {
    e.parity(s).expect("homogeneous") == Parity::Odd
}

pub fn koszul(e: &E, a: &State<Scalar>, b: &State<Scalar>) -> Scalar {
    if odd(e, a) && odd(e, b) {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

fn add_at(p: &mut TwoVar, key: (usize, usize), s: &State<Scalar>, c: &Scalar) {
    let slot = p.entry(key).or_insert_with(State::zero);
    slot.add_scaled(s, c);
}

fn nonzero(p: TwoVar) -> TwoVar {
    p.into_iter().filter(|(_, s)| !s.is_zero()).collect()
}

/// A random homogeneous monomial state of weight at most 3.
pub fn random_state(e: &E, rng: &mut StdRng) -> State<Scalar> {
    let alg = e.algebra();
    let n = alg.len();
    loop {
        let len = rng.gen_range(1..=2);
        let mut factors = Vec::new();
        for _ in 0..len {
            factors.push(Factor::new(rng.gen_range(0..n) as u16, rng.gen_range(0..=1)));
        }
        let s = e.normal_form(&factors);
        if s.is_zero() {
            continue;
        }
        let w = e.weights2(&s);
        if e.parity(&s).is_some() && w.iter().all(|&w| w <= 6) {
            let c = Scalar::from_ratio(rng.gen_range(1..=5), rng.gen_range(1..=3));
            return s.scale(&c);
        }
    }
}

/// `[a_λ [b_μ c]]` as coefficients of `λ^i μ^j`.
fn nested(e: &E, a: &State<Scalar>, b: &State<Scalar>, c: &State<Scalar>) -> TwoVar {
    let mut out = TwoVar::new();
    for (j, cj) in e.bracket(b, c).coeffs().iter().enumerate() {
        for (i, x) in e.bracket(a, cj).coeffs().iter().enumerate() {
            add_at(&mut out, (i, j), x, &Scalar::one());
        }
    }
    out
}

/// Jacobi on `n` random triples; returns the number with a nonzero right side.
pub fn jacobi(e: &E, seed: u64, n: usize) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for t in 0..n {
        let (a, b, c) = (random_state(e, &mut rng), random_state(e, &mut rng), random_state(e, &mut rng));
        let mut lhs = nested(e, &a, &b, &c);
        let sign = koszul(e, &a, &b).neg();
        for ((i, j), x) in nested(e, &b, &a, &c) {
            add_at(&mut lhs, (j, i), &x, &sign);
        }
        let mut rhs = TwoVar::new();
        for (i, d) in e.bracket(&a, &b).coeffs().iter().enumerate() {
            for (m, x) in e.bracket(d, &c).coeffs().iter().enumerate() {
                for t in 0..=m {
                    add_at(&mut rhs, (i + t, m - t), x, &Scalar::from_int(binom(m, t)));
                }
            }
        }
        let (lhs, rhs) = (nonzero(lhs), nonzero(rhs));
        nontrivial += usize::from(!rhs.is_empty());
        if lhs != rhs {
            return Err(format!("triple {t}"));
        }
    }
    Ok(nontrivial)
}

pub fn skew(e: &E, seed: u64, n: usize) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for t in 0..n {
        let (a, b) = (random_state(e, &mut rng), random_state(e, &mut rng));
        let ab = e.bracket(&a, &b);
        let mut expected = LambdaPoly::zero();
        let sign = koszul(e, &a, &b).neg();
        for (j, cj) in ab.coeffs().iter().enumerate() {
            for t in 0..=j {
                let mut c = Scalar::from_int(binom(j, t)).mul(&sign);
                if j % 2 == 1 {
                    c = c.neg();
                }
                expected.add_scaled_at(t, &e.derivative_n(cj, (j - t) as u32), &c);
            }
        }
        nontrivial += usize::from(!ab.is_zero());
        if e.bracket(&b, &a) != expected {
            return Err(format!("pair {t}"));
        }
    }
    Ok(nontrivial)
}

/// `[a_λ :bc:]` against the noncommutative Wick formula on generator triples.
pub fn wick(e: &E, seed: u64, n: usize) -> Result<usize, String> {
    let k = e.algebra().len() as u16;
    let gens: Vec<State<Scalar>> = (0..k).map(|g| State::factor(Factor::new(g, 0))).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut nontrivial = 0;
    for t in 0..n {
        let pick = |rng: &mut StdRng| gens[rng.gen_range(0..gens.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let lhs = e.bracket(&a, &e.nprod(&b, &c));
        let mut rhs = LambdaPoly::zero();
        for (j, x) in e.bracket(&a, &b).coeffs().iter().enumerate() {
            rhs.add_at(j, &e.nprod(x, &c));
        }
        let sign = koszul(e, &a, &b);
        for (j, x) in e.bracket(&a, &c).coeffs().iter().enumerate() {
            rhs.add_scaled_at(j, &e.nprod(&b, x), &sign);
        }
        for (i, d) in e.bracket(&a, &b).coeffs().iter().enumerate() {
            for (m, x) in e.bracket(d, &c).coeffs().iter().enumerate() {
                rhs.add_scaled_at(i + m + 1, x, &Scalar::from_ratio(1, m as i64 + 1));
            }
        }
        nontrivial += usize::from(!lhs.is_zero());
        if lhs != rhs {
            return Err(format!("triple {t}"));
        }
    }
    Ok(nontrivial)
}

pub fn idempotence(e: &E, seed: u64, n: usize) -> Result<usize, String> {
    let k = e.algebra().len();
    let mut rng = StdRng::seed_from_u64(seed);
    for t in 0..n {
        let len = rng.gen_range(1..=4);
        let factors: Vec<Factor> = (0..len).map(|_| Factor::new(rng.gen_range(0..k) as u16, rng.gen_range(0..=2))).collect();
        let s = e.normal_form(&factors);
        if e.normalize(&s) != s {
            return Err(format!("word {t}"));
        }
        for (m, _) in s.terms() {
            if e.normal_form(m.factors()) != State::term(m.clone(), Scalar::one()) {
                return Err(format!("monomial of word {t}"));
            }
        }
    }
    Ok(n)
}
