//! Exact mode calculus on `M_β ⊗ F`: PBW monomials in creation modes of the
//! free generators applied to a highest weight vector `|β⟩`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::coeffring::Scalar;
use crate::vertexcore::{Factor, GenId, Monomial, State};

/// `(generator, n)` standing for the mode `x_(n)`.
pub(crate) type ModeOp = (GenId, i32);

/// Creation modes in canonical order: generator ascending, then mode
/// descending, which matches the vertexcore factor order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub(crate) struct FockMono(SmallVec<[ModeOp; 6]>);

pub(crate) type FockVec = BTreeMap<FockMono, Scalar>;

fn key(m: &ModeOp) -> (GenId, i32) {
    (m.0, -m.1)
}

fn add_to(v: &mut FockVec, m: FockMono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match v.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            e.get_mut().add_assign(&c);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn factorial(n: u32) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

/// Generalized binomial coefficient `C(m, j)` for any integer `m`.
fn binom(m: i64, j: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j as i64 {
        acc = acc * BigRational::from_integer((m - i).into()) / BigRational::from_integer((i + 1).into());
    }
    acc
}

/// The free generators with central brackets and a highest weight.
pub(crate) struct ModeAlgebra {
    pub odd: Vec<bool>,
    pub weight2: Vec<u32>,
    /// `central[a][b][j]`: the vacuum coefficient of `λ^j` in `[a_λ b]`.
    pub central: Vec<Vec<Vec<Scalar>>>,
}

impl ModeAlgebra {
    /// Supercommutator `[a_(m), b_(n)]`, a multiple of the identity.
    fn commutator(&self, a: GenId, m: i32, b: GenId, n: i32) -> Scalar {
        let j = m as i64 + n as i64 + 1;
        let row = &self.central[a as usize][b as usize];
        if j < 0 || j as usize >= row.len() {
            return Scalar::zero();
        }
        let j = j as u32;
        row[j as usize].scale(&(binom(m as i64, j) * factorial(j)))
    }

    pub fn depth2(&self, v: &FockVec) -> i64 {
        v.keys()
            .map(|m| m.0.iter().map(|&(g, n)| 2 * (-(n as i64) - 1) + self.weight2[g as usize] as i64).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// `x_(n) v`, where `zero_modes[x]` is the eigenvalue of `x_(0)` on `|β⟩`.
    pub fn apply_mode(&self, zero_modes: &[Scalar], x: GenId, n: i32, v: &FockVec) -> FockVec {
        let mut out = FockVec::new();
        let odd = self.odd[x as usize];
        for (mono, c) in v {
            if n <= -1 {
                let pos = mono.0.iter().position(|m| key(m) >= key(&(x, n))).unwrap_or(mono.0.len());
                if pos < mono.0.len() && mono.0[pos] == (x, n) && odd {
                    continue;
                }
                let passed = if odd { mono.0[..pos].iter().filter(|m| self.odd[m.0 as usize]).count() } else { 0 };
                let mut modes = mono.0.clone();
                modes.insert(pos, (x, n));
                let c = if passed % 2 == 1 { c.neg() } else { c.clone() };
                add_to(&mut out, FockMono(modes), c);
                continue;
            }
            let mut odd_passed = 0usize;
            for (i, &(y, m)) in mono.0.iter().enumerate() {
                let br = self.commutator(x, n, y, m);
                if !br.is_zero() {
                    let mut rest = mono.0.clone();
                    rest.remove(i);
                    let mut w = c.mul(&br);
                    if odd && odd_passed % 2 == 1 {
                        w = w.neg();
                    }
                    add_to(&mut out, FockMono(rest), w);
                }
                if self.odd[y as usize] {
                    odd_passed += 1;
                }
            }
            if n == 0 && !zero_modes[x as usize].is_zero() {
                let mut w = c.mul(&zero_modes[x as usize]);
                if odd && odd_passed % 2 == 1 {
                    w = w.neg();
                }
                add_to(&mut out, mono.clone(), w);
            }
        }
        out
    }

    /// `(∂^d x)_(n) v`.
    fn apply_factor(&self, zero_modes: &[Scalar], f: Factor, n: i32, v: &FockVec) -> FockVec {
        let d = f.deriv as i64;
        let mut coef = BigRational::one();
        for i in 0..d {
            coef *= BigRational::from_integer((-(n as i64 - i)).into());
        }
        if coef.is_zero() {
            return FockVec::new();
        }
        let mut out = self.apply_mode(zero_modes, f.gen, n - d as i32, v);
        if !coef.is_one() {
            for c in out.values_mut() {
                *c = c.scale(&coef);
            }
        }
        out
    }

    fn factors_weight2(&self, fs: &[Factor]) -> i64 {
        fs.iter().map(|f| self.weight2[f.gen as usize] as i64 + 2 * f.deriv as i64).sum()
    }

    fn factors_odd(&self, fs: &[Factor]) -> bool {
        fs.iter().filter(|f| self.odd[f.gen as usize]).count() % 2 == 1
    }

    /// `a_(n) v` for the right-nested monomial `a = :f1:f2:...::`, by the
    /// mode expansion of the normally ordered product.
    pub fn apply_monomial(&self, zero_modes: &[Scalar], fs: &[Factor], n: i32, v: &FockVec) -> FockVec {
        if v.is_empty() {
            return FockVec::new();
        }
        match fs.len() {
            0 => {
                if n == -1 {
                    v.clone()
                } else {
                    FockVec::new()
                }
            }
            1 => self.apply_factor(zero_modes, fs[0], n, v),
            _ => {
                let (f, rest) = (fs[0], &fs[1..]);
                let d = self.depth2(v);
                let w_rest = self.factors_weight2(rest);
                let w_f = self.factors_weight2(&fs[..1]);
                let mut out = FockVec::new();
                let lo = n as i64 - 1 - (d + w_rest - 2).div_euclid(2);
                for m in lo..=-1 {
                    let inner = self.apply_monomial(zero_modes, rest, n - m as i32 - 1, v);
                    for (mono, c) in self.apply_factor(zero_modes, f, m as i32, &inner) {
                        add_to(&mut out, mono, c);
                    }
                }
                let sign_neg = self.odd[f.gen as usize] && self.factors_odd(rest);
                let hi = (d + w_f - 2).div_euclid(2);
                for m in 0..=hi {
                    let inner = self.apply_factor(zero_modes, f, m as i32, v);
                    for (mono, c) in self.apply_monomial(zero_modes, rest, n - m as i32 - 1, &inner) {
                        add_to(&mut out, mono, if sign_neg { c.neg() } else { c });
                    }
                }
                out
            }
        }
    }

    pub fn apply_state(&self, zero_modes: &[Scalar], a: &State<Scalar>, n: i32, v: &FockVec) -> FockVec {
        let mut out = FockVec::new();
        for (m, c) in a.terms() {
            for (mono, x) in self.apply_monomial(zero_modes, m.factors(), n, v) {
                add_to(&mut out, mono, x.mul(c));
            }
        }
        out
    }

    /// Highest `n` with `a_(n) v` possibly nonzero.
    pub fn max_mode(&self, a: &State<Scalar>, v: &FockVec) -> i64 {
        let w = a.terms().map(|(m, _)| self.factors_weight2(m.factors())).max().unwrap_or(0);
        (self.depth2(v) + w - 2).div_euclid(2)
    }
}

/// `:∂^{d1}x1 ... ∂^{dr}xr:` ↦ `Π d_i! · x1_(-d1-1) ... xr_(-dr-1) |β⟩`.
pub(crate) fn to_fock(alg: &ModeAlgebra, s: &State<Scalar>) -> FockVec {
    let none = vec![Scalar::zero(); alg.odd.len()];
    let mut out = FockVec::new();
    for (m, c) in s.terms() {
        let mut v = FockVec::new();
        v.insert(FockMono::default(), c.clone());
        let mut scale = BigRational::one();
        for f in m.factors().iter().rev() {
            v = alg.apply_mode(&none, f.gen, -(f.deriv as i32) - 1, &v);
            scale *= factorial(f.deriv as u32);
        }
        for (mono, x) in v {
            add_to(&mut out, mono, x.scale(&scale));
        }
    }
    out
}

pub(crate) fn from_fock(v: &FockVec) -> State<Scalar> {
    let mut out = State::zero();
    for (mono, c) in v {
        let mut scale = BigRational::one();
        let factors: Vec<Factor> = mono
            .0
            .iter()
            .map(|&(g, n)| {
                let d = (-n - 1) as u16;
                scale *= factorial(d as u32);
                Factor::new(g, d)
            })
            .collect();
        out.add_term(Monomial::from_factors(&factors), c.scale(&scale.recip()));
    }
    out
}
