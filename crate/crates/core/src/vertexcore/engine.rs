use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;

use super::algebra::{linear_derivative, VertexAlgebra};
use super::state::{Factor, LambdaPoly, Monomial, State};
use super::{binomial, skew_transform, Parity, VertexError};
use crate::coeffring::{Branch, Coeff, CoeffError, Scalar};

type Converter<C> = Box<dyn Fn(&Scalar) -> Result<C, CoeffError>>;

/// λ-bracket calculus over a [`VertexAlgebra`].
///
/// Results are memoized per engine, so an engine is not shared between
/// threads; build one per thread over a shared `Arc<VertexAlgebra>`.
pub struct Engine<C: Coeff> {
    alg: Arc<VertexAlgebra>,
    table: Vec<LambdaPoly<C>>,
    odd: Vec<bool>,
    convert: Converter<C>,
    insert_memo: RefCell<HashMap<(Factor, Monomial), Rc<State<C>>>>,
    nprod_memo: RefCell<HashMap<(Monomial, Monomial), Rc<State<C>>>>,
    bracket_memo: RefCell<HashMap<(Monomial, Monomial), Rc<LambdaPoly<C>>>>,
    deriv_memo: RefCell<HashMap<Monomial, Rc<State<C>>>>,
}

impl Engine<Scalar> {
    /// Exact engine with coefficients in the radical-extended field.
    pub fn symbolic(alg: Arc<VertexAlgebra>) -> Self {
        Engine::with_converter(alg, Box::new(|s: &Scalar| Ok(s.clone()))).expect("identity conversion cannot fail")
    }
}

impl Engine<Complex64> {
    /// Numeric engine at a fixed value of `k`.
    pub fn numeric(alg: Arc<VertexAlgebra>, k: &BigRational, branch: Branch) -> Result<Self, VertexError> {
        let k = k.clone();
        Engine::with_converter(
            alg,
            Box::new(move |s: &Scalar| s.eval_at_branch(&k, &branch)),
        )
    }
}

impl<C: Coeff> Engine<C> {
    pub fn with_converter(alg: Arc<VertexAlgebra>, convert: Converter<C>) -> Result<Self, VertexError> {
        let n = alg.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let p = alg.base_bracket(a as u16, b as u16);
                table.push(p.map_coeffs(|s| convert(s))?);
            }
        }
        let odd = alg.generators().iter().map(|g| g.parity == Parity::Odd).collect();
        Ok(Engine {
            alg,
            table,
            odd,
            convert,
            insert_memo: RefCell::default(),
            nprod_memo: RefCell::default(),
            bracket_memo: RefCell::default(),
            deriv_memo: RefCell::default(),
        })
    }

    pub fn algebra(&self) -> &Arc<VertexAlgebra> {
        &self.alg
    }

    pub fn clear_cache(&self) {
        self.insert_memo.borrow_mut().clear();
        self.nprod_memo.borrow_mut().clear();
        self.bracket_memo.borrow_mut().clear();
        self.deriv_memo.borrow_mut().clear();
    }

    /// Convert an exact coefficient into this engine's coefficient type.
    pub fn coeff(&self, s: &Scalar) -> Result<C, CoeffError> {
        (self.convert)(s)
    }

    pub fn convert_state(&self, s: &State<Scalar>) -> Result<State<C>, CoeffError> {
        s.map_coeffs(|c| self.coeff(c))
    }

    pub fn convert_poly(&self, p: &LambdaPoly<Scalar>) -> Result<LambdaPoly<C>, CoeffError> {
        p.map_coeffs(|c| self.coeff(c))
    }

    /// A generator (or alias) by name.
    pub fn gen(&self, name: &str) -> Result<State<C>, VertexError> {
        Ok(self.convert_state(&self.alg.state(name)?)?)
    }

    fn is_odd(&self, f: Factor) -> bool {
        self.odd[f.gen as usize]
    }

    fn mono_odd(&self, m: &Monomial) -> bool {
        m.factors().iter().filter(|f| self.is_odd(**f)).count() % 2 == 1
    }

    /// Parity of a state, `None` if it mixes parities.
    pub fn parity(&self, s: &State<C>) -> Option<Parity> {
        let mut seen: Option<bool> = None;
        for (m, _) in s.terms() {
            let o = self.mono_odd(m);
            match seen {
                Some(p) if p != o => return None,
                _ => seen = Some(o),
            }
        }
        Some(if seen == Some(true) { Parity::Odd } else { Parity::Even })
    }

    /// Twice the conformal weight of each monomial, deduplicated.
    pub fn weights2(&self, s: &State<C>) -> Vec<u32> {
        let mut w: Vec<u32> = s.terms().map(|(m, _)| self.alg.names().monomial_weight2(m)).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    fn sign(&self, odd_a: bool, odd_b: bool) -> C {
        if odd_a && odd_b {
            C::one().neg_ref()
        } else {
            C::one()
        }
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// `[∂^p a_λ ∂^q b] = (-λ)^p (λ+∂)^q [a_λ b]`.
    fn bracket_factor(&self, a: Factor, b: Factor) -> LambdaPoly<C> {
        let n = self.odd.len();
        let base = &self.table[a.gen as usize * n + b.gen as usize];
        if base.is_zero() {
            return LambdaPoly::zero();
        }
        let mut p = base.clone();
        if b.deriv > 0 {
            let q = b.deriv as u64;
            let mut out = LambdaPoly::zero();
            for (j, s) in p.coeffs().iter().enumerate() {
                for r in 0..=q {
                    let d = linear_derivative(s, r as u16);
                    out.add_scaled_at(j + (q - r) as usize, &d, &C::from_ratio(&binomial(q, r)));
                }
            }
            p = out;
        }
        if a.deriv > 0 {
            p = p.shift(a.deriv as usize);
            if a.deriv % 2 == 1 {
                p = p.neg();
            }
        }
        p
    }

    /// `:f m:` in canonical form.
    fn insert(&self, f: Factor, m: &Monomial) -> Rc<State<C>> {
        match m.first() {
            None => return Rc::new(State::factor(f)),
            Some(g) if f < g || (f == g && !self.is_odd(f)) => {
                return Rc::new(State::term(m.prepend(f), C::one()));
            }
            _ => {}
        }
        let key = (f, m.clone());
        if let Some(hit) = self.insert_memo.borrow().get(&key) {
            return hit.clone();
        }
        let g = m.first().unwrap();
        let rest = m.tail();
        let mut out = State::zero();
        if f == g {
            // :a:aX:: = 1/2 :(∫_{-∂}^0 [a_λ a] dλ) X: for odd a
            let corr = self.integral_minus_d(&self.bracket_factor(f, f), &rest);
            out.add_scaled(&corr, &C::from_ratio(&Self::ratio(1, 2)));
        } else {
            let sign = self.sign(self.is_odd(f), self.is_odd(g));
            let inner = self.insert(f, &rest);
            for (mono, c) in inner.terms() {
                out.add_scaled(&self.insert(g, mono), &c.mul_ref(&sign));
            }
            out.add_assign(&self.integral_minus_d(&self.bracket_factor(f, g), &rest));
        }
        let out = Rc::new(out);
        self.insert_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `:(∫_{-∂}^0 p dλ) rest:` for a linear λ-polynomial `p`.
    fn integral_minus_d(&self, p: &LambdaPoly<C>, rest: &Monomial) -> State<C> {
        let mut out = State::zero();
        for (j, s) in p.coeffs().iter().enumerate() {
            let sgn = if j % 2 == 0 { 1 } else { -1 };
            let q = Self::ratio(sgn, j as i64 + 1);
            for (m, c) in s.terms() {
                if let Some(f) = m.first() {
                    out.add_scaled(&self.insert(f.d(j as u16 + 1), rest), &c.scale_ratio(&q));
                }
            }
        }
        out
    }

    fn nprod_mono(&self, a: &Monomial, b: &Monomial) -> Rc<State<C>> {
        if a.is_vacuum() {
            return Rc::new(State::term(b.clone(), C::one()));
        }
        if b.is_vacuum() {
            return Rc::new(State::term(a.clone(), C::one()));
        }
        if a.len() == 1 {
            return self.insert(a.first().unwrap(), b);
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.nprod_memo.borrow().get(&key) {
            return hit.clone();
        }
        // ::xA':B: = :x:A'B:: + Σ_j :(∂^{j+1}x/(j+1)) [A'_λB]_j: + ± Σ_j :(∂^{j+1}A'/(j+1)) [x_λB]_j:
        let x = a.first().unwrap();
        let ap = a.tail();
        let mut out = State::zero();
        for (m, c) in self.nprod_mono(&ap, b).terms() {
            out.add_scaled(&self.insert(x, m), c);
        }
        let y = self.bracket_mono(&ap, b);
        for (j, s) in y.coeffs().iter().enumerate() {
            let q = Self::ratio(1, j as i64 + 1);
            for (m, c) in s.terms() {
                out.add_scaled(&self.insert(x.d(j as u16 + 1), m), &c.scale_ratio(&q));
            }
        }
        let z = self.bracket_mono(&Monomial::single(x), b);
        if !z.is_zero() {
            let sign = self.sign(self.is_odd(x), self.mono_odd(&ap));
            let mut dap = State::term(ap.clone(), C::one());
            for (j, s) in z.coeffs().iter().enumerate() {
                dap = self.derivative(&dap);
                if s.is_zero() {
                    continue;
                }
                let q = Self::ratio(1, j as i64 + 1);
                for (dm, dc) in dap.terms() {
                    let w = dc.mul_ref(&sign).scale_ratio(&q);
                    for (zm, zc) in s.terms() {
                        out.add_scaled(&self.nprod_mono(dm, zm), &w.mul_ref(zc));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.nprod_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn bracket_mono(&self, a: &Monomial, b: &Monomial) -> Rc<LambdaPoly<C>> {
        if a.is_vacuum() || b.is_vacuum() {
            return Rc::new(LambdaPoly::zero());
        }
        if a.len() == 1 && b.len() == 1 {
            return Rc::new(self.bracket_factor(a.first().unwrap(), b.first().unwrap()));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.bracket_memo.borrow().get(&key) {
            return hit.clone();
        }
        let out = if a.len() == 1 {
            self.right_wick(a.first().unwrap(), b)
        } else {
            self.left_wick(a, b)
        };
        let out = Rc::new(out);
        self.bracket_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `[a_λ :yB':] = :[a_λ y]B': + ±:y[a_λ B']: + ∫_0^λ [[a_λ y]_μ B'] dμ`.
    fn right_wick(&self, a: Factor, b: &Monomial) -> LambdaPoly<C> {
        let y = b.first().unwrap();
        let bp = b.tail();
        let mut out = LambdaPoly::zero();
        let p = self.bracket_factor(a, y);
        for (j, s) in p.coeffs().iter().enumerate() {
            for (m, c) in s.terms() {
                out.add_scaled_at(j, &self.nprod_mono(m, &bp), c);
                if m.is_vacuum() {
                    continue;
                }
                let r = self.bracket_mono(m, &bp);
                for (l, t) in r.coeffs().iter().enumerate() {
                    out.add_scaled_at(j + l + 1, t, &c.scale_ratio(&Self::ratio(1, l as i64 + 1)));
                }
            }
        }
        let sign = self.sign(self.is_odd(a), self.is_odd(y));
        let q = self.bracket_mono(&Monomial::single(a), &bp);
        for (j, s) in q.coeffs().iter().enumerate() {
            let mut acc = State::zero();
            for (m, c) in s.terms() {
                acc.add_scaled(&self.insert(y, m), c);
            }
            out.add_scaled_at(j, &acc, &sign);
        }
        out
    }

    /// `[:ab:_λ c] = :(e^{∂ d_λ}a)[b_λ c]: + ±:(e^{∂ d_λ}b)[a_λ c]: + ±∫_0^λ [b_μ[a_{λ-μ}c]] dμ`
    /// with `a` the first factor and `b` the rest.
    fn left_wick(&self, am: &Monomial, c: &Monomial) -> LambdaPoly<C> {
        let a = am.first().unwrap();
        let b = am.tail();
        let mut out = LambdaPoly::zero();
        let y = self.bracket_mono(&b, c);
        for (j, s) in y.coeffs().iter().enumerate() {
            for n in 0..=j {
                let mut acc = State::zero();
                for (m, k) in s.terms() {
                    acc.add_scaled(&self.insert(a.d(n as u16), m), k);
                }
                out.add_scaled_at(j - n, &acc, &C::from_ratio(&binomial(j as u64, n as u64)));
            }
        }
        let z = self.bracket_mono(&Monomial::single(a), c);
        if z.is_zero() {
            return out;
        }
        let sign = self.sign(self.is_odd(a), self.mono_odd(&b));
        let mut db = State::term(b.clone(), C::one());
        let mut derivs = vec![db.clone()];
        for _ in 1..z.coeffs().len() {
            db = self.derivative(&db);
            derivs.push(db.clone());
        }
        for (j, s) in z.coeffs().iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (n, dn) in derivs.iter().enumerate().take(j + 1) {
                let mut acc = State::zero();
                for (dm, dc) in dn.terms() {
                    for (zm, zc) in s.terms() {
                        acc.add_scaled(&self.nprod_mono(dm, zm), &dc.mul_ref(zc));
                    }
                }
                let w = sign.scale_ratio(&binomial(j as u64, n as u64));
                out.add_scaled_at(j - n, &acc, &w);
            }
            // ∫_0^λ (λ-μ)^j μ^l dμ = j! l! / (j+l+1)! λ^{j+l+1}
            for (zm, zc) in s.terms() {
                let w = self.bracket_mono(&b, zm);
                for (l, t) in w.coeffs().iter().enumerate() {
                    let beta = beta_coeff(j as u64, l as u64);
                    out.add_scaled_at(j + l + 1, t, &zc.mul_ref(&sign).scale_ratio(&beta));
                }
            }
        }
        out
    }

    fn derivative_mono(&self, m: &Monomial) -> Rc<State<C>> {
        if let Some(hit) = self.deriv_memo.borrow().get(m) {
            return hit.clone();
        }
        let f = m.factors();
        let mut out = State::zero();
        for i in 0..f.len() {
            let suffix = Monomial::from_factors(&f[i + 1..]);
            let mut s = (*self.insert(f[i].d(1), &suffix)).clone();
            for k in (0..i).rev() {
                let mut next = State::zero();
                for (mono, c) in s.terms() {
                    next.add_scaled(&self.insert(f[k], mono), c);
                }
                s = next;
            }
            out.add_assign(&s);
        }
        let out = Rc::new(out);
        self.deriv_memo.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    /// Canonical form of `:f1:f2:...fn:::` for factors in any order.
    pub fn normal_form(&self, factors: &[Factor]) -> State<C> {
        let mut s = State::vacuum();
        for f in factors.iter().rev() {
            let mut next = State::zero();
            for (m, c) in s.terms() {
                next.add_scaled(&self.insert(*f, m), c);
            }
            s = next;
        }
        s
    }

    /// Re-normalize every monomial of a state, treating its factors as an
    /// arbitrary right-nested product.
    pub fn normalize(&self, s: &State<C>) -> State<C> {
        let mut out = State::zero();
        for (m, c) in s.terms() {
            out.add_scaled(&self.normal_form(m.factors()), c);
        }
        out
    }

    /// Normally ordered product `:ab:`.
    pub fn nprod(&self, a: &State<C>, b: &State<C>) -> State<C> {
        let mut out = State::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_scaled(&self.nprod_mono(ma, mb), &ca.mul_ref(cb));
            }
        }
        out
    }

    /// Right-nested product `:a1:a2:...an:::` of states.
    pub fn nprod_all(&self, items: &[State<C>]) -> State<C> {
        let mut it = items.iter().rev();
        let Some(last) = it.next() else {
            return State::vacuum();
        };
        let mut acc = last.clone();
        for s in it {
            acc = self.nprod(s, &acc);
        }
        acc
    }

    /// `[a_λ b]`.
    pub fn bracket(&self, a: &State<C>, b: &State<C>) -> LambdaPoly<C> {
        let mut out = LambdaPoly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_scaled(&self.bracket_mono(ma, mb), &ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn derivative(&self, a: &State<C>) -> State<C> {
        let mut out = State::zero();
        for (m, c) in a.terms() {
            if !m.is_vacuum() {
                out.add_scaled(&self.derivative_mono(m), c);
            }
        }
        out
    }

    pub fn derivative_n(&self, a: &State<C>, n: u32) -> State<C> {
        let mut s = a.clone();
        for _ in 0..n {
            s = self.derivative(&s);
        }
        s
    }

    /// `a_(n) b`: `n!` times the `λ^n` coefficient of `[a_λ b]` for `n ≥ 0`,
    /// and `:(∂^{(-n-1)} a) b:` for `n < 0`.
    pub fn nth_product(&self, a: &State<C>, n: i64, b: &State<C>) -> State<C> {
        if n >= 0 {
            let p = self.bracket(a, b);
            p.coeff(n as usize).scale_ratio(&factorial(n as u64))
        } else {
            let m = (-n - 1) as u64;
            let da = self.derivative_n(a, m as u32);
            self.nprod(&da, b).scale_ratio(&factorial(m).recip())
        }
    }

    /// `∂` applied to every coefficient of a λ-polynomial.
    pub fn derivative_poly(&self, p: &LambdaPoly<C>) -> LambdaPoly<C> {
        LambdaPoly::from_coeffs(p.coeffs().iter().map(|s| self.derivative(s)).collect())
    }

    /// `[b_λ a]` from `[a_λ b]` by skew-symmetry, given the parities of `a`
    /// and `b`.
    pub fn skew(&self, p: &LambdaPoly<C>, pa: Parity, pb: Parity) -> LambdaPoly<C> {
        let sign = self.sign(pa == Parity::Odd, pb == Parity::Odd);
        skew_transform(p, &sign, |s, k| self.derivative_n(s, k as u32))
    }

    pub fn cache_sizes(&self) -> (usize, usize, usize, usize) {
        (
            self.insert_memo.borrow().len(),
            self.nprod_memo.borrow().len(),
            self.bracket_memo.borrow().len(),
            self.deriv_memo.borrow().len(),
        )
    }
}

pub(crate) fn factorial(n: u64) -> BigRational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 2..=n {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

fn beta_coeff(j: u64, l: u64) -> BigRational {
    factorial(j) * factorial(l) / factorial(j + l + 1)
}
