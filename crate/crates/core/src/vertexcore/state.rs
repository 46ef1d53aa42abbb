use std::collections::BTreeMap;

use num_rational::BigRational;
use smallvec::SmallVec;

use crate::coeffring::Coeff;

/// Index of a generator in its algebra; generators are numbered in the
/// canonical (weight, name) order, so comparing ids compares generators.
pub type GenId = u16;

/// `∂^deriv gen`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    pub gen: GenId,
    pub deriv: u16,
}

impl Factor {
    pub fn new(gen: GenId, deriv: u16) -> Self {
        Factor { gen, deriv }
    }

    pub fn d(self, n: u16) -> Self {
        Factor {
            gen: self.gen,
            deriv: self.deriv + n,
        }
    }
}

/// Right-nested normally ordered product `:f1:f2:...fn:::`. The empty
/// monomial is the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub SmallVec<[Factor; 4]>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn single(f: Factor) -> Self {
        let mut v = SmallVec::new();
        v.push(f);
        Monomial(v)
    }

    pub fn from_factors(f: &[Factor]) -> Self {
        Monomial(f.iter().copied().collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Factor> {
        self.0.first().copied()
    }

    pub fn tail(&self) -> Monomial {
        Monomial(self.0[1..].iter().copied().collect())
    }

    pub fn prepend(&self, f: Factor) -> Monomial {
        let mut v: SmallVec<[Factor; 4]> = SmallVec::with_capacity(self.0.len() + 1);
        v.push(f);
        v.extend(self.0.iter().copied());
        Monomial(v)
    }
}

/// Finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct State<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for State<C> {
    fn default() -> Self {
        State::zero()
    }
}

impl<C: Coeff> State<C> {
    pub fn zero() -> Self {
        State {
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum() -> Self {
        State::term(Monomial::vacuum(), C::one())
    }

    pub fn scalar(c: C) -> Self {
        State::term(Monomial::vacuum(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut s = State::zero();
        s.add_term(m, c);
        s
    }

    pub fn factor(f: Factor) -> Self {
        State::term(Monomial::single(f), C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Coefficient of the vacuum.
    pub fn vacuum_part(&self) -> Option<&C> {
        self.terms.get(&Monomial::vacuum())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(&c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &State<C>) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &State<C>, c: &C) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d.mul_ref(c));
        }
    }

    pub fn add(&self, other: &State<C>) -> State<C> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &State<C>) -> State<C> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg_ref());
        out
    }

    pub fn neg(&self) -> State<C> {
        State {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> State<C> {
        if c.is_zero() {
            return State::zero();
        }
        let mut out = State::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d.mul_ref(c));
        }
        out
    }

    pub fn scale_ratio(&self, q: &BigRational) -> State<C> {
        self.scale(&C::from_ratio(q))
    }

    pub fn map_coeffs<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<State<D>, E> {
        let mut out = State::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The only monomial of a one-term state with coefficient one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if *c == C::one() {
                return Some(m);
            }
        }
        None
    }
}

/// Polynomial in `λ` with state coefficients; index `j` holds the `λ^j`
/// coefficient. Trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct LambdaPoly<C> {
    coeffs: Vec<State<C>>,
}

impl<C: Coeff> Default for LambdaPoly<C> {
    fn default() -> Self {
        LambdaPoly::zero()
    }
}

impl<C: Coeff> LambdaPoly<C> {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn constant(s: State<C>) -> Self {
        let mut p = LambdaPoly::zero();
        p.add_at(0, &s);
        p
    }

    pub fn monomial(j: usize, s: State<C>) -> Self {
        let mut p = LambdaPoly::zero();
        p.add_at(j, &s);
        p
    }

    pub fn from_coeffs(coeffs: Vec<State<C>>) -> Self {
        let mut p = LambdaPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|s| s.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[State<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> State<C> {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, j: usize) -> Option<&State<C>> {
        self.coeffs.get(j)
    }

    pub fn add_at(&mut self, j: usize, s: &State<C>) {
        if s.is_zero() {
            return;
        }
        if self.coeffs.len() <= j {
            self.coeffs.resize_with(j + 1, State::zero);
        }
        self.coeffs[j].add_assign(s);
        self.trim();
    }

    pub fn add_scaled_at(&mut self, j: usize, s: &State<C>, c: &C) {
        if s.is_zero() || c.is_zero() {
            return;
        }
        if self.coeffs.len() <= j {
            self.coeffs.resize_with(j + 1, State::zero);
        }
        self.coeffs[j].add_scaled(s, c);
        self.trim();
    }

    pub fn add_assign(&mut self, other: &LambdaPoly<C>) {
        for (j, s) in other.coeffs.iter().enumerate() {
            self.add_at(j, s);
        }
    }

    pub fn add_scaled(&mut self, other: &LambdaPoly<C>, c: &C) {
        for (j, s) in other.coeffs.iter().enumerate() {
            self.add_scaled_at(j, s, c);
        }
    }

    pub fn sub(&self, other: &LambdaPoly<C>) -> LambdaPoly<C> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg_ref());
        out
    }

    pub fn scale(&self, c: &C) -> LambdaPoly<C> {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|s| s.scale(c)).collect())
    }

    pub fn neg(&self) -> LambdaPoly<C> {
        self.scale(&C::one().neg_ref())
    }

    /// Multiply by `λ^n`.
    pub fn shift(&self, n: usize) -> LambdaPoly<C> {
        if self.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs: Vec<State<C>> = (0..n).map(|_| State::zero()).collect();
        coeffs.extend(self.coeffs.iter().cloned());
        LambdaPoly { coeffs }
    }

    pub fn map_coeffs<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<LambdaPoly<D>, E> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| s.map_coeffs(&mut f))
            .collect::<Result<Vec<_>, E>>()?;
        Ok(LambdaPoly::from_coeffs(coeffs))
    }

    /// Polynomial whose coefficients are all multiples of the vacuum, read as
    /// scalars.
    pub fn as_scalar_poly(&self) -> Option<Vec<C>> {
        self.coeffs
            .iter()
            .map(|s| {
                if s.is_zero() {
                    Some(C::zero())
                } else if s.len() == 1 {
                    s.vacuum_part().cloned()
                } else {
                    None
                }
            })
            .collect()
    }
}
