use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;
use super::radical::{radical_of, Atom, Branch, RadicalKey};
use super::ratfunc::RationalFunction;
use super::CoeffError;

/// An element of `Q(k)` extended by formal square roots (including `i`).
///
/// Stored as a sorted list of `(radical, rational function)` pairs with
/// distinct radicals and nonzero rational parts; zero is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Scalar {
    terms: Vec<(RadicalKey, RationalFunction)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_ratfunc(RationalFunction::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_ratfunc(RationalFunction::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_ratfunc(RationalFunction::from_rational(q))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar::from_ratfunc(RationalFunction::from_poly(p))
    }

    pub fn from_ratfunc(r: RationalFunction) -> Self {
        Scalar::from_term(RadicalKey::one(), r)
    }

    fn from_term(key: RadicalKey, r: RationalFunction) -> Self {
        if r.is_zero() {
            Scalar::zero()
        } else {
            Scalar {
                terms: vec![(key, r)],
            }
        }
    }

    /// The level parameter `k`.
    pub fn k() -> Self {
        Scalar::from_poly(Poly::var())
    }

    /// The central charge `c(k) = 6 + 18k`.
    pub fn central_charge() -> Self {
        Scalar::from_poly(Poly::from_ints(&[6, 18]))
    }

    pub fn imaginary_unit() -> Self {
        Scalar::from_term(
            RadicalKey::from_atoms(vec![Atom::ImaginaryUnit]),
            RationalFunction::one(),
        )
    }

    /// Square root of a rational function under the crate's branch convention.
    pub fn sqrt_of(r: &RationalFunction) -> Self {
        let (c, key) = radical_of(r);
        Scalar::from_term(key, c)
    }

    /// Square root of a scalar; only radical-free arguments are supported.
    pub fn sqrt(&self) -> Result<Self, CoeffError> {
        match self.as_ratfunc() {
            Some(r) => Ok(Scalar::sqrt_of(&r)),
            None => Err(CoeffError::NestedRadical(self.to_string())),
        }
    }

    pub fn terms(&self) -> &[(RadicalKey, RationalFunction)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value as a rational function when no radical is involved.
    pub fn as_ratfunc(&self) -> Option<RationalFunction> {
        match self.terms.as_slice() {
            [] => Some(RationalFunction::zero()),
            [(key, r)] if key.is_one() => Some(r.clone()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_ratfunc().and_then(|r| r.as_constant())
    }

    pub fn neg(&self) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(k, r)| (k.clone(), r.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    std::cmp::Ordering::Less => out.push(a.next().unwrap()),
                    std::cmp::Ordering::Greater => out.push(b.next().unwrap().clone()),
                    std::cmp::Ordering::Equal => {
                        let (key, r) = a.next().unwrap();
                        let s = r.add(&b.next().unwrap().1);
                        if !s.is_zero() {
                            out.push((key, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (ka, ra) = &self.terms[0];
            let (kb, rb) = &other.terms[0];
            let (f, key) = ka.mul(kb);
            let r = ra.mul(rb);
            let r = if f.is_one() { r } else { r.mul(&f) };
            return Scalar::from_term(key, r);
        }
        let mut acc = Scalar::zero();
        for (ka, ra) in &self.terms {
            for (kb, rb) in &other.terms {
                let (f, key) = ka.mul(kb);
                acc.add_assign(&Scalar::from_term(key, ra.mul(rb).mul(&f)));
            }
        }
        acc
    }

    /// Multiply by a rational constant without any gcd work.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, r)| (k.clone(), r.scale(c))).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        match self.terms.as_slice() {
            [] => Err(CoeffError::DivisionByZero),
            // 1/(r sqrt(m)) = sqrt(m) / (r m)
            [(key, r)] => {
                let denom = r.mul(&key.square());
                Ok(Scalar::from_term(key.clone(), denom.inv()?))
            }
            _ => {
                // split on one atom a: s = x + y sqrt(a); 1/s = (x - y sqrt(a)) / (x^2 - a y^2)
                let atom = self
                    .terms
                    .iter()
                    .flat_map(|(k, _)| k.atoms().iter())
                    .next()
                    .cloned()
                    .ok_or(CoeffError::DivisionByZero)?;
                let mut x = Scalar::zero();
                let mut y = Scalar::zero();
                for (k, r) in &self.terms {
                    if k.contains(&atom) {
                        y.add_assign(&Scalar::from_term(k.without(&atom), r.clone()));
                    } else {
                        x.add_assign(&Scalar::from_term(k.clone(), r.clone()));
                    }
                }
                let a = Scalar::from_ratfunc(atom.square());
                let sqrt_a = Scalar::from_term(
                    RadicalKey::from_atoms(vec![atom]),
                    RationalFunction::one(),
                );
                let norm = x.mul(&x).sub(&a.mul(&y).mul(&y));
                let conj = x.sub(&y.mul(&sqrt_a));
                Ok(conj.mul(&norm.inv()?))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Self, CoeffError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Numeric value at `k = k0` with the given square-root branch.
    pub fn eval(&self, k0: Complex64, branch: &Branch) -> Result<Complex64, CoeffError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (key, r) in &self.terms {
            for (name, v) in key.radicand_values(k0) {
                if v.norm() == 0.0 {
                    return Err(CoeffError::EvaluationPole { expr: format!("sqrt({name})") });
                }
            }
            acc += r.eval_complex(k0)? * key.eval(k0, branch);
        }
        Ok(acc)
    }

    pub fn eval_at(&self, k0: &BigRational) -> Result<Complex64, CoeffError> {
        self.eval_at_branch(k0, &Branch::principal())
    }

    /// Evaluation at a rational `k`, with exact detection of poles and
    /// vanishing radicands.
    pub fn eval_at_branch(&self, k0: &BigRational, branch: &Branch) -> Result<Complex64, CoeffError> {
        let k = Complex64::new(super::poly::rational_to_f64(k0), 0.0);
        for (key, r) in &self.terms {
            if r.denom().eval_rational(k0).is_zero() {
                return Err(CoeffError::EvaluationPole {
                    expr: r.denom().to_string(),
                });
            }
            for a in key.atoms() {
                if let Atom::Poly(p) = a {
                    if p.eval_rational(k0).is_zero() {
                        return Err(CoeffError::EvaluationPole {
                            expr: format!("sqrt({p})"),
                        });
                    }
                }
            }
        }
        self.eval(k, branch)
    }

    /// Every polynomial whose vanishing makes this scalar singular: denominators
    /// and radicands.
    pub fn singular_polys(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for (key, r) in &self.terms {
            if !r.denom().is_constant() {
                out.push(r.denom().clone());
            }
            for a in key.atoms() {
                if let Atom::Poly(p) = a {
                    out.push(p.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (key, r)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let rf = r.to_string();
            if key.is_one() {
                f.write_str(&rf)?;
            } else if r.is_one() {
                write!(f, "{key}")?;
            } else if r.is_polynomial() && r.numer().term_count() == 1 {
                write!(f, "{rf}*{key}")?;
            } else {
                write!(f, "({rf})*{key}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = crate::expr::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_scalar(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<RationalFunction> for Scalar {
    fn from(r: RationalFunction) -> Self {
        Scalar::from_ratfunc(r)
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn root_times_itself() {
        let r = Scalar::sqrt_of(&RationalFunction::from_poly(Poly::from_ints(&[1, -2])));
        assert_eq!(r.mul(&r), Scalar::from_poly(Poly::from_ints(&[1, -2])));
    }

    #[test]
    fn product_of_roots_merges() {
        let a = s("sqrt(1+2k)");
        let b = s("sqrt(1+3k)");
        assert_eq!(a.mul(&b), s("sqrt(1+5k+6k^2)"));
    }

    #[test]
    fn multi_term_inverse() {
        let a = s("1 + sqrt(1-2k) + i*sqrt(5+8k)");
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn zero_inverse_is_error() {
        assert!(matches!(Scalar::zero().inv(), Err(CoeffError::DivisionByZero)));
    }

    #[test]
    fn central_charge_at_spin7_point() {
        let c = Scalar::central_charge();
        let v = c.eval_at(&BigRational::new(1.into(), 3.into())).unwrap();
        assert!((v - Complex64::new(12.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn evaluation_of_simple_values() {
        assert_eq!(Scalar::zero().eval_at(&BigRational::from_integer(5.into())).unwrap(), Complex64::new(0.0, 0.0));
        let r = s("sqrt(1-2k)");
        let v = r.eval_at(&BigRational::zero()).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(
            r.eval_at(&BigRational::new(1.into(), 2.into())),
            Err(CoeffError::EvaluationPole { .. })
        ));
    }

    #[test]
    fn branch_flip_changes_sign() {
        let r = s("sqrt(1-2k)");
        let b = Branch::principal().flip(&Poly::from_ints(&[1, -2]));
        let v = r.eval(Complex64::new(0.0, 0.0), &b).unwrap();
        assert!((v + Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
