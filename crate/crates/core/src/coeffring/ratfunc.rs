use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{fmt_rational, Poly};
use super::CoeffError;

/// Reduced quotient of polynomials in `k`; the denominator is monic and coprime
/// to the numerator, so equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RationalFunction {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        RationalFunction::from_poly(Poly::constant(q))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::from_poly(Poly::from_int(n))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if den.is_constant() {
            let c = den.leading().recip();
            return RationalFunction {
                num: num.scale(&c),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if it does not depend on `k`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return Self::reduce(num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            // coprime denominators: a common factor can only come from the sum
            return Self::reduce(num, self.den.mul(&other.den));
        }
        let a = self.den.div_exact(&g);
        let b = other.den.div_exact(&g);
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        Self::reduce(num, a.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel before multiplying so the product stays reduced
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1) };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1) };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2) };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&RationalFunction::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Self, CoeffError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFunction::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational, CoeffError> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(CoeffError::EvaluationPole {
                expr: self.den.to_string(),
            });
        }
        Ok(self.num.eval_rational(x) / d)
    }

    pub fn eval_complex(&self, x: num_complex::Complex64) -> Result<num_complex::Complex64, CoeffError> {
        let d = self.den.eval_complex(x);
        if d.norm() == 0.0 {
            return Err(CoeffError::EvaluationPole {
                expr: self.den.to_string(),
            });
        }
        Ok(self.num.eval_complex(x) / d)
    }

    /// Canonical text with integer coefficients, e.g. `(1+4*k)/(1+2*k)`,
    /// `2/(1-2*k)` or `3/2`.
    pub fn fmt_with(&self, var: &str) -> String {
        if let Some(c) = self.as_constant() {
            return fmt_rational(&c);
        }
        if self.den.is_one() {
            return self.num.fmt_with(var);
        }
        // num/den = (num/c)/P with P primitive; then clear denominators of num/c
        let (c, prim) = self.den.content_and_primitive();
        let num = self.num.scale(&c.recip());
        let mut l = num_bigint::BigInt::from(1);
        for q in num.coeffs() {
            l = num_integer::Integer::lcm(&l, q.denom());
        }
        let l = BigRational::from_integer(l);
        let num = num.scale(&l);
        let den = prim.scale(&l);
        let num_text = num.fmt_with(var);
        let num_text = if num.term_count() > 1 {
            format!("({num_text})")
        } else {
            num_text
        };
        let den_text = den.fmt_with(var);
        if den.term_count() > 1 || den_text.contains('*') || den_text.contains('^') {
            format!("{num_text}/({den_text})")
        } else {
            format!("{num_text}/{den_text}")
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("k"))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn reduced_form_is_unique() {
        // (1+2k)(1-2k) / (2(1+2k)) == (1-2k)/2
        let a = RationalFunction::new(p(&[1, 2]).mul(&p(&[1, -2])), p(&[2, 4])).unwrap();
        let b = RationalFunction::new(p(&[1, -2]), p(&[2])).unwrap();
        assert_eq!(a, b);
        assert!(a.denom().is_one());
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = RationalFunction::new(p(&[1]), p(&[1, -2])).unwrap();
        assert!(a.sub(&a).is_zero());
        let b = RationalFunction::new(p(&[-1]), p(&[-1, 2])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(
            RationalFunction::zero().inv(),
            Err(CoeffError::DivisionByZero)
        ));
    }

    #[test]
    fn pole_is_reported() {
        let a = RationalFunction::new(p(&[1]), p(&[1, -2])).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert!(matches!(
            a.eval_rational(&half),
            Err(CoeffError::EvaluationPole { .. })
        ));
    }
}
