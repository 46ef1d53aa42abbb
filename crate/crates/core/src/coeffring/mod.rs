//! Exact coefficients: rational functions in the level `k` extended by formal
//! square roots.

mod poly;
mod radical;
mod ratfunc;
mod scalar;

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub use poly::{fmt_rational, integer_square_split, rational_to_f64, Poly};
pub use radical::{radical_of, Atom, Branch, RadicalKey};
pub use ratfunc::RationalFunction;
pub use scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation pole: {expr} vanishes")]
    EvaluationPole { expr: String },
    #[error("square root of a non-rational scalar {0} is not supported")]
    NestedRadical(String),
}

/// The coefficient interface the vertex-algebra engine is generic over.
///
/// `Scalar` gives exact symbolic results; `Complex64` runs the same rewriting
/// at a fixed numeric `k`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(q: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale_ratio(&self, q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(&BigRational::from_integer(n.into()))
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_ratio(q: &BigRational) -> Self {
        Scalar::from_rational(q.clone())
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        Scalar::add_assign(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn neg_ref(&self) -> Self {
        Scalar::neg(self)
    }
    fn scale_ratio(&self, q: &BigRational) -> Self {
        Scalar::scale(self, q)
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(q: &BigRational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_ratio(&self, q: &BigRational) -> Self {
        self * rational_to_f64(q)
    }
}

/// Parse a rational number written as `p`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}
