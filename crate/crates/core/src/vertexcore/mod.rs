//! λ-bracket calculus for vertex superalgebras presented by generators and a
//! table of linear base brackets.
//!
//! Monomials are right-nested normally ordered products `:a1:a2:...an:::`
//! with factors sorted by (weight, name, derivative count). Rewriting uses
//!
//! * quasi-commutativity `:a:bX:: = ±:b:aX:: + :(∫_{-∂}^0 [a_λ b] dλ) X:`,
//! * quasi-associativity for nested products on the left,
//! * the right and left non-commutative Wick formulas for brackets.
//!
//! In `∫_{-∂}^0 λ^j dλ = (-1)^j ∂^{j+1}/(j+1)` the derivative acts on the
//! coefficient of `λ^j`. Two worked cases:
//!
//! * `[a_λ a] = -1/4` for an odd `a`: the coefficient is the vacuum, `∂` kills
//!   it, so `:aa: = 1/2 ∫_{-∂}^0 [a_λ a] dλ = 0`.
//! * `[x_λ y] = z + λκ` for currents: `:xy: - :yx: = ∂z - κ ∂^2|0>/2 = ∂z`.
//!
//! In `∫_0^λ [[a_λ b]_μ c] dμ` the integration is in `μ` with `λ` held fixed.

mod algebra;
mod engine;
mod notation;
mod state;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use algebra::{AlgebraConfig, AliasConfig, BracketConfig, Generator, GeneratorConfig, NameTable, Unlisted, VertexAlgebra};
pub use engine::Engine;
pub use notation::{fmt_lambda_poly, fmt_monomial, fmt_state, StateContext};
pub use state::{Factor, GenId, LambdaPoly, Monomial, State};

use crate::coeffring::{Coeff, CoeffError};
use crate::expr::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn sum(self, other: Parity) -> Parity {
        if self.is_odd() != other.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VertexError {
    #[error("no bracket listed for [{left}_λ {right}]")]
    UnknownBracket { left: String, right: String },
    #[error("inconsistent bracket table: {0}")]
    InconsistentTable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

pub(crate) fn binomial(n: u64, r: u64) -> BigRational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    BigRational::from_integer(acc)
}

/// `[b_λ a] = -sign * Σ_j (-λ-∂)^j P_j` where `[a_λ b] = Σ_j λ^j P_j` and
/// `sign = (-1)^{p(a)p(b)}`.
pub fn skew_transform<C: Coeff>(
    p: &LambdaPoly<C>,
    sign: &C,
    deriv: impl Fn(&State<C>, u16) -> State<C>,
) -> LambdaPoly<C> {
    let mut out = LambdaPoly::zero();
    let minus_sign = sign.neg_ref();
    for (j, s) in p.coeffs().iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        // (-λ-∂)^j = (-1)^j Σ_r C(j,r) λ^{j-r} ∂^r
        for r in 0..=j {
            let d = deriv(s, r as u16);
            let mut w = minus_sign.scale_ratio(&binomial(j as u64, r as u64));
            if j % 2 == 1 {
                w = w.neg_ref();
            }
            out.add_scaled_at(j - r, &d, &w);
        }
    }
    out
}
