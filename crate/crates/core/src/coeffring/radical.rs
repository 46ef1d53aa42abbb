//! Formal square roots.
//!
//! A radical is a product of distinct *atoms*: the imaginary unit, a prime, or
//! a primitive integer polynomial in `k` with positive trailing coefficient.
//! Linear factors are split off every polynomial radicand by the rational root
//! test, so atoms built from the same linear factor always coincide and the
//! keyed representation of a [`Scalar`](super::Scalar) is unique.
//!
//! Branch convention: a radicand whose trailing coefficient is negative is
//! written `i * sqrt(-p)`, so `sqrt(-1-2k)` becomes `i*sqrt(1+2k)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use smallvec::SmallVec;

use super::poly::{integer_square_split, Poly};
use super::ratfunc::RationalFunction;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    ImaginaryUnit,
    Prime(u64),
    Poly(Poly),
}

impl Atom {
    /// The square of the atom, which is always an element of the base field.
    pub fn square(&self) -> RationalFunction {
        match self {
            Atom::ImaginaryUnit => RationalFunction::from_int(-1),
            Atom::Prime(p) => RationalFunction::from_rational(BigRational::from_integer((*p).into())),
            Atom::Poly(p) => RationalFunction::from_poly(p.clone()),
        }
    }

    fn eval(&self, k: Complex64, branch: &Branch) -> Complex64 {
        match self {
            Atom::ImaginaryUnit => Complex64::new(0.0, 1.0),
            Atom::Prime(p) => Complex64::new((*p as f64).sqrt(), 0.0),
            Atom::Poly(p) => {
                let v = p.eval_complex(k).sqrt();
                if branch.flipped.contains(p) {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::ImaginaryUnit => f.write_str("i"),
            Atom::Prime(p) => write!(f, "sqrt({p})"),
            Atom::Poly(p) => write!(f, "sqrt({p})"),
        }
    }
}

/// Sorted, duplicate-free product of atoms; the empty key is `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RadicalKey(SmallVec<[Atom; 3]>);

impl RadicalKey {
    pub fn one() -> Self {
        RadicalKey(SmallVec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.binary_search(atom).is_ok()
    }

    pub fn without(&self, atom: &Atom) -> RadicalKey {
        RadicalKey(self.0.iter().filter(|a| *a != atom).cloned().collect())
    }

    pub(crate) fn from_atoms(mut atoms: Vec<Atom>) -> Self {
        atoms.sort();
        atoms.dedup();
        RadicalKey(atoms.into_iter().collect())
    }

    /// `sqrt(a) * sqrt(b) = factor * sqrt(key)`.
    pub fn mul(&self, other: &RadicalKey) -> (RationalFunction, RadicalKey) {
        if self.is_one() {
            return (RationalFunction::one(), other.clone());
        }
        if other.is_one() {
            return (RationalFunction::one(), self.clone());
        }
        let mut factor = RationalFunction::one();
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factor = factor.mul(&a[i].square());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        (factor, RadicalKey(out))
    }

    /// `sqrt(key)^2`.
    pub fn square(&self) -> RationalFunction {
        self.0
            .iter()
            .fold(RationalFunction::one(), |acc, a| acc.mul(&a.square()))
    }

    pub fn eval(&self, k: Complex64, branch: &Branch) -> Complex64 {
        self.0
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, a| acc * a.eval(k, branch))
    }

    /// Numeric value of the squared key, used to detect vanishing radicands.
    pub fn radicand_values(&self, k: Complex64) -> Vec<(String, Complex64)> {
        self.0
            .iter()
            .filter_map(|a| match a {
                Atom::Poly(p) => Some((p.to_string(), p.eval_complex(k))),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for RadicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // primes are shown multiplied together: sqrt(6) rather than sqrt(2)*sqrt(3)
        let mut parts: Vec<String> = Vec::new();
        if self.contains(&Atom::ImaginaryUnit) {
            parts.push("i".into());
        }
        let m: u64 = self
            .0
            .iter()
            .filter_map(|a| match a {
                Atom::Prime(p) => Some(*p),
                _ => None,
            })
            .product();
        if m > 1 {
            parts.push(format!("sqrt({m})"));
        }
        for a in &self.0 {
            if let Atom::Poly(p) = a {
                parts.push(format!("sqrt({p})"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sign choices per polynomial radicand for numeric evaluation. The default is
/// the principal square root everywhere.
#[derive(Clone, Debug, Default)]
pub struct Branch {
    flipped: Vec<Poly>,
}

impl Branch {
    pub fn principal() -> Self {
        Branch::default()
    }

    /// Use the negative square root for the radicand `p` (given in any
    /// normalization; it is reduced to its atom form).
    pub fn flip(mut self, p: &Poly) -> Self {
        let (_, prim) = p.content_and_primitive();
        self.flipped.push(prim);
        self
    }
}

/// `sqrt(r) = coefficient * sqrt(key)` for a rational function `r`.
pub fn radical_of(r: &RationalFunction) -> (RationalFunction, RadicalKey) {
    if r.is_zero() {
        return (RationalFunction::zero(), RadicalKey::one());
    }
    let den = r.denom().clone();
    // sqrt(N/D) = sqrt(N*D)/D
    let p = r.numer().mul(&den);
    let mut constant = p.leading();
    let mut outside = Poly::one();
    let mut inside = Poly::one();
    for (i, s) in p.squarefree_decomposition().iter().enumerate() {
        let mult = (i + 1) as u32;
        outside = outside.mul(&s.pow(mult / 2));
        if mult % 2 == 1 {
            inside = inside.mul(s);
        }
    }
    let mut atoms = Vec::new();
    if !inside.is_constant() {
        let mut rest = inside.clone();
        for root in inside.rational_roots() {
            let lin = Poly::from_coeffs(vec![-root.clone(), BigRational::one()]);
            rest = rest.div_exact(&lin);
            let (c, prim) = lin.content_and_primitive();
            constant *= c;
            atoms.push(Atom::Poly(prim));
        }
        if !rest.is_constant() {
            let (c, prim) = rest.content_and_primitive();
            constant *= c;
            atoms.push(Atom::Poly(prim));
        } else {
            constant *= rest.leading();
        }
    }
    // sqrt(±n/d) = (i) * sqrt(n*d)/d
    if constant.is_negative() {
        atoms.push(Atom::ImaginaryUnit);
    }
    let abs = constant.abs();
    let nd: BigInt = abs.numer() * abs.denom();
    let (g, primes) = integer_square_split(&nd);
    atoms.extend(primes.into_iter().map(Atom::Prime));
    let scalar = BigRational::new(g, abs.denom().clone());
    let coeff = RationalFunction::from_poly(outside.scale(&scalar))
        .div(&RationalFunction::from_poly(den))
        .expect("denominator of a reduced rational function is nonzero");
    debug_assert!(!coeff.is_zero());
    (coeff, RadicalKey::from_atoms(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn negative_trailing_gets_imaginary_unit() {
        let (c, key) = radical_of(&rf(&[-1, -2]));
        assert!(c.is_one());
        assert_eq!(key.to_string(), "i*sqrt(1+2*k)");
    }

    #[test]
    fn square_parts_leave_the_radical() {
        // sqrt(9 - 18k) = 3 sqrt(1-2k)
        let (c, key) = radical_of(&rf(&[9, -18]));
        assert_eq!(c, rf(&[3]));
        assert_eq!(key.to_string(), "sqrt(1-2*k)");
        // sqrt(k + 1/2) = sqrt(2) sqrt(1+2k) / 2
        let half = RationalFunction::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[2])).unwrap();
        let (c, key) = radical_of(&half);
        assert_eq!(c, RationalFunction::from_rational(BigRational::new(1.into(), 2.into())));
        assert_eq!(key.to_string(), "sqrt(2)*sqrt(1+2*k)");
    }

    #[test]
    fn quadratic_splits_into_linear_atoms() {
        let (c, key) = radical_of(&rf(&[1, 5, 6]));
        assert!(c.is_one());
        assert_eq!(key.atoms().len(), 2);
        let (c2, k2) = radical_of(&rf(&[1, 2]));
        let (c3, k3) = radical_of(&rf(&[1, 3]));
        let (f, prod) = k2.mul(&k3);
        assert_eq!(prod, key);
        assert!(f.mul(&c2).mul(&c3).is_one());
    }

    #[test]
    fn key_product_squares_out() {
        let (_, a) = radical_of(&rf(&[1, -2]));
        let (f, key) = a.mul(&a);
        assert!(key.is_one());
        assert_eq!(f, rf(&[1, -2]));
    }
}
