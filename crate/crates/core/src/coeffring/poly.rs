//! Dense univariate polynomials in the level `k` with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients are stored lowest degree first; the leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(n.into()))
    }

    /// The variable `k` itself.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lowest-degree nonzero coefficient.
    pub fn trailing(&self) -> BigRational {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; the caller guarantees `divisor | self`.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Poly::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Complex64::new(rational_to_f64(c), 0.0);
        }
        acc
    }

    /// Split into `content * primitive` where the primitive part has coprime
    /// integer coefficients and a positive trailing coefficient.
    pub fn content_and_primitive(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::zero(), Poly::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if self.trailing().is_negative() {
            g = -g;
        }
        let prim = Poly::from_coeffs(
            ints.iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        );
        (BigRational::new(g, den), prim)
    }

    /// Squarefree decomposition (Yun): returns monic `s_1, s_2, ...` with
    /// `self = lc * prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let f = self.make_monic();
        if f.is_constant() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_exact(&a);
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.is_constant()) {
            out.pop();
        }
        out
    }

    /// Rational roots of a polynomial, by the rational root test on the
    /// primitive integer form. Roots are returned without multiplicity.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let (_, prim) = self.content_and_primitive();
        let Some(deg) = prim.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let ints: Vec<BigInt> = prim.coeffs.iter().map(|c| c.to_integer()).collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            roots.push(BigRational::zero());
        }
        let a0 = ints[low].abs();
        let an = ints[deg].abs();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        for p in &ps {
            for q in &qs {
                if p.gcd(q) != BigInt::one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = BigRational::new(p * BigInt::from(sign), q.clone());
                    if prim.eval_rational(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Write in ascending powers of `var`, e.g. `5+18*k+16*k^2`.
    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&fmt_rational(&mag));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Orders by degree, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("k"))
    }
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators and denominators together
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let other = &n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Squarefree factorization of a positive integer: returns `(square_root_part, squarefree_primes)`
/// with `n = square_root_part^2 * prod(primes)`.
pub fn integer_square_split(n: &BigInt) -> (BigInt, Vec<u64>) {
    assert!(n.is_positive(), "integer_square_split expects a positive integer");
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut primes = Vec::new();
    let mut p: u64 = 2;
    while BigInt::from(p) * BigInt::from(p) <= rest {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        outside *= bp.pow(e / 2);
        if e % 2 == 1 {
            primes.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        primes.push(
            rest.to_u64()
                .expect("radicand prime factor exceeds 64 bits"),
        );
    }
    primes.sort_unstable();
    (outside, primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        // (1+2k)(5+8k) = 5+18k+16k^2
        let a = p(&[1, 2]).mul(&p(&[5, 8]));
        assert_eq!(a, p(&[5, 18, 16]));
        let g = a.gcd(&p(&[1, 2]).mul(&p(&[1, 3])));
        assert_eq!(g, p(&[1, 2]).make_monic());
        let (q, r) = a.div_rem(&p(&[1, 2]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[5, 8]));
    }

    #[test]
    fn squarefree_parts() {
        // k^2 (1-2k)^3 (1+k)
        let f = p(&[0, 1])
            .pow(2)
            .mul(&p(&[1, -2]).pow(3))
            .mul(&p(&[1, 1]));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], p(&[1, 1]));
        assert_eq!(parts[1], p(&[0, 1]));
        assert_eq!(parts[2], p(&[1, -2]).make_monic());
    }

    #[test]
    fn rational_roots_of_quadratic() {
        let r = p(&[1, 5, 6]).rational_roots();
        let expect: Vec<BigRational> = vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ];
        assert_eq!(r, expect);
        assert!(p(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn content_split_normalizes_sign() {
        let (c, prim) = p(&[-2, 4]).content_and_primitive();
        assert_eq!(c, BigRational::from_integer((-2).into()));
        assert_eq!(prim, p(&[1, -2]));
    }

    #[test]
    fn integer_squares() {
        let (o, ps) = integer_square_split(&BigInt::from(72));
        assert_eq!(o, BigInt::from(6));
        assert_eq!(ps, vec![2]);
        let (o, ps) = integer_square_split(&BigInt::from(69));
        assert_eq!(o, BigInt::from(1));
        assert_eq!(ps, vec![3, 23]);
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[5, 18, 16]).to_string(), "5+18*k+16*k^2");
        assert_eq!(p(&[0, -1]).to_string(), "-k");
    }
}
