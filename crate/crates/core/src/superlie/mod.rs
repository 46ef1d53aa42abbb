//! The Lie superalgebra osp(3|2) as a frozen structure-constant table, with
//! its invariant form, ad-x grading and the centralizer of a nilpotent.

mod linalg;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coeffring::{fmt_rational, Scalar};
use crate::vertexcore::{AlgebraConfig, Parity};

pub use linalg::{nullspace, rank, rref, Matrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("structure constants are inconsistent: {0}")]
    ConstructionInconsistent(String),
    #[error("ad-x is not diagonalizable with half-integer spectrum: {0}")]
    GradingError(String),
    #[error("centralizer has unexpected shape: {0}")]
    CentralizerError(String),
    #[error("Killing form is not proportional to the invariant form: {0}")]
    NormalizationError(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("bracket [{0}, {1}] leaves the chosen subspace")]
    NotClosed(String, String),
}

/// A vector in the basis of the algebra.
pub type Element = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    /// Short identifier, e.g. `e122`.
    pub id: &'static str,
    /// Paper notation, e.g. `e_{122}`.
    pub latex: &'static str,
    pub parity: Parity,
}

const BASIS: [(&str, &str, Parity); 12] = [
    ("h1", "h_1", Parity::Even),
    ("h2", "h_2", Parity::Even),
    ("e1", "e_1", Parity::Odd),
    ("e2", "e_2", Parity::Even),
    ("e12", "e_{12}", Parity::Odd),
    ("e122", "e_{122}", Parity::Odd),
    ("e1122", "e_{1122}", Parity::Even),
    ("f1", "f_1", Parity::Odd),
    ("f2", "f_2", Parity::Even),
    ("f12", "f_{12}", Parity::Odd),
    ("f122", "f_{122}", Parity::Odd),
    ("f1122", "f_{1122}", Parity::Even),
];

/// Nonzero brackets `[a, b] = Σ c·v`, one ordering per pair; the other
/// ordering follows from super-antisymmetry.
const BRACKETS: &[(&str, &str, &[(i64, i64, &str)])] = &[
    ("h1", "e2", &[(1, 2, "e2")]),
    ("h1", "e12", &[(1, 2, "e12")]),
    ("h1", "e122", &[(1, 1, "e122")]),
    ("h1", "e1122", &[(1, 1, "e1122")]),
    ("h1", "f2", &[(-1, 2, "f2")]),
    ("h1", "f12", &[(-1, 2, "f12")]),
    ("h1", "f122", &[(-1, 1, "f122")]),
    ("h1", "f1122", &[(-1, 1, "f1122")]),
    ("h2", "e1", &[(1, 2, "e1")]),
    ("h2", "e2", &[(-1, 2, "e2")]),
    ("h2", "e122", &[(-1, 2, "e122")]),
    ("h2", "f1", &[(-1, 2, "f1")]),
    ("h2", "f2", &[(1, 2, "f2")]),
    ("h2", "f122", &[(1, 2, "f122")]),
    ("e1", "e2", &[(1, 1, "e12")]),
    ("e1", "e122", &[(1, 1, "e1122")]),
    ("e1", "f1", &[(1, 1, "h1")]),
    ("e1", "f12", &[(-1, 2, "f2")]),
    ("e1", "f1122", &[(-1, 1, "f122")]),
    ("e2", "e12", &[(1, 1, "e122")]),
    ("e2", "f2", &[(1, 1, "h2")]),
    ("e2", "f12", &[(1, 2, "f1")]),
    ("e2", "f122", &[(-1, 2, "f12")]),
    ("e12", "e12", &[(1, 1, "e1122")]),
    ("e12", "f1", &[(1, 2, "e2")]),
    ("e12", "f2", &[(-1, 2, "e1")]),
    ("e12", "f12", &[(1, 2, "h1"), (1, 2, "h2")]),
    ("e12", "f122", &[(1, 4, "f2")]),
    ("e12", "f1122", &[(-1, 2, "f12")]),
    ("e122", "f2", &[(1, 2, "e12")]),
    ("e122", "f12", &[(-1, 4, "e2")]),
    ("e122", "f122", &[(1, 4, "h1"), (1, 2, "h2")]),
    ("e122", "f1122", &[(-1, 4, "f1")]),
    ("e1122", "f1", &[(-1, 1, "e122")]),
    ("e1122", "f12", &[(-1, 2, "e12")]),
    ("e1122", "f122", &[(-1, 4, "e1")]),
    ("e1122", "f1122", &[(-1, 2, "h1"), (-1, 2, "h2")]),
    ("f1", "f2", &[(1, 1, "f12")]),
    ("f1", "f122", &[(1, 1, "f1122")]),
    ("f2", "f12", &[(1, 1, "f122")]),
    ("f12", "f12", &[(1, 1, "f1122")]),
];

/// Nonzero values of the invariant form, both orderings listed.
const FORM: &[(&str, &str, i64, i64)] = &[
    ("h1", "h2", 1, 2),
    ("h2", "h1", 1, 2),
    ("h2", "h2", -1, 2),
    ("e1", "f1", 1, 1),
    ("f1", "e1", -1, 1),
    ("e2", "f2", 1, 1),
    ("f2", "e2", 1, 1),
    ("e12", "f12", 1, 2),
    ("f12", "e12", -1, 2),
    ("e122", "f122", 1, 4),
    ("f122", "e122", -1, 4),
    ("e1122", "f1122", -1, 4),
    ("f1122", "e1122", -1, 4),
];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Debug)]
pub struct SuperLieAlgebra {
    basis: Vec<BasisElement>,
    /// `table[a][b]` is `[b_a, b_b]` in the basis.
    table: Vec<Vec<Element>>,
    form: Matrix,
}

/// osp(3|2) with Cartan matrix `((0, 1/2), (1/2, -1/2))`.
pub fn build_osp32() -> Result<SuperLieAlgebra, LieError> {
    let basis: Vec<BasisElement> = BASIS
        .iter()
        .map(|&(id, latex, parity)| BasisElement { id, latex, parity })
        .collect();
    let n = basis.len();
    let idx = |s: &str| basis.iter().position(|b| b.id == s).expect("basis name");
    let mut table = vec![vec![vec![BigRational::zero(); n]; n]; n];
    let mut set = vec![vec![false; n]; n];
    for &(a, b, terms) in BRACKETS {
        let (ia, ib) = (idx(a), idx(b));
        let mut v = vec![BigRational::zero(); n];
        for &(num, den, c) in terms {
            v[idx(c)] += q(num, den);
        }
        let sign = if basis[ia].parity.is_odd() && basis[ib].parity.is_odd() { 1 } else { -1 };
        let rev: Element = v.iter().map(|x| x * BigRational::from_integer(sign.into())).collect();
        if set[ia][ib] || (ia != ib && set[ib][ia]) {
            return Err(LieError::ConstructionInconsistent(format!("[{a}, {b}] listed twice")));
        }
        if ia == ib && sign == -1 && v.iter().any(|x| !x.is_zero()) {
            return Err(LieError::ConstructionInconsistent(format!("[{a}, {a}] must vanish")));
        }
        table[ia][ib] = v;
        table[ib][ia] = rev;
        set[ia][ib] = true;
        set[ib][ia] = true;
    }
    let mut form = linalg::zeros(n, n);
    for &(a, b, num, den) in FORM {
        form[idx(a)][idx(b)] = q(num, den);
    }
    let g = SuperLieAlgebra { basis, table, form };
    g.check()?;
    Ok(g)
}

impl SuperLieAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index(&self, id: &str) -> Result<usize, LieError> {
        let norm: String = id.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
        self.basis
            .iter()
            .position(|b| b.id == norm)
            .ok_or_else(|| LieError::UnknownBasis(id.to_string()))
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn unit(&self, i: usize) -> Element {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[i] = BigRational::one();
        v
    }

    /// Linear combination from `(coefficient, basis id)` pairs.
    pub fn element(&self, terms: &[(BigRational, &str)]) -> Result<Element, LieError> {
        let mut v = vec![BigRational::zero(); self.dim()];
        for (c, id) in terms {
            v[self.index(id)?] += c;
        }
        Ok(v)
    }

    pub fn basis_bracket(&self, a: usize, b: usize) -> &Element {
        &self.table[a][b]
    }

    /// Bilinear extension of the basis bracket.
    pub fn bracket(&self, u: &Element, v: &Element) -> Element {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n];
        for (a, ca) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let coeff = ca * cb;
                for (c, x) in self.table[a][b].iter().enumerate() {
                    if !x.is_zero() {
                        out[c] += &coeff * x;
                    }
                }
            }
        }
        out
    }

    pub fn basis_form(&self, a: usize, b: usize) -> &BigRational {
        &self.form[a][b]
    }

    pub fn form(&self, u: &Element, v: &Element) -> BigRational {
        let mut acc = BigRational::zero();
        for (a, ca) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                acc += ca * cb * &self.form[a][b];
            }
        }
        acc
    }

    fn koszul(&self, a: usize, b: usize) -> BigRational {
        if self.parity(a).is_odd() && self.parity(b).is_odd() {
            -BigRational::one()
        } else {
            BigRational::one()
        }
    }

    /// Super-Jacobi, parity of the bracket, and evenness, supersymmetry and
    /// invariance of the form on all basis triples.
    pub fn check(&self) -> Result<(), LieError> {
        let n = self.dim();
        let name = |i: usize| self.basis[i].latex;
        for a in 0..n {
            for b in 0..n {
                let p = self.parity(a).sum(self.parity(b));
                for (c, x) in self.table[a][b].iter().enumerate() {
                    if !x.is_zero() && self.parity(c) != p {
                        return Err(LieError::ConstructionInconsistent(format!(
                            "[{}, {}] has a component of the wrong parity",
                            name(a),
                            name(b)
                        )));
                    }
                }
                let f = &self.form[a][b];
                if !f.is_zero() && self.parity(a) != self.parity(b) {
                    return Err(LieError::ConstructionInconsistent(format!(
                        "form pairs {} with {} of opposite parity",
                        name(a),
                        name(b)
                    )));
                }
                if *f != &self.koszul(a, b) * &self.form[b][a] {
                    return Err(LieError::ConstructionInconsistent(format!(
                        "form is not supersymmetric on ({}, {})",
                        name(a),
                        name(b)
                    )));
                }
            }
        }
        for a in 0..n {
            let ua = self.unit(a);
            for b in 0..n {
                let ub = self.unit(b);
                let ab = self.bracket(&ua, &ub);
                for c in 0..n {
                    let uc = self.unit(c);
                    let lhs = self.bracket(&ua, &self.bracket(&ub, &uc));
                    let mut rhs = self.bracket(&ab, &uc);
                    let second = self.bracket(&ub, &self.bracket(&ua, &uc));
                    let s = self.koszul(a, b);
                    for (r, x) in rhs.iter_mut().zip(second) {
                        *r += &s * x;
                    }
                    if lhs != rhs {
                        return Err(LieError::ConstructionInconsistent(format!(
                            "super-Jacobi fails on ({}, {}, {})",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                    let bc = self.bracket(&ub, &uc);
                    if self.form(&ab, &uc) != self.form(&ua, &bc) {
                        return Err(LieError::ConstructionInconsistent(format!(
                            "form is not invariant on ({}, {}, {})",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad u`, columns indexed by the basis.
    pub fn ad(&self, u: &Element) -> Matrix {
        let n = self.dim();
        let mut m = linalg::zeros(n, n);
        for b in 0..n {
            let col = self.bracket(u, &self.unit(b));
            for (r, x) in col.into_iter().enumerate() {
                m[r][b] = x;
            }
        }
        m
    }

    /// `str(ad u · ad v)`.
    pub fn killing(&self, u: &Element, v: &Element) -> BigRational {
        let (au, av) = (self.ad(u), self.ad(v));
        let n = self.dim();
        let mut acc = BigRational::zero();
        for i in 0..n {
            let mut d = BigRational::zero();
            for j in 0..n {
                d += &au[i][j] * &av[j][i];
            }
            if self.parity(i).is_odd() {
                acc -= d;
            } else {
                acc += d;
            }
        }
        acc
    }

    /// The dual Coxeter number: half the constant ratio of the Killing form
    /// to the invariant form.
    pub fn check_dual_coxeter(&self) -> Result<Scalar, LieError> {
        let n = self.dim();
        let mut ratio: Option<BigRational> = None;
        for a in 0..n {
            for b in 0..n {
                let kappa = self.killing(&self.unit(a), &self.unit(b));
                let f = &self.form[a][b];
                match (f.is_zero(), &ratio) {
                    (true, _) if kappa.is_zero() => {}
                    (true, _) => {
                        return Err(LieError::NormalizationError(format!(
                            "κ({}, {}) = {} but the form vanishes",
                            self.basis[a].latex,
                            self.basis[b].latex,
                            fmt_rational(&kappa)
                        )))
                    }
                    (false, None) => ratio = Some(&kappa / f),
                    (false, Some(r)) if &kappa / f == *r => {}
                    (false, Some(r)) => {
                        return Err(LieError::NormalizationError(format!(
                            "κ/(|) = {} on ({}, {}) but {} elsewhere",
                            fmt_rational(&(&kappa / f)),
                            self.basis[a].latex,
                            self.basis[b].latex,
                            fmt_rational(r)
                        )))
                    }
                }
            }
        }
        let r = ratio.ok_or_else(|| LieError::NormalizationError("form is zero".into()))?;
        Ok(Scalar::from_rational(r / BigRational::from_integer(2.into())))
    }

    /// Eigenspace decomposition under `ad x`.
    pub fn grade_by(&self, x: &Element) -> Result<GradedDecomposition, LieError> {
        let n = self.dim();
        let ad = self.ad(x);
        let mut spaces = BTreeMap::new();
        let mut total = 0;
        let max = 4 * n as i64;
        for j2 in -max..=max {
            let mut m = ad.clone();
            let j = q(j2, 2);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= &j;
            }
            let ns = nullspace(&m, n);
            if !ns.is_empty() {
                total += ns.len();
                spaces.insert(j2, ns);
            }
        }
        if total != n {
            return Err(LieError::GradingError(format!(
                "half-integer eigenspaces span dimension {total} of {n}"
            )));
        }
        let mut degrees = Vec::with_capacity(n);
        for b in 0..n {
            let col: Vec<BigRational> = (0..n).map(|r| ad[r][b].clone()).collect();
            let d = col[b].clone();
            let eigen = col.iter().enumerate().all(|(r, v)| r == b || v.is_zero());
            let twice = &d * BigRational::from_integer(2.into());
            if !eigen || !twice.is_integer() {
                return Err(LieError::GradingError(format!(
                    "{} is not an ad-x eigenvector",
                    self.basis[b].latex
                )));
            }
            degrees.push(twice.to_integer().try_into().expect("small degree"));
        }
        Ok(GradedDecomposition {
            x: x.clone(),
            spaces,
            degrees,
        })
    }

    /// Basis of `g^f`, graded by the given decomposition.
    pub fn centralizer_of(&self, f: &Element, grading: &GradedDecomposition) -> Result<Centralizer, LieError> {
        let n = self.dim();
        let mut by_degree = BTreeMap::new();
        for (&j2, space) in &grading.spaces {
            // columns: [f, v] for v in the eigenspace
            let images: Vec<Element> = space.iter().map(|v| self.bracket(f, v)).collect();
            let mut m = linalg::zeros(n, space.len());
            for (c, img) in images.iter().enumerate() {
                for r in 0..n {
                    m[r][c] = img[r].clone();
                }
            }
            let kernel = nullspace(&m, space.len());
            if kernel.is_empty() {
                continue;
            }
            let vecs: Vec<Element> = kernel
                .iter()
                .map(|coeffs| {
                    let mut v = vec![BigRational::zero(); n];
                    for (c, s) in coeffs.iter().zip(space) {
                        for (x, y) in v.iter_mut().zip(s) {
                            *x += c * y;
                        }
                    }
                    v
                })
                .collect();
            by_degree.insert(j2, vecs);
        }
        let c = Centralizer { by_degree };
        let total: usize = c.by_degree.values().map(Vec::len).sum();
        let total_null = n - rank(&self.ad(f));
        if total != total_null {
            return Err(LieError::CentralizerError(format!(
                "graded pieces span {total}, kernel of ad f has dimension {total_null}"
            )));
        }
        Ok(c)
    }

    /// `Σ c·b` in printed notation, e.g. `1/2 h_1 + 1/2 h_2`.
    pub fn fmt_element(&self, v: &Element) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&fmt_rational(&abs));
                out.push(' ');
            }
            out.push_str(self.basis[i].latex);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Lines `[a, b] = ...` for every nonzero bracket with `a <= b`, then
    /// `(a|b) = ...` for the nonzero form values.
    pub fn structure_constants_text(&self) -> String {
        let mut out = String::new();
        let n = self.dim();
        for a in 0..n {
            for b in a..n {
                let v = &self.table[a][b];
                if v.iter().any(|x| !x.is_zero()) {
                    out.push_str(&format!(
                        "[{}, {}] = {}\n",
                        self.basis[a].latex,
                        self.basis[b].latex,
                        self.fmt_element(v)
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let f = &self.form[a][b];
                if !f.is_zero() {
                    out.push_str(&format!(
                        "({}|{}) = {}\n",
                        self.basis[a].latex,
                        self.basis[b].latex,
                        fmt_rational(f)
                    ));
                }
            }
        }
        out
    }

    pub fn current_name(&self, i: usize) -> String {
        format!("J^{{({})}}", self.basis[i].latex)
    }

    /// Affine currents `J^{(v)}` for `v` in `subset` with
    /// `[J^{(a)}_λ J^{(b)}] = J^{([a,b])} + λ·level·(a|b)`.
    ///
    /// Weights are 1, or `1 - j` when a grading is given. `level` is any
    /// scalar expression in `k`.
    pub fn affine_config(
        &self,
        subset: &[usize],
        level: &str,
        grading: Option<&GradedDecomposition>,
    ) -> Result<AlgebraConfig, LieError> {
        let mut cfg = AlgebraConfig::default();
        for &i in subset {
            let w = match grading {
                Some(g) => BigRational::one() - q(g.degrees[i], 2),
                None => BigRational::one(),
            };
            cfg.generator(&self.current_name(i), self.parity(i), &fmt_rational(&w));
        }
        for (pos, &a) in subset.iter().enumerate() {
            for &b in &subset[pos..] {
                let v = &self.table[a][b];
                let mut terms = Vec::new();
                for (c, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    if !subset.contains(&c) {
                        return Err(LieError::NotClosed(
                            self.basis[a].latex.into(),
                            self.basis[b].latex.into(),
                        ));
                    }
                    terms.push(format!("({})*{}", fmt_rational(x), self.current_name(c)));
                }
                let f = &self.form[a][b];
                if !f.is_zero() {
                    terms.push(format!("({})*({})*\\lambda", fmt_rational(f), level));
                }
                if !terms.is_empty() {
                    cfg.bracket(&self.current_name(a), &self.current_name(b), &terms.join(" + "));
                }
            }
        }
        Ok(cfg)
    }
}

/// `g = ⊕ g_j` under `ad x`; keys are `2j`.
#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    pub x: Element,
    pub spaces: BTreeMap<i64, Vec<Element>>,
    /// `2j` for each basis element.
    pub degrees: Vec<i64>,
}

impl GradedDecomposition {
    pub fn degree(&self, i: usize) -> BigRational {
        q(self.degrees[i], 2)
    }

    /// Basis indices of `g_j`, `j = j2/2`.
    pub fn basis_in(&self, j2: i64) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == j2).collect()
    }

    /// Basis indices of `g_{≤0}` in the printed order `h, e_1, f_{12}, f_2, f_{1122}, f_{122}`.
    pub fn non_positive(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.degrees.len()).filter(|&i| self.degrees[i] <= 0).collect();
        v.sort_by_key(|&i| (-self.degrees[i], i));
        v
    }
}

#[derive(Clone, Debug)]
pub struct Centralizer {
    /// Basis vectors by `2j`.
    pub by_degree: BTreeMap<i64, Vec<Element>>,
}

impl Centralizer {
    pub fn dim(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.by_degree.iter().map(|(&j, v)| (j, v.len())).collect()
    }

    /// Whether `v` lies in the span of the centralizer basis.
    pub fn contains(&self, v: &Element) -> bool {
        let vecs: Vec<&Element> = self.by_degree.values().flatten().collect();
        let n = v.len();
        let mut m = linalg::zeros(n, vecs.len());
        for (c, w) in vecs.iter().enumerate() {
            for r in 0..n {
                m[r][c] = w[r].clone();
            }
        }
        let before = rank(&m);
        for r in 0..n {
            m[r].push(v[r].clone());
        }
        rank(&m) == before
    }
}

/// The data of the reduction: `x = h_1 - h_2`, `f = f_2 + f_{1122}`.
pub struct Osp32 {
    pub g: SuperLieAlgebra,
    pub x: Element,
    pub f: Element,
    pub grading: GradedDecomposition,
    pub centralizer: Centralizer,
}

impl Osp32 {
    pub fn new() -> Result<Self, LieError> {
        let g = build_osp32()?;
        let one = BigRational::one();
        let x = g.element(&[(one.clone(), "h1"), (-one.clone(), "h2")])?;
        let f = g.element(&[(one.clone(), "f2"), (one, "f1122")])?;
        let grading = g.grade_by(&x)?;
        if grading.basis_in(0).len() != 2 {
            return Err(LieError::GradingError("g_0 is not the Cartan subalgebra".into()));
        }
        let centralizer = g.centralizer_of(&f, &grading)?;
        let dims = centralizer.dims();
        if dims != vec![(-3, 1), (-2, 2), (-1, 1)] {
            return Err(LieError::CentralizerError(format!("graded dimensions {dims:?}")));
        }
        Ok(Osp32 {
            g,
            x,
            f,
            grading,
            centralizer,
        })
    }
}

impl fmt::Display for GradedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j2, _) in self.spaces.iter().rev() {
            let names: Vec<String> = self
                .basis_in(*j2)
                .iter()
                .map(|&i| BASIS[i].1.to_string())
                .collect();
            writeln!(f, "g_{{{}}}: {}", fmt_rational(&q(*j2, 2)), names.join(", "))?;
        }
        Ok(())
    }
}
