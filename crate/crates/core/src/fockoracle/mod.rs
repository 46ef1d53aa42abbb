//! Numeric oracle: two free bosons and two neutral free fermions as mode
//! operators on a degree-truncated Fock space (Neveu–Schwarz sector) at a
//! fixed rational k. n-th products are computed by mode arithmetic and
//! compared with the symbolic engine.
//!
//! Nothing here goes through the vertexcore rewriting; the bracket constants
//! are read from the Lie superalgebra, and vertexcore states are only used
//! as input.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::coeffring::{fmt_rational, rational_to_f64, Branch, CoeffError, Scalar};
use crate::reduction::{build_setup, check_level, Entry, Mode, Quadruple, ReductionError, VerificationReport};
use crate::superlie::{LieError, Osp32};
use crate::vertexcore::{Engine, Factor, Monomial, NameTable, State};

pub const ORACLE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_CUTOFF: u32 = 4;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("cutoff {cutoff} is too small for a state of weight {weight}")]
    CutoffTooSmall { weight: String, cutoff: String },
    #[error("generator `{0}` is not a free field of the oracle")]
    UnknownGenerator(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// A creation mode `x_(m)`, `m ≤ -1`, of oracle generator `x`.
type Mode_ = (u8, i32);
/// Creation modes sorted by generator, then by mode descending.
type Key = Vec<Mode_>;

/// The free fields and their pairings, straight from osp(3|2).
#[derive(Clone, Debug)]
pub struct FreeFields {
    pub names: Vec<String>,
    pub odd: Vec<bool>,
    /// Doubled conformal weights.
    pub weight2: Vec<u32>,
    /// `(h_i|h_j)` for the bosons, indexed by boson position.
    pub cartan: Vec<Vec<BigRational>>,
    /// `(f|[a,b])` for the fermions, indexed by fermion position.
    pub gram: Vec<Vec<BigRational>>,
    /// Position of each generator among the bosons or the fermions.
    pub slot: Vec<usize>,
}

impl FreeFields {
    pub fn osp32() -> Result<Self, OracleError> {
        let osp = Osp32::new()?;
        let g = &osp.g;
        let h = [g.index("h1")?, g.index("h2")?];
        let fer = [g.index("f1")?, g.index("e12")?];
        let mut names: Vec<String> = h.iter().map(|&i| g.current_name(i)).collect();
        names.push("\\Phi_{-1}".into());
        names.push("\\Phi_{12}".into());
        let cartan = h.iter().map(|&a| h.iter().map(|&b| g.basis_form(a, b).clone()).collect()).collect();
        let gram = fer
            .iter()
            .map(|&a| fer.iter().map(|&b| g.form(&osp.f, &g.bracket(&g.unit(a), &g.unit(b)))).collect())
            .collect();
        Ok(FreeFields {
            names,
            odd: vec![false, false, true, true],
            weight2: vec![2, 2, 1, 1],
            cartan,
            gram,
            slot: vec![0, 1, 0, 1],
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A sparse linear map given by the images of the basis vectors.
#[derive(Clone, Debug, Default)]
pub struct ModeOperator {
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl ModeOperator {
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &self.cols[j] {
                out[*i] += c * x;
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}

/// The span of creation monomials of total degree at most the cutoff.
pub struct TruncatedFockSpace {
    pub k: BigRational,
    /// Doubled cutoff degree.
    pub cutoff2: u32,
    pub fields: FreeFields,
    pub branch: Branch,
    basis: Vec<Key>,
    index: HashMap<Key, usize>,
    degree2: Vec<u32>,
    ops: HashMap<Mode_, ModeOperator>,
    level: f64,
}

fn mode_degree2(fields: &FreeFields, (g, m): Mode_) -> i64 {
    2 * (-(m as i64) - 1) + fields.weight2[g as usize] as i64
}

fn sort_key(m: &Mode_) -> (u8, i32) {
    (m.0, -m.1)
}

impl TruncatedFockSpace {
    pub fn new(k: &BigRational, cutoff2: u32) -> Result<Self, OracleError> {
        check_level(k)?;
        let fields = FreeFields::osp32()?;
        let mut creation: Vec<Mode_> = Vec::new();
        for g in 0..fields.len() as u8 {
            let mut m = -1;
            while mode_degree2(&fields, (g, m)) <= cutoff2 as i64 {
                creation.push((g, m));
                m -= 1;
            }
        }
        creation.sort_by_key(sort_key);
        let mut basis = Vec::new();
        enumerate(&fields, &creation, 0, cutoff2 as i64, &mut Vec::new(), &mut basis);
        basis.sort_by_key(|key: &Key| (degree_of(&fields, key), key.clone()));
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let degree2 = basis.iter().map(|key| degree_of(&fields, key) as u32).collect();
        let mut space = TruncatedFockSpace {
            k: k.clone(),
            cutoff2,
            fields,
            branch: Branch::principal(),
            basis,
            index,
            degree2,
            ops: HashMap::new(),
            level: rational_to_f64(k) + 0.5,
        };
        let top = cutoff2 as i32 + 1;
        for g in 0..space.fields.len() as u8 {
            for m in -top..=top {
                let op = space.build_operator(g, m);
                space.ops.insert((g, m), op);
            }
        }
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of basis vectors of each doubled degree `0..=cutoff2`.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.cutoff2 as usize + 1];
        for d in &self.degree2 {
            out[*d as usize] += 1;
        }
        out
    }

    pub fn vacuum(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::zero(); self.dim()];
        v[self.index[&Vec::new()]] = Complex64::new(1.0, 0.0);
        v
    }

    /// Supercommutator `[x_(m), y_(n)]` as a number.
    fn contraction(&self, x: u8, m: i32, y: u8, n: i32) -> f64 {
        let f = &self.fields;
        let (x, y) = (x as usize, y as usize);
        if f.odd[x] != f.odd[y] {
            return 0.0;
        }
        if f.odd[x] {
            // [a_λ b] = <a|b>  ⇒  [a_(m), b_(n)] = <a|b> δ_{m+n,-1}
            if m + n == -1 {
                rational_to_f64(&f.gram[f.slot[x]][f.slot[y]])
            } else {
                0.0
            }
        } else if m + n == 0 {
            // [a_λ b] = λ (k+1/2)(a|b)  ⇒  [a_(m), b_(n)] = m (k+1/2)(a|b) δ_{m+n,0}
            m as f64 * self.level * rational_to_f64(&f.cartan[f.slot[x]][f.slot[y]])
        } else {
            0.0
        }
    }

    fn build_operator(&self, x: u8, m: i32) -> ModeOperator {
        let odd = self.fields.odd[x as usize];
        let mut cols = Vec::with_capacity(self.dim());
        for key in &self.basis {
            let mut col = Vec::new();
            if m <= -1 {
                let pos = key.iter().position(|y| sort_key(y) >= sort_key(&(x, m))).unwrap_or(key.len());
                let clash = odd && pos < key.len() && key[pos] == (x, m);
                if !clash {
                    let passed = if odd { key[..pos].iter().filter(|y| self.fields.odd[y.0 as usize]).count() } else { 0 };
                    let mut new = key.clone();
                    new.insert(pos, (x, m));
                    if let Some(&i) = self.index.get(&new) {
                        col.push((i, Complex64::new(if passed % 2 == 1 { -1.0 } else { 1.0 }, 0.0)));
                    }
                }
            } else {
                let mut odd_passed = 0;
                for (i, &(y, n)) in key.iter().enumerate() {
                    let c = self.contraction(x, m, y, n);
                    if c != 0.0 {
                        let mut rest = key.clone();
                        rest.remove(i);
                        let sign = if odd && odd_passed % 2 == 1 { -1.0 } else { 1.0 };
                        col.push((self.index[&rest], Complex64::new(sign * c, 0.0)));
                    }
                    if self.fields.odd[y as usize] {
                        odd_passed += 1;
                    }
                }
            }
            cols.push(col);
        }
        ModeOperator { cols }
    }

    pub fn operator(&self, x: usize, m: i32) -> Option<&ModeOperator> {
        self.ops.get(&(x as u8, m))
    }

    fn apply_mode(&self, x: u8, m: i32, v: &[Complex64]) -> Vec<Complex64> {
        match self.ops.get(&(x, m)) {
            Some(op) => op.apply(v),
            None => vec![Complex64::zero(); v.len()],
        }
    }

    /// Largest doubled degree carrying a nonzero component.
    fn depth2(&self, v: &[Complex64]) -> i64 {
        v.iter()
            .zip(&self.degree2)
            .filter(|(x, _)| !x.is_zero())
            .map(|(_, d)| *d as i64)
            .max()
            .unwrap_or(-1)
    }

    /// `(∂^d x)_(n) v = (-1)^d n(n-1)...(n-d+1) x_(n-d) v`.
    fn apply_field(&self, x: u8, d: u16, n: i32, v: &[Complex64]) -> Vec<Complex64> {
        let mut c = 1.0;
        for i in 0..d as i32 {
            c *= -((n - i) as f64);
        }
        let mut out = self.apply_mode(x, n - d as i32, v);
        if c != 1.0 {
            for z in out.iter_mut() {
                *z *= c;
            }
        }
        out
    }

    /// `a_(n) v` for `a = :f_1:f_2:...::` by the mode expansion
    /// `(:f b:)_(n) = Σ_{m<0} f_(m) b_(n-m-1) ± Σ_{m≥0} b_(n-m-1) f_(m)`.
    fn apply_product(&self, fs: &[(u8, u16)], n: i32, v: &[Complex64]) -> Vec<Complex64> {
        let depth = self.depth2(v);
        if depth < 0 {
            return vec![Complex64::zero(); v.len()];
        }
        match fs {
            [] => {
                if n == -1 {
                    v.to_vec()
                } else {
                    vec![Complex64::zero(); v.len()]
                }
            }
            [(x, d)] => self.apply_field(*x, *d, n, v),
            [(x, d), rest @ ..] => {
                let w = |fs: &[(u8, u16)]| -> i64 {
                    fs.iter().map(|(g, d)| self.fields.weight2[*g as usize] as i64 + 2 * *d as i64).sum()
                };
                let (w_f, w_rest) = (w(&fs[..1]), w(rest));
                let sign = if self.fields.odd[*x as usize] && rest.iter().filter(|(g, _)| self.fields.odd[*g as usize]).count() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                let mut out = vec![Complex64::zero(); v.len()];
                let lo = n as i64 - 1 - (depth + w_rest - 2).div_euclid(2);
                for m in lo..=-1 {
                    let inner = self.apply_product(rest, n - m as i32 - 1, v);
                    for (o, z) in out.iter_mut().zip(self.apply_field(*x, *d, m as i32, &inner)) {
                        *o += z;
                    }
                }
                for m in 0..=(depth + w_f - 2).div_euclid(2) {
                    let inner = self.apply_field(*x, *d, m as i32, v);
                    for (o, z) in out.iter_mut().zip(self.apply_product(rest, n - m as i32 - 1, &inner)) {
                        *o += sign * z;
                    }
                }
                out
            }
        }
    }

    fn factors(&self, names: &NameTable, m: &Monomial) -> Result<Vec<(u8, u16)>, OracleError> {
        m.factors()
            .iter()
            .map(|f| {
                let name = &names.generators()[f.gen as usize].name;
                self.fields
                    .position(name)
                    .map(|p| (p as u8, f.deriv))
                    .ok_or_else(|| OracleError::UnknownGenerator(name.clone()))
            })
            .collect()
    }

    fn check_weight(&self, names: &NameTable, s: &State<Scalar>) -> Result<(), OracleError> {
        for (m, _) in s.terms() {
            let w = names.monomial_weight2(m);
            if w > self.cutoff2 {
                return Err(OracleError::CutoffTooSmall {
                    weight: fmt_rational(&BigRational::new((w as i64).into(), 2.into())),
                    cutoff: fmt_rational(&BigRational::new((self.cutoff2 as i64).into(), 2.into())),
                });
            }
        }
        Ok(())
    }

    /// `a ↦ a_(-1)|0⟩`.
    pub fn realize_state(&self, names: &NameTable, a: &State<Scalar>) -> Result<Vec<Complex64>, OracleError> {
        self.check_weight(names, a)?;
        let vac = self.vacuum();
        let mut out = vec![Complex64::zero(); self.dim()];
        for (m, c) in a.terms() {
            let c = c.eval_at_branch(&self.k, &self.branch)?;
            let fs = self.factors(names, m)?;
            for (o, z) in out.iter_mut().zip(self.apply_product(&fs, -1, &vac)) {
                *o += c * z;
            }
        }
        Ok(out)
    }

    /// `a_(n) b` computed with modes.
    pub fn numeric_nth_product(
        &self,
        names: &NameTable,
        a: &State<Scalar>,
        n: i32,
        b: &State<Scalar>,
    ) -> Result<Vec<Complex64>, OracleError> {
        self.check_weight(names, a)?;
        let v = self.realize_state(names, b)?;
        let mut out = vec![Complex64::zero(); self.dim()];
        for (m, c) in a.terms() {
            let c = c.eval_at_branch(&self.k, &self.branch)?;
            let fs = self.factors(names, m)?;
            for (o, z) in out.iter_mut().zip(self.apply_product(&fs, n, &v)) {
                *o += c * z;
            }
        }
        Ok(out)
    }

    /// Every basis monomial as a vertexcore state, via
    /// `x_(-d-1) ↦ ∂^d x / d!` up to the factorials, which do not matter here.
    pub fn basis_states(&self, engine: &Engine<Scalar>) -> Result<Vec<State<Scalar>>, OracleError> {
        let names = engine.algebra().names();
        self.basis
            .iter()
            .map(|key| {
                let factors: Vec<Factor> = key
                    .iter()
                    .map(|&(g, m)| {
                        let name = &self.fields.names[g as usize];
                        names
                            .id(name)
                            .map(|id| Factor::new(id, (-m - 1) as u16))
                            .ok_or_else(|| OracleError::UnknownGenerator(name.clone()))
                    })
                    .collect::<Result<_, _>>()?;
                Ok(engine.normal_form(&factors))
            })
            .collect()
    }

    /// The basis monomial of index `i`, written with modes.
    pub fn fmt_basis(&self, i: usize) -> String {
        if self.basis[i].is_empty() {
            return "|0⟩".into();
        }
        let parts: Vec<String> = self.basis[i]
            .iter()
            .map(|&(g, m)| format!("{}_{{({m})}}", self.fields.names[g as usize]))
            .collect();
        format!("{} |0⟩", parts.join(" "))
    }
}

fn degree_of(fields: &FreeFields, key: &Key) -> i64 {
    key.iter().map(|&m| mode_degree2(fields, m)).sum()
}

fn enumerate(fields: &FreeFields, creation: &[Mode_], start: usize, budget: i64, cur: &mut Key, out: &mut Vec<Key>) {
    out.push(cur.clone());
    for i in start..creation.len() {
        let m = creation[i];
        let d = mode_degree2(fields, m);
        if d > budget {
            continue;
        }
        cur.push(m);
        let next = if fields.odd[m.0 as usize] { i + 1 } else { i };
        enumerate(fields, creation, next, budget - d, cur, out);
        cur.pop();
    }
}

/// `max_i |x_i - y_i|` and the scale `max(1, max_i |y_i|)`.
pub fn compare(x: &[Complex64], y: &[Complex64]) -> (f64, f64) {
    let err = x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let scale = y.iter().map(|b| b.norm()).fold(1.0, f64::max);
    (err, scale)
}

/// Outcome of a crosscheck at one level.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub k: BigRational,
    pub cutoff2: u32,
    pub dim: usize,
    pub monomials: usize,
    /// `(a, n, b)` with `a_(n)b` inside the truncated space.
    pub cases: usize,
    /// Cases whose product has degree above the cutoff; both sides vanish
    /// in the truncated space.
    pub beyond_cutoff: usize,
    pub max_relative_error: f64,
    pub failures: Vec<String>,
    /// Mode commutators checked against the vertex algebra's bracket table.
    pub commutators: usize,
}

impl CrossCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compare the vertex algebra's generator brackets with the oracle's mode
/// commutators: `[x_(m), y_(n)] = Σ_j C(m,j) (x_(j)y)_(m+n-j)` on the vacuum
/// sector, for `0 ≤ m ≤ 2`, `-3 ≤ n ≤ -1`.
fn commutator_check(space: &TruncatedFockSpace, engine: &Engine<Scalar>, failures: &mut Vec<String>) -> Result<usize, OracleError> {
    let names = engine.algebra().names();
    let vac = space.vacuum();
    let mut count = 0;
    for x in 0..space.fields.len() {
        for y in 0..space.fields.len() {
            let sx = engine.gen(&space.fields.names[x]).map_err(|_| OracleError::UnknownGenerator(space.fields.names[x].clone()))?;
            let sy = engine.gen(&space.fields.names[y]).map_err(|_| OracleError::UnknownGenerator(space.fields.names[y].clone()))?;
            let br = engine.bracket(&sx, &sy);
            for m in 0..=2i32 {
                for n in -3..=-1i32 {
                    if mode_degree2(&space.fields, (y as u8, n)) > space.cutoff2 as i64 {
                        continue;
                    }
                    // x_(m) y_(n)|0⟩ = [x_(m), y_(n)]|0⟩ since x_(m)|0⟩ = 0.
                    let yv = space.apply_mode(y as u8, n, &vac);
                    let got = space.apply_mode(x as u8, m, &yv);
                    let j = (m + n + 1) as usize;
                    let mut expected = vec![Complex64::zero(); space.dim()];
                    if m + n + 1 >= 0 {
                        let coeff = br.coeff(j);
                        let mut binom = 1.0;
                        let mut fact = 1.0;
                        for i in 0..j {
                            binom *= (m - i as i32) as f64 / (i + 1) as f64;
                            fact *= (i + 1) as f64;
                        }
                        if let Some(c) = coeff.vacuum_part() {
                            let c = c.eval_at_branch(&space.k, &space.branch)?;
                            for (e, v) in expected.iter_mut().zip(&vac) {
                                *e += binom * fact * c * v;
                            }
                        }
                        if coeff.terms().any(|(mono, _)| !mono.is_vacuum()) {
                            failures.push(format!("[{}_λ {}] is not central", names.generators()[x].name, names.generators()[y].name));
                        }
                    }
                    let (err, scale) = compare(&got, &expected);
                    if err > ORACLE_TOLERANCE * scale {
                        failures.push(format!(
                            "[{}_({m}), {}_({n})] differs from the bracket table by {err:.3e}",
                            space.fields.names[x], space.fields.names[y]
                        ));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Symbolic `a_(n)b` realized in the Fock space against the mode
/// computation, for all basis monomials `a`, `b` and `n ∈ {-1, 0, 1, 2, 3}`.
pub fn crosscheck(k: &BigRational, cutoff2: u32) -> Result<CrossCheck, OracleError> {
    let space = TruncatedFockSpace::new(k, cutoff2)?;
    let setup = build_setup(Mode::Free)?;
    let engine = Engine::symbolic(setup.algebra.clone());
    let mut failures = Vec::new();
    let commutators = commutator_check(&space, &engine, &mut failures)?;
    let monomials = space.basis_states(&engine)?;
    let names = setup.algebra.names();
    let weights: Vec<i64> = monomials.iter().map(|s| engine.weights2(s)[0] as i64).collect();

    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4).min(16);
    let next = Mutex::new(0usize);
    let shared = Mutex::new((0usize, 0usize, 0.0f64, Vec::<String>::new()));
    let result: Result<(), OracleError> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| -> Result<(), OracleError> {
                    let engine = Engine::symbolic(setup.algebra.clone());
                    loop {
                        let ia = {
                            let mut g = next.lock().expect("lock");
                            let i = *g;
                            *g += 1;
                            i
                        };
                        if ia >= monomials.len() {
                            return Ok(());
                        }
                        let (mut cases, mut beyond, mut worst, mut fails) = (0, 0, 0.0f64, Vec::new());
                        let a = &monomials[ia];
                        for (ib, b) in monomials.iter().enumerate() {
                            for n in -1..=3i32 {
                                let d = weights[ia] + weights[ib] - 2 * n as i64 - 2;
                                if d < 0 {
                                    continue;
                                }
                                if d > cutoff2 as i64 {
                                    beyond += 1;
                                    continue;
                                }
                                cases += 1;
                                let sym = engine.nth_product(a, n as i64, b);
                                let expected = space.realize_state(names, &sym)?;
                                let got = space.numeric_nth_product(names, a, n, b)?;
                                let (err, scale) = compare(&got, &expected);
                                worst = worst.max(err / scale);
                                if err > ORACLE_TOLERANCE * scale {
                                    fails.push(format!(
                                        "{}_({n}) {}: error {err:.3e}",
                                        space.fmt_basis(ia),
                                        space.fmt_basis(ib)
                                    ));
                                }
                            }
                        }
                        let mut s = shared.lock().expect("lock");
                        s.0 += cases;
                        s.1 += beyond;
                        s.2 = s.2.max(worst);
                        s.3.extend(fails);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().expect("oracle worker panicked")?;
        }
        Ok(())
    });
    result?;
    let (cases, beyond_cutoff, max_relative_error, mut fails) = shared.into_inner().expect("lock");
    fails.sort();
    failures.extend(fails);
    Ok(CrossCheck {
        k: k.clone(),
        cutoff2,
        dim: space.dim(),
        monomials: monomials.len(),
        cases,
        beyond_cutoff,
        max_relative_error,
        failures,
        commutators,
    })
}

pub fn oracle_levels() -> Vec<BigRational> {
    vec![
        BigRational::new(1.into(), 3.into()),
        BigRational::from_integer(1.into()),
        BigRational::from_integer(2.into()),
    ]
}

/// Crosschecks at k = 1/3, 1, 2 plus oracle evaluations of G_(0)G/2 - L and
/// W_(3)W, as a report.
pub fn verify_oracle(quad: &Quadruple, cutoff2: u32) -> Result<VerificationReport, OracleError> {
    let mut report = VerificationReport::new("oracle", "free", None);
    for k in oracle_levels() {
        let c = crosscheck(&k, cutoff2)?;
        let ks = fmt_rational(&k);
        report.entries.push(Entry {
            identity: format!("crosscheck at k = {ks}: {} cases, {} mode commutators", c.cases, c.commutators),
            lambda_power: 0,
            expected: format!("agreement ≤ {ORACLE_TOLERANCE:e}"),
            computed: format!("max relative error {:.3e}", c.max_relative_error),
            difference: c.failures.iter().take(5).cloned().collect::<Vec<_>>().join("; "),
            pass: c.pass(),
            seconds: None,
        });
    }
    let k = BigRational::from_integer(1.into());
    let space = TruncatedFockSpace::new(&k, cutoff2)?;
    let names = quad.algebra.names();
    let gg = space.numeric_nth_product(names, &quad.g, 0, &quad.g)?;
    let l = space.realize_state(names, &quad.l)?;
    let half: Vec<Complex64> = gg.iter().map(|z| z * 0.5).collect();
    let (err, scale) = compare(&half, &l);
    report.entries.push(Entry {
        identity: "G_(0)G/2 = L at k = 1 (modes)".into(),
        lambda_power: 0,
        expected: "L".into(),
        computed: format!("max error {err:.3e}"),
        difference: String::new(),
        pass: err <= ORACLE_TOLERANCE * scale,
        seconds: None,
    });
    let k = BigRational::new(1.into(), 3.into());
    let space = TruncatedFockSpace::new(&k, cutoff2)?;
    let ww = space.numeric_nth_product(names, &quad.w, 3, &quad.w)?;
    let vac_coeff = ww[space.index[&Vec::new()]];
    let rest = ww.iter().enumerate().filter(|(i, _)| *i != space.index[&Vec::new()]).map(|(_, z)| z.norm()).fold(0.0, f64::max);
    report.entries.push(Entry {
        identity: "W_(3)W at k = 1/3 (modes) = c/2 |0⟩ = 6 |0⟩".into(),
        lambda_power: 0,
        expected: "6 |0⟩".into(),
        computed: format!("{} |0⟩ (other components ≤ {rest:.1e})", crate::reduction::fmt_complex(vac_coeff)),
        difference: String::new(),
        pass: (vac_coeff - Complex64::new(6.0, 0.0)).norm() <= ORACLE_TOLERANCE * 6.0 && rest <= ORACLE_TOLERANCE,
        seconds: None,
    });
    report.notes.push(format!(
        "truncated NS Fock space of two bosons and two fermions, degree ≤ {}, dimension {}",
        fmt_rational(&BigRational::new((cutoff2 as i64).into(), 2.into())),
        space.dim()
    ));
    report.notes.push("W_(3)W = 3!·(c/12) = c/2 with c = 12; the λ³ coefficient of [W_λ W] is c/12 = 1".into());
    Ok(report)
}
