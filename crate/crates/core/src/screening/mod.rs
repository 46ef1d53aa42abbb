//! Exponential vertex operators `Γ_β` over the Heisenberg algebra of the
//! Cartan currents, the screening operators `Q_1 = :Φ_{-1}Γ_{α_1/ν}:` and
//! `Q_2 = Γ_{-α_2/ν}`, and the check that G, L, W, U lie in the kernel of
//! their zero modes.
//!
//! A charged state `P·Γ_β` is stored as its polynomial part `P`, a state of
//! the free-field algebra, read as the creation modes of `P` applied to the
//! highest weight vector `|β⟩`. Neutral states act on it through the mode
//! expansion of normally ordered products, and `x_(0)|β⟩ = β(x)|β⟩`.

mod fock;

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use fock::{from_fock, to_fock, FockVec, ModeAlgebra};

use crate::coeffring::{fmt_rational, CoeffError, Scalar};
use crate::reduction::{check_level, fmt_complex, quadruple, Entry, Mode, Quadruple, ReductionError, VerificationReport};
use crate::superlie::{LieError, Osp32};
use crate::vertexcore::{
    fmt_state, skew_transform, Engine, Factor, GenId, LambdaPoly, Monomial, Parity, State, VertexError,
};

#[derive(Debug, Error)]
pub enum ScreeningError {
    #[error("products of two charged states are not supported ({left} with {right})")]
    UnsupportedChargePair { left: String, right: String },
    #[error("charges differ: {0} and {1}")]
    ChargeMismatch(String, String),
    #[error("not a free-field algebra: {0}")]
    NotFreeField(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// `β = (n_1 α_1 + n_2 α_2)/ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct Charge {
    pub label: String,
    pub root_coords: [BigRational; 2],
    /// Eigenvalue of `x_(0)` on `|β⟩` for every generator `x`; nonzero only
    /// on the Cartan currents, where it is `[J^{(h_i)}_λ Γ_β]`.
    pub zero_modes: Vec<Scalar>,
    /// The Heisenberg field `h_β` with `∂Γ_β = :h_β Γ_β:`.
    pub dual: State<Scalar>,
}

impl Charge {
    pub fn is_zero(&self) -> bool {
        self.root_coords.iter().all(|c| c.is_zero())
    }
}

/// `P·Γ_β`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargedState {
    pub charge: Charge,
    pub poly: State<Scalar>,
}

impl ChargedState {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// A λ-polynomial whose coefficients all carry the same charge.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargedPoly {
    pub charge: Charge,
    pub poly: LambdaPoly<Scalar>,
}

impl ChargedPoly {
    pub fn coeff(&self, j: usize) -> ChargedState {
        ChargedState {
            charge: self.charge.clone(),
            poly: self.poly.coeff(j),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScreeningOperator {
    pub name: String,
    pub state: ChargedState,
    pub parity: Parity,
}

/// The free-field algebra `V_{k+1/2}(h) ⊗ F(g_{1/2})` with the free-field
/// G, L, W, U and the lattice data needed for `Γ_β`.
pub struct FreeField {
    pub quad: Quadruple,
    engine: Engine<Scalar>,
    modes: ModeAlgebra,
    /// `cartan[i][j] = (h_i|h_j)`.
    pub cartan: [[BigRational; 2]; 2],
    /// `roots[j][i] = α_j(h_i)`, read off `[h_i, e_j] = α_j(h_i) e_j`.
    pub roots: [[BigRational; 2]; 2],
    heis: [GenId; 2],
    level: Scalar,
}

fn two_by_two_solve(a: &[[BigRational; 2]; 2], v: &[BigRational; 2]) -> Option<[BigRational; 2]> {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    if det.is_zero() {
        return None;
    }
    Some([
        (&a[1][1] * &v[0] - &a[0][1] * &v[1]) / &det,
        (&a[0][0] * &v[1] - &a[1][0] * &v[0]) / &det,
    ])
}

impl FreeField {
    pub fn new() -> Result<Self, ScreeningError> {
        let quad = quadruple(Mode::Free)?;
        let osp = Osp32::new()?;
        let g = &osp.g;
        let alg = quad.algebra.clone();
        let h = [g.index("h1")?, g.index("h2")?];
        let e = [g.index("e1")?, g.index("e2")?];
        let mut cartan = [[BigRational::zero(), BigRational::zero()], [BigRational::zero(), BigRational::zero()]];
        let mut roots = cartan.clone();
        for i in 0..2 {
            for j in 0..2 {
                cartan[i][j] = g.basis_form(h[i], h[j]).clone();
                let br = g.bracket(&g.unit(h[i]), &g.unit(e[j]));
                let c = br[e[j]].clone();
                let mut expect = g.unit(e[j]);
                for x in expect.iter_mut() {
                    *x *= &c;
                }
                if br != expect {
                    return Err(LieError::ConstructionInconsistent(format!("e_{} is not a root vector", j + 1)).into());
                }
                roots[j][i] = c;
            }
        }
        let heis = [alg.id(&g.current_name(h[0]))?, alg.id(&g.current_name(h[1]))?];

        let n = alg.len();
        let mut central = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let p = alg.base_bracket(a as GenId, b as GenId);
                let mut row = Vec::new();
                for s in p.coeffs() {
                    if s.terms().any(|(m, _)| !m.is_vacuum()) {
                        return Err(ScreeningError::NotFreeField(format!(
                            "[{}_λ {}] is not central",
                            alg.generator(a as GenId).name,
                            alg.generator(b as GenId).name
                        )));
                    }
                    row.push(s.vacuum_part().cloned().unwrap_or_else(Scalar::zero));
                }
                central[a][b] = row;
            }
        }
        let modes = ModeAlgebra {
            odd: (0..n).map(|i| alg.names().is_odd(i as GenId)).collect(),
            weight2: (0..n).map(|i| alg.names().monomial_weight2(&Monomial::single(Factor::new(i as GenId, 0)))).collect(),
            central,
        };
        let kappa = &central_at(&modes, heis[0], heis[0]);
        let level = if cartan[0][0].is_zero() {
            central_at(&modes, heis[0], heis[1]).scale(&cartan[0][1].recip())
        } else {
            kappa.scale(&cartan[0][0].recip())
        };
        Ok(FreeField {
            engine: Engine::symbolic(alg),
            quad,
            modes,
            cartan,
            roots,
            heis,
            level,
        })
    }

    pub fn engine(&self) -> &Engine<Scalar> {
        &self.engine
    }

    /// `k + 1/2`, read off the Heisenberg brackets.
    pub fn level(&self) -> &Scalar {
        &self.level
    }

    /// `ν = 1/√(k+1/2)`.
    pub fn nu(&self) -> Result<Scalar, ScreeningError> {
        Ok(self.level.sqrt()?.inv()?)
    }

    /// `J^{(h_i)}`, for `i` = 1, 2.
    pub fn current(&self, i: usize) -> State<Scalar> {
        State::factor(Factor::new(self.heis[i - 1], 0))
    }

    /// `b_i = ν J^{(h_i)}`, with `[b_i λ b_j] = λ (h_i|h_j)`.
    pub fn rescaled_current(&self, i: usize) -> Result<State<Scalar>, ScreeningError> {
        Ok(self.current(i).scale(&self.nu()?))
    }

    /// `Γ_β` for `β = (n_1 α_1 + n_2 α_2)/ν`, with `h*` identified with `h`
    /// through the level form `(k+1/2)(·|·)` of `V_{k+1/2}(h)`: then
    /// `(b_i|β) = ν (n_1 α_1 + n_2 α_2)(h_i)`, i.e.
    /// `[J^{(h_i)}_λ Γ_β] = (n_1 α_1 + n_2 α_2)(h_i)`.
    pub fn charge(&self, label: &str, n: [BigRational; 2]) -> Charge {
        self.charge_scaled(label, n, &Scalar::one())
    }

    /// As [`charge`](Self::charge) but with `[J^{(h_i)}_λ Γ_β] = scale·(n_1 α_1 + n_2 α_2)(h_i)`.
    /// `scale = k+1/2` is the identification through the bare form `(·|·)`.
    pub fn charge_scaled(&self, label: &str, n: [BigRational; 2], scale: &Scalar) -> Charge {
        let on_h: [BigRational; 2] = [0, 1].map(|i| &n[0] * &self.roots[0][i] + &n[1] * &self.roots[1][i]);
        let mut zero_modes = vec![Scalar::zero(); self.modes.odd.len()];
        for i in 0..2 {
            zero_modes[self.heis[i] as usize] = scale.scale(&on_h[i]);
        }
        // h_β = κ^{-1} β with κ = (k+1/2)(h_i|h_j) the Heisenberg Gram matrix
        let t = two_by_two_solve(&self.cartan, &on_h).expect("Cartan form is nondegenerate");
        let ratio = scale.div(&self.level).expect("level is nonzero");
        let mut dual = State::zero();
        for i in 0..2 {
            dual.add_scaled(&self.current(i + 1), &ratio.scale(&t[i]));
        }
        Charge {
            label: label.into(),
            root_coords: n,
            zero_modes,
            dual,
        }
    }

    pub fn zero_charge(&self) -> Charge {
        self.charge("0", [BigRational::zero(), BigRational::zero()])
    }

    pub fn gamma(&self, charge: &Charge) -> ChargedState {
        ChargedState {
            charge: charge.clone(),
            poly: State::vacuum(),
        }
    }

    /// `Q_1 = :Φ_{-1}Γ_{α_1/ν}:` and `Q_2 = Γ_{-α_2/ν}`.
    pub fn screening_operators(&self) -> Result<[ScreeningOperator; 2], ScreeningError> {
        let one = BigRational::one();
        let zero = BigRational::zero();
        let c1 = self.charge("α_1/ν", [one.clone(), zero.clone()]);
        let c2 = self.charge("-α_2/ν", [zero, -one]);
        let phi = self.quad.algebra.state("\\Phi_{-1}")?;
        Ok([
            ScreeningOperator {
                name: "Q_1".into(),
                state: ChargedState { charge: c1, poly: phi },
                parity: Parity::Odd,
            },
            ScreeningOperator {
                name: "Q_2".into(),
                state: ChargedState {
                    charge: c2,
                    poly: State::vacuum(),
                },
                parity: Parity::Even,
            },
        ])
    }

    /// `Q_2' = :Φ_{12}Γ_{-(α_1+α_2)/ν}:`, the screening operator of the
    /// simple root `α_1+α_2` (root vector `e_{12} ∈ g_{1/2}`). With `-α_1`
    /// it forms the simple system of the positive roots of `x`; `α_2` is not
    /// simple there.
    pub fn corrected_q2(&self) -> Result<ScreeningOperator, ScreeningError> {
        let m1 = -BigRational::one();
        Ok(ScreeningOperator {
            name: "Q_2'".into(),
            state: ChargedState {
                charge: self.charge("-(α_1+α_2)/ν", [m1.clone(), m1]),
                poly: self.quad.algebra.state("\\Phi_{12}")?,
            },
            parity: Parity::Odd,
        })
    }

    /// Conformal weight of `Γ_β` with respect to the free-field L: the
    /// λ-coefficient of `[L_λ Γ_β]`.
    pub fn conformal_weight(&self, x: &ChargedState) -> Scalar {
        let p = self.charged_bracket(&self.quad.l, x);
        let c1 = p.poly.coeff(1);
        if c1.is_zero() {
            return Scalar::zero();
        }
        let (m, c) = x.poly.terms().next().expect("nonzero state");
        let d = c1.coeff(m).cloned().unwrap_or_else(Scalar::zero);
        d.div(c).expect("nonzero coefficient")
    }

    fn fock(&self, x: &ChargedState) -> FockVec {
        to_fock(&self.modes, &x.poly)
    }

    fn parity_of(&self, s: &State<Scalar>) -> Parity {
        self.engine.parity(s).unwrap_or(Parity::Even)
    }

    /// `∂(P·Γ_β) = (∂P)·Γ_β + :h_β P:·Γ_β`.
    pub fn translate(&self, x: &ChargedState) -> ChargedState {
        let mut poly = self.engine.derivative(&x.poly);
        if !x.charge.is_zero() {
            poly.add_assign(&self.engine.nprod(&x.charge.dual, &x.poly));
        }
        ChargedState {
            charge: x.charge.clone(),
            poly,
        }
    }

    fn translate_n(&self, charge: &Charge, s: &State<Scalar>, n: u16) -> State<Scalar> {
        let mut x = ChargedState {
            charge: charge.clone(),
            poly: s.clone(),
        };
        for _ in 0..n {
            x = self.translate(&x);
        }
        x.poly
    }

    /// `a_(n)(P·Γ_β)` for a neutral state `a` and any integer `n`.
    pub fn act(&self, a: &State<Scalar>, n: i32, x: &ChargedState) -> ChargedState {
        let v = self.modes.apply_state(&x.charge.zero_modes, a, n, &self.fock(x));
        ChargedState {
            charge: x.charge.clone(),
            poly: from_fock(&v),
        }
    }

    /// `[a_λ (P·Γ_β)]` for neutral `a`.
    pub fn charged_bracket(&self, a: &State<Scalar>, x: &ChargedState) -> ChargedPoly {
        let v = self.fock(x);
        let top = self.modes.max_mode(a, &v);
        let mut coeffs = Vec::new();
        let mut fact = BigRational::one();
        for n in 0..=top.max(-1) {
            if n > 0 {
                fact *= BigRational::from_integer(n.into());
            }
            let w = self.modes.apply_state(&x.charge.zero_modes, a, n as i32, &v);
            coeffs.push(from_fock(&w).scale_ratio(&fact.recip()));
        }
        ChargedPoly {
            charge: x.charge.clone(),
            poly: LambdaPoly::from_coeffs(coeffs),
        }
    }

    /// `[a_λ x]` where `a` must be neutral.
    pub fn bracket_charged(&self, a: &ChargedState, x: &ChargedState) -> Result<ChargedPoly, ScreeningError> {
        if !a.charge.is_zero() && !x.charge.is_zero() {
            return Err(ScreeningError::UnsupportedChargePair {
                left: a.charge.label.clone(),
                right: x.charge.label.clone(),
            });
        }
        if !a.charge.is_zero() {
            let p = self.charged_bracket(&x.poly, a);
            let (pa, px) = (self.parity_of(&a.poly), self.parity_of(&x.poly));
            return Ok(self.skew(&p, px, pa));
        }
        Ok(self.charged_bracket(&a.poly, x))
    }

    /// `[x_λ b]` from `[b_λ x]` by skew-symmetry, `T` acting as translation
    /// on the charged states.
    fn skew(&self, p: &ChargedPoly, pb: Parity, px: Parity) -> ChargedPoly {
        let sign = if pb.is_odd() && px.is_odd() { Scalar::from_int(-1) } else { Scalar::one() };
        let charge = p.charge.clone();
        let poly = skew_transform(&p.poly, &sign, |s, r| self.translate_n(&charge, s, r));
        ChargedPoly { charge, poly }
    }

    /// `x_(n) b` for a charged `x`, a neutral `b` and `n ≥ 0`.
    pub fn charged_product(&self, x: &ChargedState, n: u32, b: &State<Scalar>) -> ChargedState {
        let p = self.charged_bracket(b, x);
        let q = self.skew(&p, self.parity_of(b), self.parity_of(&x.poly));
        let mut fact = BigRational::one();
        for i in 2..=n {
            fact *= BigRational::from_integer(i.into());
        }
        ChargedState {
            charge: x.charge.clone(),
            poly: q.poly.coeff(n as usize).scale_ratio(&fact),
        }
    }

    /// `Q_(0) a`, the λ⁰ coefficient of `[Q_λ a]`.
    pub fn zero_mode_apply(&self, q: &ScreeningOperator, a: &State<Scalar>) -> ChargedState {
        self.charged_product(&q.state, 0, a)
    }

    pub fn fmt_charged(&self, x: &ChargedState) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let gamma = format!("Γ_{{{}}}", x.charge.label);
        if x.poly.as_monomial().is_some_and(|m| m.is_vacuum()) && x.poly.vacuum_part().is_some_and(|c| c.is_one()) {
            return gamma;
        }
        let p = fmt_state(self.quad.algebra.names(), &x.poly);
        if x.poly.len() == 1 {
            format!("{p} {gamma}")
        } else {
            format!("({p}) {gamma}")
        }
    }

    /// `Q_(0) X = 0` for the printed `Q_1`, `Q_2`, the corrected `Q_2'` and
    /// X = G, L, W, U, plus negative controls. With `at_k`, residuals are
    /// evaluated there.
    pub fn kernel_suite(&self, at_k: Option<&BigRational>) -> Result<VerificationReport, ScreeningError> {
        if let Some(k) = at_k {
            check_level(k)?;
        }
        let mut report = VerificationReport::new("screening", "free", at_k.map(fmt_rational));
        let [q1, q2] = self.screening_operators()?;
        let q2c = self.corrected_q2()?;
        for q in [&q1, &q2, &q2c] {
            for x in ["G", "L", "W", "U"] {
                let r = self.zero_mode_apply(q, self.quad.get(x).expect("known name"));
                self.push(&mut report, &format!("{}(0) {x} = 0", q.name), &r, true, at_k)?;
            }
        }
        let controls = [(&q1, 1), (&q1, 2), (&q2c, 1)];
        for (q, i) in controls {
            let r = self.zero_mode_apply(q, &self.rescaled_current(i)?);
            self.push(&mut report, &format!("{}(0) b_{i} ≠ 0 (negative control)", q.name), &r, false, at_k)?;
        }
        report.notes.push(format!(
            "[J^{{(h_i)}}_λ Γ_β] for i = 1, 2: Γ_{{α_1/ν}} {}, Γ_{{-α_2/ν}} {}, Γ_{{-(α_1+α_2)/ν}} {}",
            fmt_pair(&q1.state.charge, &self.heis),
            fmt_pair(&q2.state.charge, &self.heis),
            fmt_pair(&q2c.state.charge, &self.heis),
        ));
        report.notes.push(format!(
            "conformal weights: Q_1 {}, Q_2 {}, Q_2' {}; a screening current has weight 1",
            self.conformal_weight(&q1.state),
            self.conformal_weight(&q2.state),
            self.conformal_weight(&q2c.state),
        ));
        report.notes.push(
            "the printed Q_2 = Γ_{-α_2/ν} has weight ≠ 1 for generic k, so Q_2(0) L ≠ 0; α_2 is not simple for the grading by x, whose simple roots are -α_1 and α_1+α_2; Q_2' is the screening operator of α_1+α_2".into(),
        );
        report.notes.push("Q_1(0) b_1 vanishes identically because α_1(h_1) = a_11 = 0; Q_1(0) b_2 and Q_2'(0) b_1 are the non-vacuous controls".into());
        if self.quad.u_flipped {
            report.notes.push("U is minus the printed free-field U (sign fixed by [G_λ W] = U)".into());
        }
        Ok(report)
    }

    fn push(
        &self,
        report: &mut VerificationReport,
        identity: &str,
        r: &ChargedState,
        want_zero: bool,
        at_k: Option<&BigRational>,
    ) -> Result<(), ScreeningError> {
        let (shown, zero) = self.evaluate(r, at_k)?;
        report.entries.push(Entry {
            identity: identity.into(),
            lambda_power: 0,
            expected: if want_zero { "0".into() } else { "nonzero".into() },
            computed: shown.clone(),
            difference: shown,
            pass: zero == want_zero,
            seconds: None,
        });
        Ok(())
    }

    /// The state as text and whether it vanishes, exactly or at `k`.
    fn evaluate(&self, x: &ChargedState, at_k: Option<&BigRational>) -> Result<(String, bool), ScreeningError> {
        let Some(k) = at_k else {
            return Ok((self.fmt_charged(x), x.is_zero()));
        };
        let mut terms = Vec::new();
        let mut zero = true;
        for (m, c) in x.poly.terms() {
            let z: Complex64 = c.eval_at(k)?;
            if z.norm() > crate::reduction::NUMERIC_TOLERANCE {
                zero = false;
            }
            let mono = fmt_state(self.quad.algebra.names(), &State::term(m.clone(), Scalar::one()));
            terms.push(format!("({}) {mono}", fmt_complex(z)));
        }
        let shown = if terms.is_empty() {
            "0".into()
        } else {
            format!("({}) Γ_{{{}}}", terms.join(" + "), x.charge.label)
        };
        Ok((shown, zero))
    }
}

fn central_at(m: &ModeAlgebra, a: GenId, b: GenId) -> Scalar {
    m.central[a as usize][b as usize].get(1).cloned().unwrap_or_else(Scalar::zero)
}

fn fmt_pair(c: &Charge, heis: &[GenId; 2]) -> String {
    format!(
        "({}, {})",
        c.zero_modes[heis[0] as usize],
        c.zero_modes[heis[1] as usize]
    )
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}
