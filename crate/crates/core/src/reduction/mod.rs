//! The reduced algebra `V_{k+1/2}(g_≤) ⊗ F(g_{1/2})`, the generators G, L, W,
//! U of the W-algebra, and the check that they close on SW(3/2,2) with
//! `c = 6 + 18k`.

pub mod formulas;
mod liealg;
mod report;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub use liealg::{verify_liealg, EIGENSPACE_TABLE};
pub use report::{write_atomic, Entry, ReportError, VerificationReport};

use crate::coeffring::{fmt_rational, Branch, CoeffError, Scalar};
use crate::expr::{parse_with, ParseError};
use crate::superlie::{LieError, Osp32};
use crate::vertexcore::{
    fmt_lambda_poly, fmt_state, AlgebraConfig, Engine, LambdaPoly, Monomial, Parity, State, StateContext,
    VertexAlgebra, VertexError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("formula {name}: {msg}")]
    Formula { name: String, msg: String },
    #[error("level k = {k} is degenerate: {why}")]
    DegenerateLevel { k: String, why: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All currents of `g_≤`.
    Full,
    /// Only the Cartan currents.
    Free,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Free => "free",
        }
    }
}

/// Fermion names and the basis vectors of `g_{1/2}` they stand for.
const FERMIONS: [(&str, &str); 2] = [("\\Phi_{-1}", "f1"), ("\\Phi_{12}", "e12")];
const DUALS: [&str; 2] = ["\\Phi^{-1}", "\\Phi^{12}"];

pub struct Setup {
    pub mode: Mode,
    pub algebra: Arc<VertexAlgebra>,
}

/// Currents of `g_≤` (or of `h`) at level `k+1/2` with the ad-x shifted
/// weights, and the neutral fermions on `g_{1/2}` with
/// `<Φ_a|Φ_b> = (f|[a,b])` and their duals.
pub fn setup_config(mode: Mode) -> Result<AlgebraConfig, ReductionError> {
    let osp = Osp32::new()?;
    let g = &osp.g;
    let subset = match mode {
        Mode::Full => osp.grading.non_positive(),
        Mode::Free => osp.grading.basis_in(0),
    };
    let mut cfg = g.affine_config(&subset, "k+1/2", Some(&osp.grading))?;
    cfg.name = Some(format!("osp(3|2) reduction, {} mode", mode.as_str()));
    for (name, _) in FERMIONS {
        cfg.generator(name, Parity::Odd, "1/2");
    }
    let idx: Vec<usize> = FERMIONS.iter().map(|(_, v)| g.index(v)).collect::<Result<_, _>>()?;
    let mut gram = [[BigRational::zero(), BigRational::zero()], [BigRational::zero(), BigRational::zero()]];
    for i in 0..2 {
        for j in 0..2 {
            let br = g.bracket(&g.unit(idx[i]), &g.unit(idx[j]));
            gram[i][j] = g.form(&osp.f, &br);
        }
    }
    for i in 0..2 {
        for j in i..2 {
            if !gram[i][j].is_zero() {
                cfg.bracket(FERMIONS[i].0, FERMIONS[j].0, &fmt_rational(&gram[i][j]));
            }
        }
    }
    let det = &gram[0][0] * &gram[1][1] - &gram[0][1] * &gram[1][0];
    if det.is_zero() {
        return Err(LieError::ConstructionInconsistent("neutral form on g_1/2 is degenerate".into()).into());
    }
    let inv = [
        [&gram[1][1] / &det, -&gram[0][1] / &det],
        [-&gram[1][0] / &det, &gram[0][0] / &det],
    ];
    for (i, dual) in DUALS.iter().enumerate() {
        let terms: Vec<String> = (0..2)
            .filter(|&j| !inv[i][j].is_zero())
            .map(|j| format!("({})*{}", fmt_rational(&inv[i][j]), FERMIONS[j].0))
            .collect();
        cfg.alias(dual, &terms.join(" + "));
    }
    Ok(cfg)
}

pub fn build_setup(mode: Mode) -> Result<Setup, ReductionError> {
    let cfg = setup_config(mode)?;
    Ok(Setup {
        mode,
        algebra: Arc::new(cfg.build()?),
    })
}

/// G, L, W, U as states of one setup.
#[derive(Clone, Debug)]
pub struct Quadruple {
    pub mode: Mode,
    pub algebra: Arc<VertexAlgebra>,
    pub g: State<Scalar>,
    pub l: State<Scalar>,
    pub w: State<Scalar>,
    pub u: State<Scalar>,
    /// Whether U is the negative of the printed formula, chosen so that
    /// `[G_λ W] = U`.
    pub u_flipped: bool,
}

impl Quadruple {
    pub fn get(&self, name: &str) -> Option<&State<Scalar>> {
        match name {
            "G" => Some(&self.g),
            "L" => Some(&self.l),
            "W" => Some(&self.w),
            "U" => Some(&self.u),
            _ => None,
        }
    }

    pub fn symbols(&self) -> HashMap<String, State<Scalar>> {
        ["G", "L", "W", "U"]
            .iter()
            .map(|n| (n.to_string(), self.get(n).expect("known name").clone()))
            .collect()
    }

    pub fn fmt(&self, name: &str) -> String {
        fmt_state(self.algebra.names(), self.get(name).expect("known name"))
    }
}

/// The strong generators before normalization: `J^{e_1-f_12}`, `J^{f_2}`,
/// `J^{f_1122}`.
#[derive(Clone, Debug)]
pub struct Auxiliary {
    pub j_e1_f12: State<Scalar>,
    pub j_f2: State<Scalar>,
    pub j_f1122: State<Scalar>,
    pub a: Scalar,
    pub a1: Scalar,
    pub a2: Scalar,
}

/// Parse a printed formula into a state of `engine`'s algebra.
pub fn parse_formula(engine: &Engine<Scalar>, name: &str, text: &str) -> Result<State<Scalar>, ReductionError> {
    let ctx = StateContext::with_engine(engine);
    let v = parse_with(&formulas::prepare(name, text), &ctx).map_err(|e| ReductionError::Formula {
        name: name.into(),
        msg: e.to_string(),
    })?;
    if v.degree().unwrap_or(0) > 0 {
        return Err(ReductionError::Formula {
            name: name.into(),
            msg: "contains λ".into(),
        });
    }
    Ok(v.coeff(0))
}

fn check_weight(engine: &Engine<Scalar>, name: &str, s: &State<Scalar>, weight2: u32) -> Result<(), ReductionError> {
    let w = engine.weights2(s);
    if w != [weight2] {
        let shown: Vec<String> = w.iter().map(|x| fmt_rational(&BigRational::new((*x as i64).into(), 2.into()))).collect();
        return Err(ReductionError::Formula {
            name: name.into(),
            msg: format!(
                "expected weight {}, found {}",
                fmt_rational(&BigRational::new((weight2 as i64).into(), 2.into())),
                shown.join(", ")
            ),
        });
    }
    Ok(())
}

fn parse_scalar(text: &str) -> Result<Scalar, ReductionError> {
    Ok(crate::expr::parse_scalar(text)?)
}

pub fn auxiliary(engine: &Engine<Scalar>) -> Result<Auxiliary, ReductionError> {
    let j_e1_f12 = parse_formula(engine, "J^{e_1-f_12}", formulas::J_E1_MINUS_F12)?;
    let j_f2 = parse_formula(engine, "J^{f_2}", formulas::J_F2)?;
    let j_f1122 = parse_formula(engine, "J^{f_1122}", formulas::J_F1122)?;
    check_weight(engine, "J^{e_1-f_12}", &j_e1_f12, 3)?;
    check_weight(engine, "J^{f_2}", &j_f2, 4)?;
    check_weight(engine, "J^{f_1122}", &j_f1122, 4)?;
    Ok(Auxiliary {
        j_e1_f12,
        j_f2,
        j_f1122,
        a: parse_scalar(formulas::A)?,
        a1: parse_scalar(formulas::A1)?,
        a2: parse_scalar(formulas::A2)?,
    })
}

fn printed(engine: &Engine<Scalar>, prefix: &str, texts: [&str; 4]) -> Result<[State<Scalar>; 4], ReductionError> {
    let names = ["G", "L", "W", "U"];
    let weights = [3, 4, 4, 5];
    let mut out: Vec<State<Scalar>> = Vec::new();
    for i in 0..4 {
        let key = format!("{prefix} {}", names[i]);
        let s = parse_formula(engine, &key, texts[i])?;
        check_weight(engine, &key, &s, weights[i])?;
        out.push(s);
    }
    Ok(out.try_into().expect("four states"))
}

pub const FULL_TEXTS: [&str; 4] = [formulas::FULL_G, formulas::FULL_L, formulas::FULL_W, formulas::FULL_U];
pub const FREE_TEXTS: [&str; 4] = [formulas::FREE_G, formulas::FREE_L, formulas::FREE_W, formulas::FREE_U];

/// Drop every monomial containing a generator that `target` lacks, and
/// re-index the rest. This is the map induced by `g_≤ → g_0`.
pub fn project(from: &VertexAlgebra, target: &VertexAlgebra, s: &State<Scalar>) -> State<Scalar> {
    let map: Vec<Option<u16>> = from
        .generators()
        .iter()
        .map(|g| target.names().id(&g.name))
        .collect();
    let mut out = State::zero();
    'terms: for (m, c) in s.terms() {
        let mut factors = Vec::with_capacity(m.len());
        for f in m.factors() {
            match map[f.gen as usize] {
                Some(id) => factors.push(crate::vertexcore::Factor::new(id, f.deriv)),
                None => continue 'terms,
            }
        }
        out.add_term(Monomial::from_factors(&factors), c.clone());
    }
    out
}

/// The printed generators. In free mode G, W and U are the printed
/// free-field formulas and `L = G_(0)G / 2`; the printed free-field L uses
/// `J^{(e_1)}`, which the free-field algebra does not have.
pub fn build_generators(setup: &Setup) -> Result<Quadruple, ReductionError> {
    let engine = Engine::symbolic(setup.algebra.clone());
    let (g, l, w, u) = match setup.mode {
        Mode::Full => {
            let [g, l, w, u] = printed(&engine, "full", FULL_TEXTS)?;
            (g, l, w, u)
        }
        Mode::Free => {
            let g = parse_formula(&engine, "free G", formulas::FREE_G)?;
            let w = parse_formula(&engine, "free W", formulas::FREE_W)?;
            let u = parse_formula(&engine, "free U", formulas::FREE_U)?;
            check_weight(&engine, "G", &g, 3)?;
            check_weight(&engine, "W", &w, 4)?;
            check_weight(&engine, "U", &u, 5)?;
            let l = engine.nth_product(&g, 0, &g).scale_ratio(&BigRational::new(1.into(), 2.into()));
            (g, l, w, u)
        }
    };
    let gw = engine.bracket(&g, &w);
    let u_flipped = gw.degree() == Some(0) && gw.coeff(0).add(&u).is_zero();
    let u = if u_flipped { u.neg() } else { u };
    Ok(Quadruple {
        mode: setup.mode,
        algebra: setup.algebra.clone(),
        g,
        l,
        w,
        u,
        u_flipped,
    })
}

pub fn quadruple(mode: Mode) -> Result<Quadruple, ReductionError> {
    build_generators(&build_setup(mode)?)
}

/// An identity `computed = expected` between λ-polynomials.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    /// The right-hand side as printed, when there is one.
    pub source: Option<String>,
    pub computed: LambdaPoly<Scalar>,
    pub expected: LambdaPoly<Scalar>,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.computed.sub(&self.expected).is_zero()
    }
}

fn parse_target(engine: &Engine<Scalar>, symbols: &HashMap<String, State<Scalar>>, text: &str) -> Result<LambdaPoly<Scalar>, ReductionError> {
    let ctx = StateContext::with_engine(engine).symbols(symbols);
    parse_with(&formulas::expand_operator_form(text), &ctx).map_err(|e| ReductionError::Formula {
        name: "target".into(),
        msg: e.to_string(),
    })
}

/// Right-hand sides of the SW(3/2,2) brackets evaluated on `quad`.
pub fn targets(quad: &Quadruple) -> Result<Vec<(String, String, String, LambdaPoly<Scalar>)>, ReductionError> {
    let engine = Engine::symbolic(quad.algebra.clone());
    let symbols = quad.symbols();
    formulas::TARGETS
        .iter()
        .map(|(name, a, b, text)| {
            Ok((
                name.to_string(),
                a.to_string(),
                b.to_string(),
                parse_target(&engine, &symbols, text)?,
            ))
        })
        .collect()
}

fn run_parallel<T: Send>(jobs: Vec<Box<dyn FnOnce() -> T + Send + '_>>) -> Vec<T> {
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs.into_iter().map(|j| s.spawn(j)).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Compute every SW(3/2,2) bracket on `quad` and pair it with its target.
pub fn sw32_identities(quad: &Quadruple) -> Result<Vec<(Identity, f64)>, ReductionError> {
    let targets = targets(quad)?;
    let jobs: Vec<Box<dyn FnOnce() -> (LambdaPoly<Scalar>, f64) + Send + '_>> = targets
        .iter()
        .map(|(_, a, b, _)| {
            let (a, b) = (quad.get(a).expect("symbol").clone(), quad.get(b).expect("symbol").clone());
            let alg = quad.algebra.clone();
            Box::new(move || {
                let t = Instant::now();
                let e = Engine::symbolic(alg);
                let p = e.bracket(&a, &b);
                (p, t.elapsed().as_secs_f64())
            }) as Box<dyn FnOnce() -> _ + Send>
        })
        .collect();
    let computed = run_parallel(jobs);
    let texts: HashMap<&str, &str> = formulas::TARGETS.iter().map(|(n, _, _, t)| (*n, *t)).collect();
    Ok(targets
        .into_iter()
        .zip(computed)
        .map(|((name, _, _, expected), (computed, secs))| {
            let source = texts.get(name.as_str()).map(|s| s.to_string());
            (
                Identity {
                    name,
                    source,
                    computed,
                    expected,
                },
                secs,
            )
        })
        .collect())
}

/// Primary-field conditions and the normalization of W.
pub fn primary_identities(quad: &Quadruple) -> Result<Vec<Identity>, ReductionError> {
    let engine = Engine::symbolic(quad.algebra.clone());
    let symbols = quad.symbols();
    let mut out = Vec::new();
    for (x, weight) in formulas::PRIMARIES {
        let text = format!(r"\partial {x} + {weight}\lambda {x}");
        out.push(Identity {
            name: format!("[L_λ {x}]"),
            source: Some(text.clone()),
            computed: engine.bracket(&quad.l, quad.get(x).expect("symbol")),
            expected: parse_target(&engine, &symbols, &text)?,
        });
    }
    for j in 1..=3 {
        out.push(Identity {
            name: format!("G_({j})W"),
            source: Some("0".into()),
            computed: LambdaPoly::constant(engine.nth_product(&quad.g, j, &quad.w)),
            expected: LambdaPoly::zero(),
        });
    }
    out.push(Identity {
        name: "λ^3 coefficient of [W_λ W]".into(),
        source: Some(r"\frac{c}{12}".into()),
        computed: LambdaPoly::constant(engine.bracket(&quad.w, &quad.w).coeff(3)),
        expected: LambdaPoly::constant(State::scalar(Scalar::central_charge().scale(&BigRational::new(1.into(), 12.into())))),
    });
    out.push(Identity {
        name: "W_(3)W".into(),
        source: Some(r"\frac{c}{12}".into()),
        computed: LambdaPoly::constant(engine.nth_product(&quad.w, 3, &quad.w)),
        expected: LambdaPoly::constant(State::scalar(Scalar::central_charge().scale(&BigRational::new(1.into(), 12.into())))),
    });
    Ok(out)
}

/// Consistency of the printed data: the normalizations `G = a J`,
/// `W = a_1 J + a_2 J`, `L = G_(0)G / 2`, and (for free mode) agreement of
/// the printed free-field formulas with the projection of the full ones.
pub fn formula_identities(mode: Mode) -> Result<Vec<Identity>, ReductionError> {
    let full = build_setup(Mode::Full)?;
    let fe = Engine::symbolic(full.algebra.clone());
    let [g, l, w, u] = printed(&fe, "full", FULL_TEXTS)?;
    let aux = auxiliary(&fe)?;
    let st = |s: State<Scalar>| LambdaPoly::constant(s);
    let mut out = Vec::new();
    match mode {
        Mode::Full => {
            out.push(Identity {
                name: "G = a J^{e_1-f_12}".into(),
                source: None,
                computed: st(g.clone()),
                expected: st(aux.j_e1_f12.scale(&aux.a)),
            });
            out.push(Identity {
                name: "W = a_1 J^{f_2} + a_2 J^{f_1122}".into(),
                source: None,
                computed: st(w.clone()),
                expected: st(aux.j_f2.scale(&aux.a1).add(&aux.j_f1122.scale(&aux.a2))),
            });
            let verbatim = parse_formula(&fe, "printed L", formulas::FULL_L)?;
            out.push(Identity {
                name: "printed L, before the ∂J^{(h_1)} fix, = G_(0)G/2".into(),
                source: None,
                computed: st(verbatim),
                expected: st(fe.nth_product(&g, 0, &g).scale_ratio(&BigRational::new(1.into(), 2.into()))),
            });
            out.push(Identity {
                name: "L = G_(0)G/2".into(),
                source: None,
                computed: st(l.clone()),
                expected: st(fe.nth_product(&g, 0, &g).scale_ratio(&BigRational::new(1.into(), 2.into()))),
            });
        }
        Mode::Free => {
            let free = build_setup(Mode::Free)?;
            let pe = Engine::symbolic(free.algebra.clone());
            // The printed free-field formulas parsed in the full algebra so
            // that stray non-Cartan currents are visible, then projected.
            let pf = printed(&fe, "free", FREE_TEXTS)?;
            let names = ["G", "L", "W", "U"];
            for (i, full_state) in [&g, &l, &w, &u].into_iter().enumerate() {
                let kept: State<Scalar> = {
                    let mut s = State::zero();
                    for (m, c) in pf[i].terms() {
                        if project(&full.algebra, &free.algebra, &State::term(m.clone(), Scalar::one())).is_zero() {
                            continue;
                        }
                        s.add_term(m.clone(), c.clone());
                    }
                    s
                };
                let dropped = pf[i].sub(&kept);
                out.push(Identity {
                    name: format!("printed free {}: only Cartan currents", names[i]),
                    source: None,
                    computed: st(dropped),
                    expected: LambdaPoly::zero(),
                });
                out.push(Identity {
                    name: format!("printed free {} = projection of full {}", names[i], names[i]),
                    source: None,
                    computed: st(project(&full.algebra, &free.algebra, &pf[i])),
                    expected: st(project(&full.algebra, &free.algebra, full_state)),
                });
            }
            let fg = project(&full.algebra, &free.algebra, &g);
            let printed_l = project(&full.algebra, &free.algebra, &pf[1]);
            out.push(Identity {
                name: "printed free L = G_(0)G/2".into(),
                source: None,
                computed: st(printed_l),
                expected: st(pe.nth_product(&fg, 0, &fg).scale_ratio(&BigRational::new(1.into(), 2.into()))),
            });
        }
    }
    Ok(out)
}

fn report_for(title: &str, mode: Mode, algebra: &VertexAlgebra, ids: &[(Identity, Option<f64>)]) -> VerificationReport {
    let mut r = VerificationReport::new(title, mode.as_str(), None);
    for (id, secs) in ids {
        r.push_identity(algebra.names(), id, *secs);
    }
    r
}

pub fn verify_sw32(quad: &Quadruple) -> Result<VerificationReport, ReductionError> {
    let ids: Vec<(Identity, Option<f64>)> = sw32_identities(quad)?.into_iter().map(|(i, s)| (i, Some(s))).collect();
    let mut r = report_for("SW(3/2,2) brackets", quad.mode, &quad.algebra, &ids);
    sign_note(quad, &mut r);
    Ok(r)
}

fn sign_note(quad: &Quadruple, r: &mut VerificationReport) {
    if quad.u_flipped {
        r.notes.push("U is minus the printed formula: the printed U gives [G_λ W] = -U".into());
    }
}

pub fn verify_primary(quad: &Quadruple) -> Result<VerificationReport, ReductionError> {
    let ids: Vec<(Identity, Option<f64>)> = primary_identities(quad)?.into_iter().map(|i| (i, None)).collect();
    let mut r = report_for("primary fields and normalization", quad.mode, &quad.algebra, &ids);
    sign_note(quad, &mut r);
    if !r.identity_pass("W_(3)W") && r.identity_pass("λ^3 coefficient of [W_λ W]") {
        r.notes.push(
            "W_(3)W = 3! times the λ^3 coefficient of [W_λ W]; the λ^3 coefficient is c/12 as in the \
             SW(3/2,2) brackets, so W_(3)W = c/2 and the pin W_(3)W = c/12 cannot hold with the same W"
                .into(),
        );
    }
    Ok(r)
}

/// Consistency of the printed formulas with each other.
pub fn verify_formulas(mode: Mode) -> Result<VerificationReport, ReductionError> {
    let full = build_setup(Mode::Full)?;
    let ids: Vec<(Identity, Option<f64>)> = formula_identities(mode)?.into_iter().map(|i| (i, None)).collect();
    let mut r = report_for("printed formulas", mode, &full.algebra, &ids);
    if mode == Mode::Free {
        r.notes.push(
            "the printed free-field L contains :\\Phi^{12}J^{(e_1)}: and has +:J^{(h_1)}J^{(h_1)}: where the \
             projection of the full L has -:J^{(h_1)}J^{(h_1)}:; free mode uses L = G_(0)G/2"
                .into(),
        );
    }
    Ok(r)
}

/// Levels where a coefficient of the printed generators or targets is
/// singular.
pub fn degenerate_levels() -> Vec<(BigRational, &'static str)> {
    vec![
        (BigRational::new(1.into(), 2.into()), "1-2k vanishes"),
        (BigRational::new((-1).into(), 2.into()), "1+2k vanishes"),
        (BigRational::new((-1).into(), 3.into()), "1+3k vanishes"),
        (BigRational::new((-5).into(), 8.into()), "5+8k vanishes"),
    ]
}

pub fn check_level(k: &BigRational) -> Result<(), ReductionError> {
    for (bad, why) in degenerate_levels() {
        if *k == bad {
            return Err(ReductionError::DegenerateLevel {
                k: fmt_rational(k),
                why: why.into(),
            });
        }
    }
    Ok(())
}

/// `c = 6 + 18k`.
pub fn central_charge_at(k: &BigRational) -> BigRational {
    BigRational::from_integer(6.into()) + BigRational::from_integer(18.into()) * k
}

/// Relative tolerance for numeric comparisons.
pub const NUMERIC_TOLERANCE: f64 = 1e-12;

fn numeric_close(a: &State<Complex64>, b: &State<Complex64>) -> (bool, f64) {
    let diff = a.sub(b);
    let scale = a
        .terms()
        .chain(b.terms())
        .map(|(_, c)| c.norm())
        .fold(1.0f64, f64::max);
    let err = diff.terms().map(|(_, c)| c.norm()).fold(0.0f64, f64::max);
    (err <= NUMERIC_TOLERANCE * scale, err / scale)
}

/// The SW(3/2,2) check with the engine running in complex arithmetic at a
/// fixed `k` (principal branch).
pub fn verify_sw32_at(quad: &Quadruple, k: &BigRational) -> Result<VerificationReport, ReductionError> {
    check_level(k)?;
    let targets = targets(quad)?;
    let engine = Engine::numeric(quad.algebra.clone(), k, Branch::principal())?;
    let mut r = VerificationReport::new("SW(3/2,2) brackets", quad.mode.as_str(), Some(fmt_rational(k)));
    r.central_charge = Some(fmt_rational(&central_charge_at(k)));
    sign_note(quad, &mut r);
    let symbolic: HashMap<String, LambdaPoly<Scalar>> =
        sw32_identities(quad)?.into_iter().map(|(id, _)| (id.name, id.computed)).collect();
    for (name, a, b, expected) in &targets {
        let t = Instant::now();
        let a = engine.convert_state(quad.get(a).expect("symbol"))?;
        let b = engine.convert_state(quad.get(b).expect("symbol"))?;
        let computed = engine.bracket(&a, &b);
        let expected = engine.convert_poly(expected)?;
        let secs = t.elapsed().as_secs_f64();
        let n = computed.coeffs().len().max(expected.coeffs().len()).max(1);
        for j in 0..n {
            let (c, e) = (computed.coeff(j), expected.coeff(j));
            if c.is_zero() && e.is_zero() && n > 1 {
                continue;
            }
            let (pass, _) = numeric_close(&c, &e);
            r.entries.push(Entry {
                identity: name.clone(),
                lambda_power: j,
                expected: fmt_state(quad.algebra.names(), &e),
                computed: fmt_state(quad.algebra.names(), &c),
                difference: fmt_state(quad.algebra.names(), &c.sub(&e)),
                pass,
                seconds: Some(secs),
            });
        }
        let sym = engine.convert_poly(&symbolic[name])?;
        let mut worst = 0.0f64;
        let mut agree = true;
        for j in 0..computed.coeffs().len().max(sym.coeffs().len()) {
            let (ok, err) = numeric_close(&computed.coeff(j), &sym.coeff(j));
            agree &= ok;
            worst = worst.max(err);
        }
        r.entries.push(Entry {
            identity: format!("{name}: symbolic result evaluated at k = numeric result"),
            lambda_power: 0,
            expected: "agreement ≤ 1e-12 relative".into(),
            computed: format!("max relative difference {worst:.1e}"),
            difference: String::new(),
            pass: agree,
            seconds: None,
        });
    }
    Ok(r)
}

/// Five sample levels for the numeric pre-check, away from the degenerate
/// ones.
pub fn sample_levels() -> Vec<BigRational> {
    [(1, 3), (1, 1), (2, 1), (-1, 5), (7, 4)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

/// Evaluate every symbolic identity at `k = 1/3`, where `c = 12`.
pub fn spin7_instance(quad: &Quadruple) -> Result<VerificationReport, ReductionError> {
    let k = BigRational::new(1.into(), 3.into());
    let mut r = VerificationReport::new("Spin(7) point k = 1/3", quad.mode.as_str(), Some(fmt_rational(&k)));
    let c = Scalar::central_charge().eval_at(&k)?;
    r.entries.push(Entry {
        identity: "c(1/3)".into(),
        lambda_power: 0,
        expected: "12".into(),
        computed: fmt_complex(c),
        difference: fmt_complex(c - Complex64::new(12.0, 0.0)),
        pass: (c - Complex64::new(12.0, 0.0)).norm() <= NUMERIC_TOLERANCE * 12.0,
        seconds: None,
    });
    for (name, text) in [("1-2k", "1-2k"), ("5+8k", "5+8k"), ("1+2k", "1+2k"), ("1+3k", "1+3k")] {
        let v = crate::expr::parse_scalar(text)?.eval_at(&k)?;
        r.entries.push(Entry {
            identity: format!("radicand {name}"),
            lambda_power: 0,
            expected: "nonzero".into(),
            computed: fmt_complex(v),
            difference: "-".into(),
            pass: v.norm() > 0.0,
            seconds: None,
        });
    }
    let ids: Vec<Identity> = sw32_identities(quad)?.into_iter().map(|(i, _)| i).collect();
    for id in &ids {
        let n = id.computed.coeffs().len().max(id.expected.coeffs().len());
        for j in 0..n {
            let (c, e) = (id.computed.coeff(j), id.expected.coeff(j));
            if c.is_zero() && e.is_zero() {
                continue;
            }
            let cn = c.map_coeffs(|s| s.eval_at(&k))?;
            let en = e.map_coeffs(|s| s.eval_at(&k))?;
            let (pass, _) = numeric_close(&cn, &en);
            r.entries.push(Entry {
                identity: id.name.clone(),
                lambda_power: j,
                expected: fmt_state(quad.algebra.names(), &en),
                computed: fmt_state(quad.algebra.names(), &cn),
                difference: fmt_state(quad.algebra.names(), &cn.sub(&en)),
                pass,
                seconds: None,
            });
        }
    }
    Ok(r)
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

pub fn fmt_poly(quad: &Quadruple, p: &LambdaPoly<Scalar>) -> String {
    fmt_lambda_poly(quad.algebra.names(), p)
}
