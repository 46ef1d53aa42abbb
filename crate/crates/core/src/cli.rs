//! Command-line front end: verification suites, the Fock-space crosscheck and
//! dumps of the algebra data.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::coeffring::fmt_rational;
use crate::fockoracle::{self, OracleError, DEFAULT_CUTOFF};
use crate::reduction::{self, formulas, Mode, ReductionError, ReportError, VerificationReport};
use crate::screening::{FreeField, ScreeningError};
use crate::superlie::{build_osp32, LieError};
use crate::vertexcore::fmt_state;

pub const REPORT_DIR_ENV: &str = "LAMBDA_QHR_REPORT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config {path}: {msg}")]
    Config { path: String, msg: String },
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Screening(#[from] ScreeningError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Report(_) => 2,
            CliError::Reduction(ReductionError::DegenerateLevel { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lambda-qhr", version, about = "Exact λ-bracket checks for the osp(3|2) reduction")]
pub struct Cli {
    /// TOML file with defaults for mode, at_k, report_dir, cutoff, verbose.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Numeric Fock-space checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Print algebra data.
    Dump(DumpArgs),
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Evaluate at a rational level instead of symbolically.
    #[arg(long, value_name = "R")]
    pub at_k: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Compare every n-th product of basis monomials against the engine.
    Crosscheck {
        #[arg(long, value_name = "R")]
        k: String,
        /// Weight cutoff; half-integers allowed.
        #[arg(long, value_name = "N")]
        cutoff: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(clap::Args, Debug)]
pub struct DumpArgs {
    pub what: DumpWhat,
    #[arg(long, value_enum, default_value_t = DumpFormat::Text)]
    pub format: DumpFormat,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Sw32,
    Primary,
    Screening,
    Liealg,
    Oracle,
    Formulas,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Sw32 => "sw32",
            Suite::Primary => "primary",
            Suite::Screening => "screening",
            Suite::Liealg => "liealg",
            Suite::Oracle => "oracle",
            Suite::Formulas => "formulas",
            Suite::All => "all",
        }
    }

    /// The suites run by `all`, in output order.
    pub fn each() -> [Suite; 6] {
        let mut v = [
            Suite::Formulas,
            Suite::Liealg,
            Suite::Oracle,
            Suite::Primary,
            Suite::Screening,
            Suite::Sw32,
        ];
        v.sort_by_key(|s| s.name());
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Full,
    Free,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Free => Mode::Free,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpWhat {
    StructureConstants,
    Generators,
    Targets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpFormat {
    Text,
    Machine,
}

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mode: Option<ModeArg>,
    pub at_k: Option<String>,
    pub report_dir: Option<PathBuf>,
    pub cutoff: Option<toml::Value>,
    pub verbose: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let err = |msg: String| CliError::Config {
            path: path.display().to_string(),
            msg,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        let cfg: ConfigFile = toml::from_str(&text).map_err(|e| err(e.message().to_string()))?;
        if let Some(c) = &cfg.cutoff {
            let s = match c {
                toml::Value::Integer(n) => n.to_string(),
                toml::Value::Float(x) => x.to_string(),
                toml::Value::String(s) => s.clone(),
                other => return Err(err(format!("cutoff must be a number, got {other}"))),
            };
            parse_cutoff(&s).map_err(|e| err(e.to_string()))?;
        }
        Ok(cfg)
    }

    fn cutoff_text(&self) -> Option<String> {
        self.cutoff.as_ref().map(|c| match c {
            toml::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }
}

/// A fully resolved `verify` invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    pub mode: Mode,
    /// Whether the mode was chosen explicitly rather than defaulted.
    pub mode_explicit: bool,
    pub at_k: Option<BigRational>,
    pub report: Option<PathBuf>,
    pub format: Format,
    pub verbose: bool,
    /// Twice the oracle weight cutoff.
    pub cutoff2: u32,
}

pub fn parse_level(text: &str) -> Result<BigRational, CliError> {
    let k = BigRational::from_str(text.trim()).map_err(|e| CliError::Usage(format!("k = {text:?} is not a rational: {e}")))?;
    reduction::check_level(&k)?;
    Ok(k)
}

/// `N` may be an integer, a half-integer like `4.5`, or `9/2`.
pub fn parse_cutoff(text: &str) -> Result<u32, CliError> {
    let bad = || CliError::Usage(format!("cutoff {text:?} is not a non-negative half-integer"));
    let t = text.trim();
    let q = if let Some((i, f)) = t.split_once('.') {
        match f.trim_end_matches('0') {
            "" => BigRational::from_str(i).map_err(|_| bad())?,
            "5" => BigRational::from_str(&format!("{i}5/10")).map_err(|_| bad())?,
            _ => return Err(bad()),
        }
    } else {
        BigRational::from_str(t).map_err(|_| bad())?
    };
    let twice = q * BigRational::from_integer(2.into());
    if !twice.is_integer() || twice < BigRational::from_integer(0.into()) {
        return Err(bad());
    }
    u32::try_from(twice.to_integer()).map_err(|_| bad())
}

fn report_dir(cfg: &ConfigFile) -> Option<PathBuf> {
    std::env::var_os(REPORT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| cfg.report_dir.clone())
}

impl RunConfig {
    pub fn resolve(args: &VerifyArgs, cfg: &ConfigFile) -> Result<Self, CliError> {
        let mode_arg = args.mode.or(cfg.mode);
        let at_k = match args.at_k.as_ref().or(cfg.at_k.as_ref()) {
            Some(t) => Some(parse_level(t)?),
            None => None,
        };
        let cutoff2 = match cfg.cutoff_text() {
            Some(t) => parse_cutoff(&t)?,
            None => 2 * DEFAULT_CUTOFF,
        };
        let ext = match args.format {
            Format::Text => "txt",
            Format::Json => "json",
        };
        let report = args.report.clone().or_else(|| {
            report_dir(cfg).map(|d| {
                let mut name = args.suite.name().to_string();
                if let Some(m) = mode_arg {
                    name += &format!("-{}", Mode::from(m).as_str());
                }
                if let Some(k) = &at_k {
                    name += &format!("-k{}", fmt_rational(k).replace('/', "_"));
                }
                d.join(format!("{name}.{ext}"))
            })
        });
        let rc = RunConfig {
            suite: args.suite,
            mode: mode_arg.map(Mode::from).unwrap_or(Mode::Free),
            mode_explicit: mode_arg.is_some(),
            at_k,
            report,
            format: args.format,
            verbose: args.verbose || cfg.verbose.unwrap_or(false),
            cutoff2,
        };
        rc.validate()?;
        Ok(rc)
    }

    fn validate(&self) -> Result<(), CliError> {
        match self.suite {
            Suite::Primary | Suite::Liealg | Suite::Oracle | Suite::Formulas if self.at_k.is_some() => Err(CliError::Usage(format!(
                "--at-k applies to sw32, screening and all, not {}",
                self.suite.name()
            ))),
            Suite::Screening | Suite::Oracle | Suite::Liealg if self.mode_explicit && self.mode == Mode::Full => Err(CliError::Usage(
                format!("the {} suite has no full mode", self.suite.name()),
            )),
            _ => Ok(()),
        }
    }
}

/// The outcome of one `verify` run.
pub struct Outcome {
    pub reports: Vec<VerificationReport>,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(VerificationReport::pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.reports.iter().map(VerificationReport::to_text).collect::<Vec<_>>().join("\n"),
            Format::Json if self.reports.len() == 1 => self.reports[0].to_json() + "\n",
            Format::Json => {
                let v = json!({
                    "schema_version": reduction::VerificationReport::new("", "", None).schema_version,
                    "pass": self.pass(),
                    "suites": self.reports,
                });
                serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
            }
        }
    }
}

fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let start = Instant::now();
    if cfg.verbose {
        eprintln!("running {}", suite.name());
    }
    let r = match suite {
        Suite::Sw32 => {
            let quad = reduction::quadruple(cfg.mode)?;
            match &cfg.at_k {
                Some(k) => reduction::verify_sw32_at(&quad, k)?,
                None => reduction::verify_sw32(&quad)?,
            }
        }
        Suite::Primary => reduction::verify_primary(&reduction::quadruple(cfg.mode)?)?,
        Suite::Formulas => reduction::verify_formulas(cfg.mode)?,
        Suite::Liealg => reduction::verify_liealg()?,
        Suite::Screening => FreeField::new()?.kernel_suite(cfg.at_k.as_ref())?,
        Suite::Oracle => fockoracle::verify_oracle(&reduction::quadruple(Mode::Free)?, cfg.cutoff2)?,
        Suite::All => unreachable!("expanded by run"),
    };
    if cfg.verbose {
        eprintln!("finished {} in {:.2}s", suite.name(), start.elapsed().as_secs_f64());
    }
    Ok(r)
}

/// Run the selected suites. `all` runs them concurrently and orders the
/// reports by suite name.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let reports = if cfg.suite == Suite::All {
        let results: Vec<Result<VerificationReport, CliError>> = std::thread::scope(|s| {
            let handles: Vec<_> = Suite::each()
                .into_iter()
                .map(|suite| {
                    let mut c = cfg.clone();
                    if !matches!(suite, Suite::Sw32 | Suite::Screening) {
                        c.at_k = None;
                    }
                    if matches!(suite, Suite::Screening | Suite::Oracle | Suite::Liealg) {
                        c.mode = Mode::Free;
                    }
                    s.spawn(move || run_suite(suite, &c))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
        });
        results.into_iter().collect::<Result<Vec<_>, _>>()?
    } else {
        vec![run_suite(cfg.suite, cfg)?]
    };
    let outcome = Outcome { reports };
    if let Some(path) = &cfg.report {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|source| ReportError::Io {
                path: parent.display().to_string(),
                source,
            })?;
        }
        reduction::write_atomic(path, &outcome.render(cfg.format))?;
    }
    Ok(outcome)
}

fn crosscheck_text(c: &fockoracle::CrossCheck) -> String {
    let mut out = format!(
        "Fock-space crosscheck at k = {}, cutoff {}\n  dim {}, {} basis monomials, {} products compared, {} beyond the cutoff\n  {} mode commutators checked\n  max relative error {:.1e} (tolerance {:.0e})\n",
        fmt_rational(&c.k),
        fmt_rational(&BigRational::new(c.cutoff2.into(), 2.into())),
        c.dim,
        c.monomials,
        c.cases,
        c.beyond_cutoff,
        c.commutators,
        c.max_relative_error,
        fockoracle::ORACLE_TOLERANCE
    );
    for f in c.failures.iter().take(20) {
        out += &format!("  FAIL {f}\n");
    }
    out += if c.pass() { "  PASS\n" } else { "  FAIL\n" };
    out
}

fn crosscheck_json(c: &fockoracle::CrossCheck) -> String {
    let v = json!({
        "k": fmt_rational(&c.k),
        "cutoff": fmt_rational(&BigRational::new(c.cutoff2.into(), 2.into())),
        "dim": c.dim,
        "monomials": c.monomials,
        "cases": c.cases,
        "beyond_cutoff": c.beyond_cutoff,
        "commutators": c.commutators,
        "max_relative_error": c.max_relative_error,
        "tolerance": fockoracle::ORACLE_TOLERANCE,
        "failures": c.failures,
        "pass": c.pass(),
    });
    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
}

/// TeX of a printed formula with layout commands and whitespace removed.
pub fn collapse_tex(tex: &str) -> String {
    let mut s = tex.replace("\\nonumber", "").replace("\\\\", "").replace('&', "");
    for cmd in ["\\left", "\\right", "\\,"] {
        s = s.replace(cmd, "");
    }
    s = s.replace("\\right.", "").replace("\\left.", "");
    s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('.', "")
}

/// Short Unicode rendering of a target: `(\partial+4\lambda)W` ↦ `(∂+4λ)W`.
pub fn render_target(tex: &str) -> String {
    let mut s = collapse_tex(tex);
    for (from, to) in [("\\partial", "∂"), ("\\lambda", "λ"), ("^{3}", "³"), ("^{2}", "²")] {
        s = s.replace(from, to);
    }
    while let Some(start) = s.find("\\tfrac{") {
        let Some((num, after)) = braced(&s[start + 6..]) else { break };
        let Some((den, rest)) = braced(after) else { break };
        let wrap = |t: &str| if t.chars().all(|c| c.is_alphanumeric()) { t.to_string() } else { format!("({t})") };
        let frac = format!("{}/{}", wrap(&num), wrap(&den));
        s = format!("{}{}{}", &s[..start], frac, rest);
    }
    while let Some(start) = s.find("\\sqrt{") {
        let Some((arg, rest)) = braced(&s[start + 5..]) else { break };
        s = format!("{}√({}){}", &s[..start], arg, rest);
    }
    s.replace("{", "").replace("}", "").replace("++", "+")
}

/// Split `{inner}rest` at the matching brace.
fn braced(s: &str) -> Option<(String, &str)> {
    if !s.starts_with('{') {
        return None;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some((s[1..i].to_string(), &s[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

pub fn dump(what: DumpWhat, format: DumpFormat, mode: Mode) -> Result<String, CliError> {
    match what {
        DumpWhat::StructureConstants => {
            let g = build_osp32()?;
            Ok(match format {
                DumpFormat::Text => g.structure_constants_text(),
                DumpFormat::Machine => {
                    let n = g.dim();
                    let basis: Vec<_> = g
                        .basis()
                        .iter()
                        .enumerate()
                        .map(|(i, b)| json!({"id": b.id, "name": b.latex, "odd": g.parity(i).is_odd()}))
                        .collect();
                    let mut brackets = Vec::new();
                    let mut form = Vec::new();
                    for a in 0..n {
                        for b in 0..n {
                            let v = g.basis_bracket(a, b);
                            let terms: Vec<_> = v
                                .iter()
                                .enumerate()
                                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                                .map(|(c, x)| json!([g.basis()[c].id, fmt_rational(x)]))
                                .collect();
                            if !terms.is_empty() {
                                brackets.push(json!({"a": g.basis()[a].id, "b": g.basis()[b].id, "value": terms}));
                            }
                            let f = g.basis_form(a, b);
                            if !num_traits::Zero::is_zero(f) {
                                form.push(json!({"a": g.basis()[a].id, "b": g.basis()[b].id, "value": fmt_rational(f)}));
                            }
                        }
                    }
                    serde_json::to_string_pretty(&json!({"basis": basis, "brackets": brackets, "form": form})).expect("serializes")
                        + "\n"
                }
            })
        }
        DumpWhat::Generators => {
            let quad = reduction::quadruple(mode)?;
            let printed = match mode {
                Mode::Full => [formulas::FULL_G, formulas::FULL_L, formulas::FULL_W, formulas::FULL_U],
                Mode::Free => [formulas::FREE_G, formulas::FREE_L, formulas::FREE_W, formulas::FREE_U],
            };
            let names = ["G", "L", "W", "U"];
            Ok(match format {
                DumpFormat::Text => {
                    let mut out = format!("# {} mode\n", mode.as_str());
                    for (name, tex) in names.iter().zip(printed) {
                        out += &format!("printed {name} = {}\n", collapse_tex(tex));
                        out += &format!("{name} = {}\n", quad.fmt(name));
                    }
                    if quad.u_flipped {
                        out += "# U is minus the printed formula\n";
                    }
                    out
                }
                DumpFormat::Machine => {
                    let gens: Vec<_> = names
                        .iter()
                        .zip(printed)
                        .map(|(name, tex)| json!({"name": name, "printed": collapse_tex(tex), "normal_form": quad.fmt(name)}))
                        .collect();
                    serde_json::to_string_pretty(&json!({"mode": mode.as_str(), "u_flipped": quad.u_flipped, "generators": gens}))
                        .expect("serializes")
                        + "\n"
                }
            })
        }
        DumpWhat::Targets => Ok(match format {
            DumpFormat::Text => formulas::TARGETS
                .iter()
                .map(|(name, _, _, tex)| format!("{name} = {}\n", render_target(tex)))
                .collect(),
            DumpFormat::Machine => {
                let quad = reduction::quadruple(mode)?;
                let targets = reduction::targets(&quad)?;
                let rows: Vec<_> = formulas::TARGETS
                    .iter()
                    .zip(&targets)
                    .map(|((name, a, b, tex), (_, _, _, poly))| {
                        let coeffs: Vec<String> = poly.coeffs().iter().map(|s| fmt_state(quad.algebra.names(), s)).collect();
                        json!({"name": name, "a": a, "b": b, "target": render_target(tex), "tex": collapse_tex(tex), "lambda_coefficients": coeffs})
                    })
                    .collect();
                serde_json::to_string_pretty(&json!({"mode": mode.as_str(), "targets": rows})).expect("serializes") + "\n"
            }
        }),
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// The rendered output and whether every check passed.
pub fn execute(cli: &Cli) -> Result<(String, bool), CliError> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    match &cli.command {
        Command::Verify(args) => {
            let rc = RunConfig::resolve(args, &cfg)?;
            let outcome = run(&rc)?;
            Ok((outcome.render(rc.format), outcome.pass()))
        }
        Command::Oracle {
            command: OracleCommand::Crosscheck { k, cutoff, format },
        } => {
            let k = parse_level(k)?;
            let cutoff2 = match cutoff.clone().or_else(|| cfg.cutoff_text()) {
                Some(t) => parse_cutoff(&t)?,
                None => 2 * DEFAULT_CUTOFF,
            };
            let c = fockoracle::crosscheck(&k, cutoff2)?;
            let text = match format {
                Format::Text => crosscheck_text(&c),
                Format::Json => crosscheck_json(&c),
            };
            Ok((text, c.pass()))
        }
        Command::Dump(args) => {
            let mode = args.mode.or(cfg.mode).map(Mode::from).unwrap_or(Mode::Full);
            Ok((dump(args.what, args.format, mode)?, true))
        }
    }
}
