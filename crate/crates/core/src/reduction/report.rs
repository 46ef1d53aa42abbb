use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Identity;
use crate::coeffring::Scalar;
use crate::vertexcore::{fmt_state, NameTable, State};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write report to {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
}

/// One λ-coefficient of one identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub identity: String,
    pub lambda_power: usize,
    pub expected: String,
    pub computed: String,
    pub difference: String,
    pub pass: bool,
    /// Wall time of the whole identity; kept out of the JSON so reports are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub mode: String,
    /// The level, for numeric runs; absent for symbolic ones.
    pub k: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<String>,
    pub entries: Vec<Entry>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: &str, mode: &str, k: Option<String>) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            mode: mode.into(),
            k,
            central_charge: None,
            entries: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Identity names in order of first appearance.
    pub fn identities(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.identity.as_str()) {
                out.push(&e.identity);
            }
        }
        out
    }

    pub fn identity_pass(&self, name: &str) -> bool {
        self.entries.iter().filter(|e| e.identity == name).all(|e| e.pass)
    }

    /// One entry per λ-power where either side is nonzero; a single `0 = 0`
    /// entry if both sides vanish.
    pub fn push_identity(&mut self, names: &NameTable, id: &Identity, seconds: Option<f64>) {
        let n = id.computed.coeffs().len().max(id.expected.coeffs().len());
        let mut pushed = false;
        for j in 0..n {
            let (c, e) = (id.computed.coeff(j), id.expected.coeff(j));
            if c.is_zero() && e.is_zero() {
                continue;
            }
            self.push_states(names, &id.name, j, &c, &e, seconds);
            pushed = true;
        }
        if !pushed {
            self.push_states(names, &id.name, 0, &State::zero(), &State::zero(), seconds);
        }
    }

    fn push_states(
        &mut self,
        names: &NameTable,
        identity: &str,
        j: usize,
        computed: &State<Scalar>,
        expected: &State<Scalar>,
        seconds: Option<f64>,
    ) {
        let diff = computed.sub(expected);
        self.entries.push(Entry {
            identity: identity.into(),
            lambda_power: j,
            expected: fmt_state(names, expected),
            computed: fmt_state(names, computed),
            difference: fmt_state(names, &diff),
            pass: diff.is_zero(),
            seconds,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<(), ReportError> {
        write_atomic(path, &(self.to_json() + "\n"))
    }

    /// Human-readable summary: one line per identity, details for failures.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut at = self.k.as_ref().map(|k| format!(" at k = {k}")).unwrap_or_default();
        if let Some(c) = &self.central_charge {
            at += &format!(", c = {c}");
        }
        let _ = writeln!(out, "{} ({} mode{at})", self.suite, self.mode);
        for name in self.identities() {
            let entries: Vec<&Entry> = self.entries.iter().filter(|e| e.identity == name).collect();
            let ok = entries.iter().all(|e| e.pass);
            let secs = entries.iter().find_map(|e| e.seconds);
            let time = secs.map(|s| format!("  [{s:.2}s]")).unwrap_or_default();
            let _ = writeln!(out, "  {} {name}{time}", if ok { "PASS" } else { "FAIL" });
            for e in entries.iter().filter(|e| !e.pass) {
                let _ = writeln!(out, "      λ^{}: expected  {}", e.lambda_power, e.expected);
                let _ = writeln!(out, "           computed  {}", e.computed);
                let _ = writeln!(out, "           residual  {}", e.difference);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(
            out,
            "  {}: {}/{} coefficients agree",
            if self.pass() { "PASS" } else { "FAIL" },
            self.entries.iter().filter(|e| e.pass).count(),
            self.entries.len()
        );
        out
    }
}

/// Write through a sibling temporary file and rename it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), ReportError> {
    let io = |source| ReportError::Io {
        path: path.display().to_string(),
        source,
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}
