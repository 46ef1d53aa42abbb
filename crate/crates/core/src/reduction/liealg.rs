//! Integrity of the osp(3|2) data: brackets, form, grading, centralizer.

use num_rational::BigRational;

use super::{Entry, ReductionError, VerificationReport};
use crate::coeffring::{fmt_rational, Scalar};
use crate::superlie::Osp32;

/// The ad-x eigenspaces as printed, by `2j`.
pub const EIGENSPACE_TABLE: [(i64, &[&str]); 7] = [
    (-3, &["f_{122}"]),
    (-2, &["f_{2}", "f_{1122}"]),
    (-1, &["e_{1}", "f_{12}"]),
    (0, &["h_{1}", "h_{2}"]),
    (1, &["f_{1}", "e_{12}"]),
    (2, &["e_{2}", "e_{1122}"]),
    (3, &["e_{122}"]),
];

fn entry(identity: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, pass: bool) -> Entry {
    Entry {
        identity: identity.into(),
        lambda_power: 0,
        expected: expected.into(),
        computed: computed.into(),
        difference: String::new(),
        pass,
        seconds: None,
    }
}

/// Names in the `x_{ab}` spelling with braces around every index.
fn braced(latex: &str) -> String {
    match latex.split_once('_') {
        Some((head, idx)) if !idx.starts_with('{') => format!("{head}_{{{idx}}}"),
        _ => latex.to_string(),
    }
}

pub fn verify_liealg() -> Result<VerificationReport, ReductionError> {
    let osp = Osp32::new()?;
    let g = &osp.g;
    let mut r = VerificationReport::new("osp(3|2) integrity", "exact", None);

    let checked = g.check();
    r.entries.push(entry(
        "super-Jacobi, parity and form invariance on all basis triples",
        "holds",
        checked.as_ref().map(|_| "holds".to_string()).unwrap_or_else(|e| e.to_string()),
        checked.is_ok(),
    ));

    for (j2, names) in EIGENSPACE_TABLE {
        let mut got: Vec<String> = osp.grading.basis_in(j2).iter().map(|&i| braced(g.basis()[i].latex)).collect();
        let mut want: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let shown = got.join(", ");
        got.sort();
        want.sort();
        r.entries.push(entry(
            format!("g_{{{}}}", fmt_rational(&BigRational::new(j2.into(), 2.into()))),
            names.join(", "),
            shown,
            got == want,
        ));
    }

    let dims = osp.centralizer.dims();
    let fmt_dims = |d: &[(i64, usize)]| {
        d.iter()
            .map(|(j2, n)| format!("dim g^f_{{{}}} = {n}", fmt_rational(&BigRational::new((*j2).into(), 2.into()))))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let want = [(-3, 1), (-2, 2), (-1, 1)];
    r.entries.push(entry("centralizer of f", fmt_dims(&want), fmt_dims(&dims), dims == want));

    let half = Scalar::from_rational(BigRational::new(1.into(), 2.into()));
    match g.check_dual_coxeter() {
        Ok(h) => {
            let ratio = h.scale(&BigRational::from_integer(2.into()));
            r.entries.push(entry("Killing form / (|) = 2h^∨", "1", ratio.to_string(), h == half));
        }
        Err(e) => r.entries.push(entry("Killing form / (|) = 2h^∨", "1", e.to_string(), false)),
    }
    r.notes.push("x = h_1 - h_2, f = f_2 + f_{1122}".into());
    Ok(r)
}
