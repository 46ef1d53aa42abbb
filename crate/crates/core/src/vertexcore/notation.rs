use std::collections::HashMap;

use super::algebra::{linear_derivative, NameTable};
use super::engine::Engine;
use super::state::{LambdaPoly, Monomial, State};
use crate::coeffring::{Coeff, Scalar};
use crate::expr::{normalize_name, Context, ParseError};

/// Parsing context producing λ-polynomials of states.
///
/// Without an engine only linear expressions are accepted (used for bracket
/// tables and aliases); with one, normally ordered groups and derivatives of
/// composite states are computed.
pub struct StateContext<'a> {
    names: &'a NameTable,
    engine: Option<&'a Engine<Scalar>>,
    symbols: Option<&'a HashMap<String, State<Scalar>>>,
}

impl<'a> StateContext<'a> {
    pub fn linear(names: &'a NameTable) -> Self {
        StateContext {
            names,
            engine: None,
            symbols: None,
        }
    }

    pub fn with_engine(engine: &'a Engine<Scalar>) -> Self {
        StateContext {
            names: engine.algebra().names(),
            engine: Some(engine),
            symbols: None,
        }
    }

    /// Extra named states; keys are normalized names.
    pub fn symbols(mut self, symbols: &'a HashMap<String, State<Scalar>>) -> Self {
        self.symbols = Some(symbols);
        self
    }

    fn as_state(&self, v: LambdaPoly<Scalar>) -> Result<State<Scalar>, ParseError> {
        if v.degree().unwrap_or(0) > 0 {
            return Err(ParseError::Unsupported("λ inside a normally ordered product".into()));
        }
        Ok(v.coeff(0))
    }
}

/// Product of a λ-polynomial with a λ-polynomial whose coefficients are
/// scalars.
fn times_scalar_poly<C: Coeff>(p: &LambdaPoly<C>, q: &[C]) -> LambdaPoly<C> {
    let mut out = LambdaPoly::zero();
    for (i, c) in q.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, s) in p.coeffs().iter().enumerate() {
            out.add_scaled_at(i + j, s, c);
        }
    }
    out
}

impl<'a> Context for StateContext<'a> {
    type Value = LambdaPoly<Scalar>;

    fn constant(&self, s: Scalar) -> Self::Value {
        LambdaPoly::constant(State::scalar(s))
    }

    fn as_constant(&self, v: &Self::Value) -> Option<Scalar> {
        match v.as_scalar_poly()?.as_slice() {
            [] => Some(Scalar::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }

    fn ident(&self, name: &str) -> Option<Self::Value> {
        if let Some(sym) = self.symbols {
            if let Some(s) = sym.get(&normalize_name(name)) {
                return Some(LambdaPoly::constant(s.clone()));
            }
        }
        self.names.resolve(name).map(LambdaPoly::constant)
    }

    fn lambda(&self) -> Result<Self::Value, ParseError> {
        Ok(LambdaPoly::monomial(1, State::vacuum()))
    }

    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ParseError> {
        let mut a = a;
        a.add_assign(&b);
        Ok(a)
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        a.neg()
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ParseError> {
        if let Some(q) = a.as_scalar_poly() {
            return Ok(times_scalar_poly(&b, &q));
        }
        if let Some(q) = b.as_scalar_poly() {
            return Ok(times_scalar_poly(&a, &q));
        }
        Err(ParseError::Unsupported(
            "product of two fields outside a normally ordered group".into(),
        ))
    }

    fn derivative(&self, a: Self::Value, n: u32) -> Result<Self::Value, ParseError> {
        let coeffs = a
            .coeffs()
            .iter()
            .map(|s| match self.engine {
                Some(e) => Ok(e.derivative_n(s, n)),
                None => {
                    if s.terms().any(|(m, _)| m.len() > 1) {
                        Err(ParseError::Unsupported("derivative of a composite state".into()))
                    } else {
                        Ok(linear_derivative(s, n as u16))
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LambdaPoly::from_coeffs(coeffs))
    }

    fn normal_order(&self, items: Vec<Self::Value>) -> Result<Self::Value, ParseError> {
        let engine = self
            .engine
            .ok_or_else(|| ParseError::Unsupported("normally ordered product in a linear context".into()))?;
        let states = items
            .into_iter()
            .map(|v| self.as_state(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LambdaPoly::constant(engine.nprod_all(&states)))
    }
}

pub fn fmt_monomial(names: &NameTable, m: &Monomial) -> String {
    if m.is_vacuum() {
        return "1".into();
    }
    let parts: Vec<String> = m
        .factors()
        .iter()
        .map(|f| {
            let name = &names.generators()[f.gen as usize].name;
            match f.deriv {
                0 => name.clone(),
                1 => format!("\\partial {name}"),
                n => format!("\\partial^{{{n}}} {name}"),
            }
        })
        .collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!(":{}:", parts.join(" "))
    }
}

fn fmt_coeff_prefix<C: Coeff>(c: &C) -> (bool, String) {
    let text = c.to_string();
    let plain = text.chars().all(|ch| ch.is_ascii_digit() || ch == '/' || ch == '-');
    if plain {
        match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        }
    } else {
        (false, format!("({text})"))
    }
}

/// A state in printed notation, e.g. `-2 :J^{(h_1)} J^{(h_2)}: + (1+2*k)/8 \partial \Phi_{12}`.
pub fn fmt_state<C: Coeff>(names: &NameTable, s: &State<C>) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in s.terms().enumerate() {
        let (negative, coeff) = fmt_coeff_prefix(c);
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_vacuum() {
            out.push_str(&coeff);
        } else {
            if coeff != "1" {
                out.push_str(&coeff);
                out.push(' ');
            }
            out.push_str(&fmt_monomial(names, m));
        }
    }
    out
}

/// A λ-polynomial as `Σ (coefficient) λ^j`, lowest power first.
pub fn fmt_lambda_poly<C: Coeff>(names: &NameTable, p: &LambdaPoly<C>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (j, s) in p.coeffs().iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let body = fmt_state(names, s);
        let body = if j > 0 && s.len() > 1 { format!("({body})") } else { body };
        parts.push(match j {
            0 => body,
            1 => format!("{body} \\lambda"),
            _ => format!("{body} \\lambda^{{{j}}}"),
        });
    }
    parts.join(" + ")
}
