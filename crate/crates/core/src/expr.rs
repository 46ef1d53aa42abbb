//! Parser for the LaTeX-flavoured notation used in formulas, configuration
//! files and reports.
//!
//! The grammar knows about numbers, `k`, `c` (= 6+18k), `i`, `\lambda`,
//! `\tfrac{..}{..}`, `\sqrt{..}`, `\partial`, `\partial^{n}`, normally ordered
//! groups `:a b c:` (read right-nested) and decorated identifiers such as
//! `J^{(h_1)}`, `J^{\{f_2\}}` or `\Phi^{-1}`. What identifiers mean, and how
//! values combine, is supplied by a [`Context`].

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::coeffring::{CoeffError, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Semantic actions for the parser.
pub trait Context {
    type Value: Clone;

    fn constant(&self, s: Scalar) -> Self::Value;
    fn as_constant(&self, v: &Self::Value) -> Option<Scalar>;
    fn ident(&self, name: &str) -> Option<Self::Value>;
    fn lambda(&self) -> Result<Self::Value, ParseError> {
        Err(ParseError::Unsupported("lambda in this context".into()))
    }
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ParseError>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, ParseError>;
    fn derivative(&self, _a: Self::Value, _n: u32) -> Result<Self::Value, ParseError> {
        Err(ParseError::Unsupported("derivative in this context".into()))
    }
    fn normal_order(&self, _items: Vec<Self::Value>) -> Result<Self::Value, ParseError> {
        Err(ParseError::Unsupported("normally ordered product in this context".into()))
    }
}

/// Canonical spelling of a decorated identifier: braces, spaces and
/// backslashes dropped, escaped braces kept as `{`/`}`.
pub fn normalize_name(raw: &str) -> String {
    let mut out = String::new();
    let mut chars = raw.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '\\' => match chars.peek() {
                Some('{') | Some('}') => out.push(chars.next().unwrap()),
                _ => {}
            },
            '{' | '}' | ' ' | '\t' | '\n' => {}
            _ => out.push(ch),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    // base name plus raw decorations, e.g. ("J", ["^{(h_1)}"])
    Ident(String, Vec<String>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Frac,
    Sqrt,
    Partial(u32),
    Lambda,
}

fn read_group(s: &[char], mut i: usize) -> Result<(String, usize), ParseError> {
    // s[i] == '{'
    let start = i;
    let mut depth = 0i32;
    let mut out = String::new();
    while i < s.len() {
        let ch = s[i];
        if ch == '\\' && i + 1 < s.len() && (s[i + 1] == '{' || s[i + 1] == '}') {
            out.push(ch);
            out.push(s[i + 1]);
            i += 2;
            continue;
        }
        if ch == '{' {
            depth += 1;
        } else if ch == '}' {
            depth -= 1;
        }
        out.push(ch);
        i += 1;
        if depth == 0 {
            return Ok((out, i));
        }
    }
    Err(ParseError::Syntax {
        pos: start,
        msg: "unbalanced brace".into(),
    })
}

/// Reads one `^x`, `_xyz`, `^{...}` or `_{...}` decoration starting at `s[i]`;
/// returns the body without the mark.
fn read_one_decoration(s: &[char], i: usize) -> Result<(String, usize), ParseError> {
    let mark = s[i];
    let mut j = i + 1;
    while j < s.len() && s[j] == ' ' {
        j += 1;
    }
    if j >= s.len() {
        return Err(ParseError::Syntax {
            pos: i,
            msg: "dangling decoration".into(),
        });
    }
    if s[j] == '{' {
        return read_group(s, j);
    }
    if s[j] == '\\' {
        let mut m = j + 1;
        while m < s.len() && s[m].is_ascii_alphabetic() {
            m += 1;
        }
        return Ok((s[j..m].iter().collect(), m));
    }
    let mut m = j + 1;
    if mark == '_' {
        while m < s.len() && s[m].is_ascii_alphanumeric() {
            m += 1;
        }
    }
    Ok((s[j..m].iter().collect(), m))
}

/// Reads all decorations following an identifier.
fn read_decorations(s: &[char], mut i: usize) -> Result<(Vec<String>, usize), ParseError> {
    let mut decos = Vec::new();
    while i < s.len() && (s[i] == '^' || s[i] == '_') {
        let (body, next) = read_one_decoration(s, i)?;
        decos.push(format!("{}{body}", s[i]));
        i = next;
    }
    Ok((decos, i))
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let s: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let ch = s[i];
        let pos = i;
        match ch {
            ' ' | '\t' | '\n' | '\r' | '&' => i += 1,
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, pos));
                i += 1
            }
            '*' | '\u{b7}' => {
                out.push((Tok::Star, pos));
                i += 1
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1
            }
            '{' => {
                out.push((Tok::LBrace, pos));
                i += 1
            }
            '}' => {
                out.push((Tok::RBrace, pos));
                i += 1
            }
            ':' => {
                out.push((Tok::Colon, pos));
                i += 1
            }
            '\u{3bb}' => {
                out.push((Tok::Lambda, pos));
                i += 1
            }
            '\u{2202}' => {
                let (n, next) = read_partial_power(&s, i + 1)?;
                out.push((Tok::Partial(n), pos));
                i = next;
            }
            '^' => {
                let (body, next) = read_one_decoration(&s, i)?;
                out.push((Tok::Caret(body), pos));
                i = next;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < s.len() && s[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = s[i..j].iter().collect();
                out.push((Tok::Num(digits.parse().unwrap()), pos));
                i = j;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < s.len() && s[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let base: String = s[i..j].iter().collect();
                if base == "sqrt" {
                    out.push((Tok::Sqrt, pos));
                    i = j;
                    continue;
                }
                if base == "lambda" {
                    out.push((Tok::Lambda, pos));
                    i = j;
                    continue;
                }
                let (decos, next) = read_decorations(&s, j)?;
                out.push((Tok::Ident(base, decos), pos));
                i = next;
            }
            '\\' => {
                let mut j = i + 1;
                if j < s.len() && !s[j].is_ascii_alphabetic() {
                    // \\ \, \; \! \{ \}
                    match s[j] {
                        '{' => out.push((Tok::LBrace, pos)),
                        '}' => out.push((Tok::RBrace, pos)),
                        _ => {}
                    }
                    i = j + 1;
                    continue;
                }
                while j < s.len() && s[j].is_ascii_alphabetic() {
                    j += 1;
                }
                let cmd: String = s[i + 1..j].iter().collect();
                match cmd.as_str() {
                    "frac" | "tfrac" | "dfrac" => {
                        out.push((Tok::Frac, pos));
                        i = j;
                    }
                    "sqrt" => {
                        out.push((Tok::Sqrt, pos));
                        i = j;
                    }
                    "lambda" => {
                        out.push((Tok::Lambda, pos));
                        i = j;
                    }
                    "partial" => {
                        let (n, next) = read_partial_power(&s, j)?;
                        out.push((Tok::Partial(n), pos));
                        i = next;
                    }
                    "left" | "right" => {
                        // the delimiter follows; '.' is invisible
                        let mut m = j;
                        while m < s.len() && s[m] == ' ' {
                            m += 1;
                        }
                        if m < s.len() && s[m] == '.' {
                            i = m + 1;
                        } else {
                            i = m;
                        }
                    }
                    "cdot" | "times" => {
                        out.push((Tok::Star, pos));
                        i = j;
                    }
                    "nonumber" | "quad" | "qquad" => i = j,
                    _ => {
                        let (decos, next) = read_decorations(&s, j)?;
                        out.push((Tok::Ident(cmd, decos), pos));
                        i = next;
                    }
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character `{ch}`"),
                })
            }
        }
    }
    Ok(out)
}

fn read_partial_power(s: &[char], i: usize) -> Result<(u32, usize), ParseError> {
    if i < s.len() && s[i] == '^' {
        let (body, next) = read_one_decoration(s, i)?;
        let body = normalize_name(&body);
        let n = body.parse::<u32>().map_err(|_| ParseError::Syntax {
            pos: i,
            msg: format!("bad derivative order `{body}`"),
        })?;
        Ok((n, next))
    } else {
        Ok((1, i))
    }
}

struct Parser<'a, C: Context> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a C,
    in_colon: bool,
}

impl<'a, C: Context> Parser<'a, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(usize::MAX)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn expr(&mut self) -> Result<C::Value, ParseError> {
        let mut neg = false;
        loop {
            match self.peek() {
                Some(Tok::Plus) => self.pos += 1,
                Some(Tok::Minus) => {
                    neg = !neg;
                    self.pos += 1
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = self.ctx.neg(acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => {
                    let mut neg = false;
                    while let Some(t) = self.peek() {
                        match t {
                            Tok::Plus => self.pos += 1,
                            Tok::Minus => {
                                neg = !neg;
                                self.pos += 1
                            }
                            _ => break,
                        }
                    }
                    let mut t = self.term()?;
                    if neg {
                        t = self.ctx.neg(t);
                    }
                    acc = self.ctx.add(acc, t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(Tok::Colon) => !self.in_colon,
            Some(Tok::Num(_))
            | Some(Tok::Ident(..))
            | Some(Tok::LParen)
            | Some(Tok::LBrace)
            | Some(Tok::Frac)
            | Some(Tok::Sqrt)
            | Some(Tok::Partial(_))
            | Some(Tok::Lambda) => true,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<C::Value, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = self.ctx.mul(acc, rhs)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = self.divide(acc, rhs)?;
                }
                _ if self.starts_factor() => {
                    let rhs = self.power()?;
                    acc = self.ctx.mul(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&self, a: C::Value, b: C::Value) -> Result<C::Value, ParseError> {
        let d = self
            .ctx
            .as_constant(&b)
            .ok_or_else(|| ParseError::Unsupported("division by a non-constant".into()))?;
        let inv = d.inv()?;
        self.ctx.mul(a, self.ctx.constant(inv))
    }

    fn power(&mut self) -> Result<C::Value, ParseError> {
        let base = self.primary()?;
        if let Some(Tok::Caret(body)) = self.peek().cloned() {
            self.pos += 1;
            let text = normalize_name(&body);
            let n: i32 = text.parse().map_err(|_| ParseError::Syntax {
                pos: self.here(),
                msg: format!("bad exponent `{text}`"),
            })?;
            return self.raise(base, n);
        }
        Ok(base)
    }

    fn raise(&self, base: C::Value, n: i32) -> Result<C::Value, ParseError> {
        if let Some(s) = self.ctx.as_constant(&base) {
            return Ok(self.ctx.constant(s.pow(n)?));
        }
        if n < 1 {
            return Err(ParseError::Unsupported("non-positive power of a non-constant".into()));
        }
        let mut acc = base.clone();
        for _ in 1..n {
            acc = self.ctx.mul(acc, base.clone())?;
        }
        Ok(acc)
    }

    fn braced(&mut self) -> Result<C::Value, ParseError> {
        self.expect(Tok::LBrace)?;
        let saved = self.in_colon;
        self.in_colon = false;
        let v = self.expr()?;
        self.in_colon = saved;
        self.expect(Tok::RBrace)?;
        Ok(v)
    }

    fn primary(&mut self) -> Result<C::Value, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.ctx.constant(Scalar::from_rational(BigRational::from_integer(n)))),
            Tok::LParen => {
                let saved = self.in_colon;
                self.in_colon = false;
                let v = self.expr()?;
                self.in_colon = saved;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::LBrace => {
                self.pos -= 1;
                self.braced()
            }
            Tok::Frac => {
                let num = self.braced()?;
                let den = self.braced()?;
                self.divide(num, den)
            }
            Tok::Sqrt => {
                let arg = match self.peek() {
                    Some(Tok::LBrace) => self.braced()?,
                    Some(Tok::LParen) => self.primary()?,
                    _ => return self.err("expected argument of sqrt"),
                };
                let s = self
                    .ctx
                    .as_constant(&arg)
                    .ok_or_else(|| ParseError::Unsupported("sqrt of a non-constant".into()))?;
                Ok(self.ctx.constant(s.sqrt()?))
            }
            Tok::Partial(n) => {
                let arg = self.primary()?;
                self.ctx.derivative(arg, n)
            }
            Tok::Lambda => self.ctx.lambda(),
            Tok::Colon => {
                if self.in_colon {
                    return self.err("nested normally ordered group");
                }
                self.in_colon = true;
                let mut items = Vec::new();
                while self.peek() != Some(&Tok::Colon) {
                    if self.peek().is_none() {
                        return self.err("unterminated normally ordered group");
                    }
                    if let Some((Tok::Ident(base, decos), _)) = self.toks.get(self.pos).cloned() {
                        let vals = self.identifier(&base, &decos)?;
                        if vals.len() > 1 {
                            self.pos += 1;
                            items.extend(vals);
                            continue;
                        }
                    }
                    items.push(self.power()?);
                }
                self.pos += 1;
                self.in_colon = false;
                if items.is_empty() {
                    return self.err("empty normally ordered group");
                }
                self.ctx.normal_order(items)
            }
            Tok::Ident(base, decos) => {
                let mut it = self.identifier(&base, &decos)?.into_iter();
                let mut acc = it.next().expect("identifier yields a value");
                for v in it {
                    acc = self.ctx.mul(acc, v)?;
                }
                Ok(acc)
            }
            other => {
                self.pos -= 1;
                self.err(format!("unexpected token {other:?}"))
            }
        }
    }

    fn identifier(&mut self, base: &str, decos: &[String]) -> Result<Vec<C::Value>, ParseError> {
        // the longest decorated spelling that means something wins; a trailing
        // integer superscript that is not part of a name is a power
        for cut in (0..=decos.len()).rev() {
            let name = normalize_name(&format!("{base}{}", decos[..cut].concat()));
            let value = self.lookup(&name);
            if let Some(v) = value {
                let mut v = v;
                for d in &decos[cut..] {
                    let body = normalize_name(&d[1..]);
                    match (d.starts_with('^'), body.parse::<i32>()) {
                        (true, Ok(n)) => v = self.raise(v, n)?,
                        _ => return Err(ParseError::UnknownIdentifier(normalize_name(&format!("{base}{}", decos.concat())))),
                    }
                }
                return Ok(vec![v]);
            }
        }
        // juxtaposed single-letter names, e.g. `LG` inside `:LG:`
        if decos.is_empty() && base.len() > 1 && base.chars().all(|c| c.is_ascii_alphabetic()) {
            return base
                .chars()
                .map(|ch| {
                    self.lookup(&ch.to_string())
                        .ok_or_else(|| ParseError::UnknownIdentifier(base.to_string()))
                })
                .collect();
        }
        Err(ParseError::UnknownIdentifier(normalize_name(&format!(
            "{base}{}",
            decos.concat()
        ))))
    }

    fn lookup(&self, name: &str) -> Option<C::Value> {
        if let Some(v) = self.ctx.ident(name) {
            return Some(v);
        }
        match name {
            "k" => Some(self.ctx.constant(Scalar::k())),
            "c" => Some(self.ctx.constant(Scalar::central_charge())),
            "i" => Some(self.ctx.constant(Scalar::imaginary_unit())),
            _ => None,
        }
    }
}

/// Parse `text` against a context.
pub fn parse_with<C: Context>(text: &str, ctx: &C) -> Result<C::Value, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        in_colon: false,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Context in which only scalars make sense.
pub struct ScalarContext;

impl Context for ScalarContext {
    type Value = Scalar;

    fn constant(&self, s: Scalar) -> Scalar {
        s
    }
    fn as_constant(&self, v: &Scalar) -> Option<Scalar> {
        Some(v.clone())
    }
    fn ident(&self, _name: &str) -> Option<Scalar> {
        None
    }
    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar, ParseError> {
        Ok(a.add(&b))
    }
    fn neg(&self, a: Scalar) -> Scalar {
        a.neg()
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar, ParseError> {
        Ok(a.mul(&b))
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    parse_with(text, &ScalarContext)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_forms() {
        let a = parse_scalar("\\tfrac{2}{\\sqrt{\\left(-1-2k\\right)}}").unwrap();
        let b = parse_scalar("-2*i/sqrt(1+2k)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_scalar("c").unwrap(), parse_scalar("6+18k").unwrap());
        assert_eq!(parse_scalar("k^2 - k k").unwrap(), Scalar::zero());
        assert_eq!(
            parse_scalar("\\left(-\\tfrac{1}{12}-\\tfrac{5 k}{6}\\right)").unwrap(),
            parse_scalar("-(1+10k)/12").unwrap()
        );
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "2*(6+5*c)/(sqrt(15-c)*sqrt(21+4*c))",
            "12*i*sqrt(1+3k)/(sqrt(1-2k)*sqrt(5+8k)*sqrt(1+5k+6k^2))",
            "(1+6k+8k^2)/(4-8k)",
            "1 + sqrt(2)*sqrt(1+2k)/3",
        ] {
            let s = parse_scalar(text).unwrap();
            let back = parse_scalar(&s.to_string()).unwrap();
            assert_eq!(s, back, "{text} -> {s}");
        }
    }

    #[test]
    fn names_are_normalized() {
        assert_eq!(normalize_name("J^{(f_{12)}}"), "J^(f_12)");
        assert_eq!(normalize_name("J^{\\{f_2\\}}"), "J^{f_2}");
        assert_eq!(normalize_name("\\Phi^{-1}"), "Phi^-1");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_scalar("1/0"), Err(ParseError::Coeff(CoeffError::DivisionByZero))));
        assert!(matches!(parse_scalar("q"), Err(ParseError::UnknownIdentifier(_))));
        assert!(parse_scalar("(1+k").is_err());
    }
}
