use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::notation::StateContext;
use super::state::{Factor, GenId, LambdaPoly, Monomial, State};
use super::{skew_transform, Parity, VertexError};
use crate::coeffring::{parse_rational, Scalar};
use crate::expr::{normalize_name, parse_with};

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    /// Display name in printed notation, e.g. `J^{(h_1)}`.
    pub name: String,
    pub parity: Parity,
    /// Twice the conformal weight.
    pub weight2: u32,
    pub charge: Option<Vec<BigRational>>,
}

impl Generator {
    pub fn weight(&self) -> BigRational {
        BigRational::new((self.weight2 as i64).into(), 2.into())
    }
}

/// What to do with generator pairs the table does not mention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Unlisted {
    #[default]
    Zero,
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GeneratorConfig {
    pub name: String,
    pub parity: Parity,
    pub weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AliasConfig {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketConfig {
    pub left: String,
    pub right: String,
    pub value: String,
}

/// Structured-text description of a vertex algebra: generators, linear
/// aliases and the base λ-brackets.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
pub struct AlgebraConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub unlisted: Unlisted,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorConfig>,
    #[serde(default, rename = "alias")]
    pub aliases: Vec<AliasConfig>,
    #[serde(default, rename = "bracket")]
    pub brackets: Vec<BracketConfig>,
}

impl AlgebraConfig {
    pub fn from_toml(text: &str) -> Result<Self, VertexError> {
        toml::from_str(text).map_err(|e| VertexError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("algebra config serializes")
    }

    pub fn generator(&mut self, name: &str, parity: Parity, weight: &str) -> &mut Self {
        self.generators.push(GeneratorConfig {
            name: name.into(),
            parity,
            weight: weight.into(),
            charge: None,
        });
        self
    }

    pub fn alias(&mut self, name: &str, value: &str) -> &mut Self {
        self.aliases.push(AliasConfig {
            name: name.into(),
            value: value.into(),
        });
        self
    }

    pub fn bracket(&mut self, left: &str, right: &str, value: &str) -> &mut Self {
        self.brackets.push(BracketConfig {
            left: left.into(),
            right: right.into(),
            value: value.into(),
        });
        self
    }

    pub fn build(&self) -> Result<VertexAlgebra, VertexError> {
        VertexAlgebra::from_config(self)
    }
}

/// Generator names and parities, without brackets. Shared by parsing
/// contexts.
#[derive(Clone, Debug, Default)]
pub struct NameTable {
    pub(crate) gens: Vec<Generator>,
    pub(crate) lookup: HashMap<String, GenId>,
    pub(crate) aliases: HashMap<String, State<Scalar>>,
    pub(crate) alias_order: Vec<String>,
}

impl NameTable {
    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.lookup.get(&normalize_name(name)).copied()
    }

    pub fn resolve(&self, name: &str) -> Option<State<Scalar>> {
        let key = normalize_name(name);
        if let Some(&id) = self.lookup.get(&key) {
            return Some(State::factor(Factor::new(id, 0)));
        }
        self.aliases.get(&key).cloned()
    }

    pub fn parity(&self, gen: GenId) -> Parity {
        self.gens[gen as usize].parity
    }

    pub fn is_odd(&self, gen: GenId) -> bool {
        self.gens[gen as usize].parity == Parity::Odd
    }

    pub fn monomial_parity(&self, m: &Monomial) -> Parity {
        let odd = m.factors().iter().filter(|f| self.is_odd(f.gen)).count();
        if odd % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Twice the conformal weight of a monomial.
    pub fn monomial_weight2(&self, m: &Monomial) -> u32 {
        m.factors()
            .iter()
            .map(|f| self.gens[f.gen as usize].weight2 + 2 * f.deriv as u32)
            .sum()
    }
}

/// A vertex superalgebra presented by generators and a complete table of
/// linear base λ-brackets.
#[derive(Clone, Debug)]
pub struct VertexAlgebra {
    names: NameTable,
    table: Vec<LambdaPoly<Scalar>>,
    config: AlgebraConfig,
}

impl VertexAlgebra {
    pub fn from_toml(text: &str) -> Result<Self, VertexError> {
        AlgebraConfig::from_toml(text)?.build()
    }

    pub fn from_config(cfg: &AlgebraConfig) -> Result<Self, VertexError> {
        let mut gens = Vec::new();
        for g in &cfg.generators {
            let w = parse_rational(&g.weight)
                .ok_or_else(|| VertexError::Config(format!("bad weight `{}` for {}", g.weight, g.name)))?;
            let w2 = w * BigRational::from_integer(2.into());
            if !w2.is_integer() || w2 < BigRational::from_integer(0.into()) {
                return Err(VertexError::Config(format!(
                    "weight of {} must be a non-negative half-integer",
                    g.name
                )));
            }
            let charge = match &g.charge {
                None => None,
                Some(v) => Some(
                    v.iter()
                        .map(|s| {
                            parse_rational(s).ok_or_else(|| VertexError::Config(format!("bad charge `{s}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            gens.push(Generator {
                name: g.name.clone(),
                parity: g.parity,
                weight2: w2.to_integer().try_into().unwrap_or(u32::MAX),
                charge,
            });
        }
        gens.sort_by(|a, b| {
            a.weight2
                .cmp(&b.weight2)
                .then_with(|| normalize_name(&a.name).cmp(&normalize_name(&b.name)))
        });
        let mut names = NameTable::default();
        for (i, g) in gens.iter().enumerate() {
            let key = normalize_name(&g.name);
            if names.lookup.insert(key, i as GenId).is_some() {
                return Err(VertexError::DuplicateGenerator(g.name.clone()));
            }
        }
        names.gens = gens;
        for a in &cfg.aliases {
            let value = parse_with(&a.value, &StateContext::linear(&names))?;
            let state = value.coeff(0);
            if value.degree().unwrap_or(0) > 0 {
                return Err(VertexError::Config(format!("alias {} depends on lambda", a.name)));
            }
            let key = normalize_name(&a.name);
            if names.lookup.contains_key(&key) || names.aliases.contains_key(&key) {
                return Err(VertexError::DuplicateGenerator(a.name.clone()));
            }
            names.aliases.insert(key.clone(), state);
            names.alias_order.push(a.name.clone());
        }

        let n = names.gens.len();
        let mut table: Vec<Option<LambdaPoly<Scalar>>> = vec![None; n * n];
        let ctx = StateContext::linear(&names);
        for b in &cfg.brackets {
            let l = names
                .id(&b.left)
                .ok_or_else(|| VertexError::UnknownGenerator(b.left.clone()))?;
            let r = names
                .id(&b.right)
                .ok_or_else(|| VertexError::UnknownGenerator(b.right.clone()))?;
            let value = parse_with(&b.value, &ctx)?;
            check_linear_entry(&names, l, r, &value)?;
            let slot = &mut table[l as usize * n + r as usize];
            match slot {
                Some(existing) if *existing != value => {
                    return Err(VertexError::InconsistentTable(format!(
                        "[{}_λ{}] listed twice with different values",
                        b.left, b.right
                    )))
                }
                _ => *slot = Some(value),
            }
        }
        // complete by skew-symmetry, checking pairs listed in both orders
        for a in 0..n {
            for b in a..n {
                let ab = table[a * n + b].clone();
                let ba = table[b * n + a].clone();
                let sign = koszul(&names, a as GenId, b as GenId);
                let deriv = |s: &State<Scalar>, k: u16| linear_derivative(s, k);
                match (ab, ba) {
                    (Some(p), Some(q)) => {
                        if skew_transform(&p, &sign, deriv) != q {
                            return Err(VertexError::InconsistentTable(format!(
                                "[{0}_λ{1}] and [{1}_λ{0}] violate skew-symmetry",
                                names.gens[a].name, names.gens[b].name
                            )));
                        }
                    }
                    (Some(p), None) => table[b * n + a] = Some(skew_transform(&p, &sign, deriv)),
                    (None, Some(q)) => table[a * n + b] = Some(skew_transform(&q, &sign, deriv)),
                    (None, None) => match cfg.unlisted {
                        Unlisted::Zero => {
                            table[a * n + b] = Some(LambdaPoly::zero());
                            table[b * n + a] = Some(LambdaPoly::zero());
                        }
                        Unlisted::Error => {
                            return Err(VertexError::UnknownBracket {
                                left: names.gens[a].name.clone(),
                                right: names.gens[b].name.clone(),
                            })
                        }
                    },
                }
            }
        }
        Ok(VertexAlgebra {
            names,
            table: table.into_iter().map(|p| p.unwrap_or_default()).collect(),
            config: cfg.clone(),
        })
    }

    pub fn names(&self) -> &NameTable {
        &self.names
    }

    pub fn generators(&self) -> &[Generator] {
        &self.names.gens
    }

    pub fn len(&self) -> usize {
        self.names.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.gens.is_empty()
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.config
    }

    pub fn id(&self, name: &str) -> Result<GenId, VertexError> {
        self.names
            .id(name)
            .ok_or_else(|| VertexError::UnknownGenerator(name.to_string()))
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.names.gens[id as usize]
    }

    /// The base bracket `[a_λ b]` of two generators.
    pub fn base_bracket(&self, a: GenId, b: GenId) -> &LambdaPoly<Scalar> {
        &self.table[a as usize * self.len() + b as usize]
    }

    /// A generator or alias as a state.
    pub fn state(&self, name: &str) -> Result<State<Scalar>, VertexError> {
        self.names
            .resolve(name)
            .ok_or_else(|| VertexError::UnknownGenerator(name.to_string()))
    }
}

pub(crate) fn koszul(names: &NameTable, a: GenId, b: GenId) -> Scalar {
    if names.is_odd(a) && names.is_odd(b) {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// `∂^k` of a state whose monomials have at most one factor.
pub(crate) fn linear_derivative<C: crate::coeffring::Coeff>(s: &State<C>, k: u16) -> State<C> {
    if k == 0 {
        return s.clone();
    }
    let mut out = State::zero();
    for (m, c) in s.terms() {
        if let Some(f) = m.first() {
            out.add_term(Monomial::single(f.d(k)), c.clone());
        }
    }
    out
}

fn check_linear_entry(names: &NameTable, a: GenId, b: GenId, p: &LambdaPoly<Scalar>) -> Result<(), VertexError> {
    let (ga, gb) = (&names.gens[a as usize], &names.gens[b as usize]);
    let parity_odd = (ga.parity == Parity::Odd) != (gb.parity == Parity::Odd);
    for (j, s) in p.coeffs().iter().enumerate() {
        for (m, _) in s.terms() {
            if m.len() > 1 {
                return Err(VertexError::InconsistentTable(format!(
                    "[{}_λ{}] is not linear in the generators",
                    ga.name, gb.name
                )));
            }
            let expected = ga.weight2 as i64 + gb.weight2 as i64 - 2 * j as i64 - 2;
            if names.monomial_weight2(m) as i64 != expected {
                return Err(VertexError::InconsistentTable(format!(
                    "[{}_λ{}]: λ^{} coefficient has the wrong conformal weight",
                    ga.name, gb.name, j
                )));
            }
            if (names.monomial_parity(m) == Parity::Odd) != parity_odd {
                return Err(VertexError::InconsistentTable(format!(
                    "[{}_λ{}]: λ^{} coefficient has the wrong parity",
                    ga.name, gb.name, j
                )));
            }
        }
    }
    Ok(())
}
