use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hilbert::BasisState;

/// Photon number `coefficient·n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occupation {
    pub n_coefficient: usize,
    pub offset: usize,
}

impl Occupation {
    pub fn at(&self, n: usize) -> usize {
        self.n_coefficient * n + self.offset
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n_coefficient, self.offset) {
            (0, k) => write!(f, "{k}"),
            (1, 0) => f.write_str("n"),
            (1, k) => write!(f, "n+{k}"),
            (c, 0) => write!(f, "{c}n"),
            (c, k) => write!(f, "{c}n+{k}"),
        }
    }
}

impl FromStr for Occupation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("bad occupation `{s}`"));
        let s = s.trim();
        let (n_part, offset) = match s.split_once('+') {
            Some((a, b)) => (a.trim(), b.trim().parse::<usize>().map_err(|_| bad())?),
            None if s.contains('n') => (s, 0),
            None => {
                return Ok(Occupation {
                    n_coefficient: 0,
                    offset: s.parse().map_err(|_| bad())?,
                })
            }
        };
        let coeff = n_part.strip_suffix('n').ok_or_else(bad)?;
        let n_coefficient = if coeff.is_empty() {
            1
        } else {
            coeff.parse().map_err(|_| bad())?
        };
        Ok(Occupation {
            n_coefficient,
            offset,
        })
    }
}

/// Basis state whose photon numbers may depend on a free integer `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTemplate {
    pub occupations: Vec<Occupation>,
    pub excited: Vec<bool>,
}

impl StateTemplate {
    pub fn instantiate(&self, n: usize) -> BasisState {
        BasisState::new(
            self.occupations.iter().map(|o| o.at(n)).collect(),
            self.excited.clone(),
        )
    }

    pub fn is_parametric(&self) -> bool {
        self.occupations.iter().any(|o| o.n_coefficient > 0)
    }

    /// Excitation number as `(n coefficient, constant)`.
    pub fn excitations(&self) -> (i64, i64) {
        let n: usize = self.occupations.iter().map(|o| o.n_coefficient).sum();
        let k: usize = self.occupations.iter().map(|o| o.offset).sum::<usize>()
            + self.excited.iter().filter(|&&e| e).count();
        (n as i64, k as i64)
    }
}

impl fmt::Display for StateTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .occupations
            .iter()
            .map(|o| o.to_string())
            .chain(
                self.excited
                    .iter()
                    .map(|&e| if e { "e" } else { "g" }.to_string()),
            )
            .collect();
        write!(f, "|{}⟩", parts.join(","))
    }
}

impl FromStr for StateTemplate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('|')
            .trim_end_matches('⟩')
            .trim_end_matches('>');
        let mut occupations = Vec::new();
        let mut excited = Vec::new();
        for tok in body.split(',').map(str::trim) {
            match tok {
                "g" | "e" => excited.push(tok == "e"),
                _ if !excited.is_empty() => {
                    return Err(Error::InvalidSpec(format!("photon number after qubit in `{s}`")))
                }
                _ => occupations.push(tok.parse()?),
            }
        }
        Ok(StateTemplate { occupations, excited })
    }
}

/// Integer relation `Σ c_s ω_s = 0` over frequency symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(String, i64)>,
}

impl Relation {
    pub fn coefficient(&self, symbol: &str) -> i64 {
        self.terms
            .iter()
            .filter(|(s, _)| s == symbol)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(s, _)| s.as_str())
    }
}

fn side(terms: &[(String, i64)]) -> String {
    terms
        .iter()
        .map(|(s, c)| match c.abs() {
            1 => format!("ω_{s}"),
            k => format!("{k}ω_{s}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lhs, rhs): (Vec<_>, Vec<_>) = self.terms.iter().cloned().partition(|(_, c)| *c > 0);
        write!(f, "{} = {}", side(&lhs), side(&rhs))
    }
}

fn parse_side(s: &str, sign: i64, out: &mut Vec<(String, i64)>) -> Result<()> {
    for term in s.split('+').map(str::trim) {
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::InvalidSpec(format!("bad relation term `{term}`")))?;
        let (k, sym) = term.split_at(split);
        let k: i64 = if k.is_empty() { 1 } else { k.parse().unwrap() };
        let sym = sym.trim_start_matches("ω_").trim();
        if sym.is_empty() || !sym.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(Error::InvalidSpec(format!("bad relation term `{term}`")));
        }
        match out.iter_mut().find(|(s, _)| s == sym) {
            Some((_, c)) => *c += sign * k,
            None => out.push((sym.to_string(), sign * k)),
        }
    }
    Ok(())
}

/// Parses `a + q = 2b` style relations.
impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidSpec(format!("relation `{s}` has no `=`")))?;
        let mut terms = Vec::new();
        parse_side(l, 1, &mut terms)?;
        parse_side(r, -1, &mut terms)?;
        terms.retain(|(_, c)| *c != 0);
        Ok(Relation { terms })
    }
}
