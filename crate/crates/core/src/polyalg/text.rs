//! Canonical text format.
//!
//! A term list is a JSON array `[{"c":"<p>/<q>","e":[..]},...]` in canonical
//! (descending grlex) order with coefficients in lowest terms; integers are
//! written without a denominator. A full document adds the arena:
//! `{"vars":[..],"terms":[..]}`. Output is compact and byte-reproducible.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Monomial, Polynomial, VariableArena};
use crate::error::{Error, Result};

/// One serialized term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRepr {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

fn parse_coefficient(text: &str) -> Result<BigRational> {
    let c = BigRational::from_str(text)
        .map_err(|_| Error::Parse(format!("bad coefficient `{text}`")))?;
    // lowest terms, positive denominator, no "/1"
    if c.to_string() != text {
        return Err(Error::Parse(format!(
            "coefficient `{text}` is not in canonical form (expected `{c}`)"
        )));
    }
    Ok(c)
}

impl Polynomial {
    pub fn to_term_reprs(&self) -> Vec<TermRepr> {
        self.terms()
            .map(|(m, c)| TermRepr {
                c: c.to_string(),
                e: m.exponents().to_vec(),
            })
            .collect()
    }

    pub fn from_term_reprs(arena: &VariableArena, terms: &[TermRepr]) -> Result<Polynomial> {
        let mut map = BTreeMap::new();
        for t in terms {
            if t.e.len() != arena.len() {
                return Err(Error::Parse(format!(
                    "exponent vector {:?} has length {}, arena has {}",
                    t.e,
                    t.e.len(),
                    arena.len()
                )));
            }
            let c = parse_coefficient(&t.c)?;
            if c.is_zero() {
                return Err(Error::ZeroCoefficient(t.e.clone()));
            }
            if map.insert(Monomial::from_exponents(&t.e), c).is_some() {
                return Err(Error::Parse(format!("duplicate term {:?}", t.e)));
            }
        }
        Ok(Polynomial::from_map_unchecked(arena, map))
    }

    /// Term list only, e.g. `[{"c":"1","e":[1,0]},{"c":"1","e":[0,0]}]`.
    pub fn serialize_terms(&self) -> String {
        serde_json::to_string(&self.to_term_reprs()).expect("term list serializes")
    }

    pub fn parse_terms(text: &str, arena: &VariableArena) -> Result<Polynomial> {
        let terms: Vec<TermRepr> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_term_reprs(arena, &terms)
    }

    /// Self-describing document with the arena header.
    pub fn serialize(&self) -> String {
        let doc = Document {
            vars: self.arena().names().to_vec(),
            terms: self.to_term_reprs(),
        };
        serde_json::to_string(&doc).expect("document serializes")
    }

    pub fn parse(text: &str) -> Result<Polynomial> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let arena = VariableArena::new(doc.vars)?;
        Self::from_term_reprs(&arena, &doc.terms)
    }
}
