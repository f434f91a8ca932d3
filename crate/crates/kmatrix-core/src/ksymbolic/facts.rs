//! The curated base-fact table: K-group values for labeled rings, as data.
//!
//! The shipped table carries the finite-field family, the degree-0/1
//! values for the integers, and the polynomial-ring alias; users may
//! extend it. Every evaluation carries fact provenance.

use super::SymError;
use crate::abgroup::FgAbGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FactKind {
    /// Exact values at specific degrees.
    #[serde(rename = "table")]
    Table { values: BTreeMap<String, FgAbGroup> },
    /// `K_0(F_q) = Z`, `K_{2m-1}(F_q) = Z/(q^m - 1)`, `K_{2m}(F_q) = 0`
    /// for m >= 1; matches labels of the form `F_<q>`.
    #[serde(rename = "finite-field")]
    FiniteFieldFamily,
    /// The label has the same K-groups as another label.
    #[serde(rename = "alias")]
    Alias { to: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KBaseFact {
    pub label: String,
    #[serde(flatten)]
    pub kind: FactKind,
    pub provenance: String,
}

#[derive(Clone, Debug, Default)]
pub struct FactTable {
    facts: Vec<KBaseFact>,
}

/// Outcome of a single-label lookup. Unknown carries the label after
/// alias resolution, so missing values are reported in reduced form.
pub enum FactValue {
    Known(FgAbGroup, String),
    Unknown { resolved: String },
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut n = q;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

impl FactTable {
    pub fn from_facts(facts: Vec<KBaseFact>) -> Self {
        FactTable { facts }
    }

    pub fn from_json(json: &str) -> Result<Self, SymError> {
        let facts: Vec<KBaseFact> =
            serde_json::from_str(json).map_err(|e| SymError::BadLabel(e.to_string()))?;
        Ok(FactTable { facts })
    }

    /// The fact table shipped with the crate.
    pub fn builtin() -> Self {
        FactTable::from_json(include_str!("../../data/kfacts.json"))
            .expect("shipped fact table parses")
    }

    pub fn push(&mut self, fact: KBaseFact) {
        self.facts.push(fact);
    }

    pub fn facts(&self) -> &[KBaseFact] {
        &self.facts
    }

    /// Value of `K_degree(label)`, if the table determines it.
    pub fn lookup(&self, label: &str, degree: u32) -> Result<FactValue, SymError> {
        self.lookup_inner(label, degree, 0)
    }

    fn lookup_inner(&self, label: &str, degree: u32, depth: u8) -> Result<FactValue, SymError> {
        if depth > 8 {
            return Err(SymError::BadLabel(format!(
                "alias chain too deep at {label}"
            )));
        }
        for fact in &self.facts {
            match &fact.kind {
                FactKind::Table { values } => {
                    if fact.label == label {
                        if let Some(g) = values.get(&degree.to_string()) {
                            return Ok(FactValue::Known(
                                g.clone(),
                                format!("{label}: {}", fact.provenance),
                            ));
                        }
                    }
                }
                FactKind::Alias { to } => {
                    if fact.label == label {
                        return match self.lookup_inner(to, degree, depth + 1)? {
                            FactValue::Known(g, prov) => Ok(FactValue::Known(
                                g,
                                format!("{label} -> {prov}; {}", fact.provenance),
                            )),
                            FactValue::Unknown { resolved } => {
                                Ok(FactValue::Unknown { resolved })
                            }
                        };
                    }
                }
                FactKind::FiniteFieldFamily => {
                    if let Some(q) = parse_finite_field(label) {
                        if !is_prime_power(q) {
                            return Err(SymError::BadLabel(format!(
                                "{label} is not a finite field: {q} is not a prime power"
                            )));
                        }
                        let g = finite_field_k(q, degree)?;
                        return Ok(FactValue::Known(
                            g,
                            format!("{label}: {}", fact.provenance),
                        ));
                    }
                }
            }
        }
        Ok(FactValue::Unknown {
            resolved: label.to_string(),
        })
    }
}

fn parse_finite_field(label: &str) -> Option<u64> {
    label.strip_prefix("F_")?.parse().ok()
}

/// Quillen's values for a finite field of order q.
pub fn finite_field_k(q: u64, degree: u32) -> Result<FgAbGroup, SymError> {
    if degree == 0 {
        return Ok(FgAbGroup::free(1));
    }
    if degree % 2 == 0 {
        return Ok(FgAbGroup::trivial());
    }
    let m = degree.div_ceil(2);
    let qm = checked_pow(q, m)
        .ok_or_else(|| SymError::BadLabel(format!("q^m overflows for q={q}, m={m}")))?;
    Ok(FgAbGroup::cyclic(qm - 1))
}
