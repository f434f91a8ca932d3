//! Formal K-expression engine: applies the decomposition isomorphisms as
//! rewrite rules over labeled rings, tracks coefficient modes, evaluates
//! against a curated base-fact table, and reproduces the endomorphism-ring
//! worked example.

pub mod eval;
pub mod example;
pub mod expr;
pub mod facts;
pub mod rules;

pub use eval::{evaluate, EvalOutcome, EvalReport};
pub use example::{endo_example, EndoExampleReport};
pub use expr::{Degree, KExpr};
pub use facts::{FactTable, KBaseFact};
pub use rules::{apply_rule, rule_catalog, Binding, KRule};

use crate::abgroup::FgAbGroup;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymError {
    #[error("unknown rule id {0}")]
    UnknownRule(String),
    #[error("binding does not match the rule's hypothesis schema: {0}")]
    HypothesisSchemaMismatch(String),
    #[error("coefficient mode conflict: {0}")]
    ModeConflict(String),
    #[error(
        "mod-{p} universal coefficients with p = 2 (mod 4) do not split; \
         the two sequence endpoints are {tensor} and {tor}"
    )]
    SplitRefused {
        p: u64,
        tensor: FgAbGroup,
        tor: FgAbGroup,
    },
    #[error("malformed fact or label: {0}")]
    BadLabel(String),
}
