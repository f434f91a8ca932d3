//! Builders and hypothesis checkers for the matrix-subring shapes:
//! triangular patterns with ideal entries, exponent patterns, chain
//! patterns, poset rings, bimodule rings, corner rings, Milnor squares,
//! and companion rings of derived-equivalence type.

pub mod bimodule;
pub mod companion;
pub mod component;
pub mod corner;
pub mod milnor;
pub mod pattern;
pub mod poset;

pub use bimodule::{bimodule_ring, Bimodule, BimoduleRing};
pub use companion::companion_ring;
pub use component::{Addressing, ComponentMatrix, QuotComponent};
pub use corner::corner_of_pattern;
pub use milnor::{milnor_square_thm1, MilnorSquare};
pub use pattern::{ConditionReport, MatrixPattern, PatternSpec, ShapeKind};
pub use poset::poset_ring;

use crate::finmod::ModuleError;
use crate::finring::{Elem, RingError};
use thiserror::Error;

/// A violated condition with the element that witnesses the failure.
#[derive(Debug, Clone)]
pub struct Violation {
    pub condition: String,
    pub witness: Option<Elem>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} (witness {:?})", self.condition, w),
            None => write!(f, "{}", self.condition),
        }
    }
}

#[derive(Debug, Error)]
pub enum MatError {
    #[error("shape conditions not verified: {}", format_violations(.0))]
    ConditionsNotVerified(Vec<Violation>),
    #[error("poset labels are not a linear extension")]
    NotLinearlyExtended,
    #[error("square is not a pullback")]
    NotPullback,
    #[error("square does not satisfy the Milnor condition")]
    NotMilnor,
    #[error("operation needs a different shape kind: {0}")]
    WrongKind(String),
    #[error("bimodule actions are inconsistent: {0}")]
    ActionMismatch(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .take(3)
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
