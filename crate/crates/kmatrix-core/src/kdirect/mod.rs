//! Direct K-theory oracle for finite rings: K0 from the block
//! decomposition of the semisimple quotient, K1 from units modulo the
//! subgroup generated by commutators and `(1+ab)(1+ba)^{-1}`, induced maps
//! along ring homomorphisms, Mayer-Vietoris exactness checking, and
//! end-to-end verification of the decomposition rules.

pub mod k0;
pub mod k1;
pub mod mv;
pub mod verify;

pub use k0::{induced_k0, k0, K0Data};
pub use k1::{induced_k1, k1, k1_data, K1Data, K1Map};
pub use mv::{mv_exactness, MvReport};
pub use verify::{verify_decomposition, CoeffMode, GroupValue, KReport, RuleInstance};

use crate::finmod::ModuleError;
use crate::finring::RingError;
use crate::matshape::MatError;
use thiserror::Error;

/// Resource limits for the exhaustive parts of the oracle.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Largest ring order for which elements and units are enumerated.
    pub unit_cap: u128,
    /// Largest number of element pairs swept when generating the
    /// Vaserstein subgroup for K1.
    pub pair_budget: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            unit_cap: 1 << 20,
            pair_budget: 1 << 26,
        }
    }
}

#[derive(Debug, Error)]
pub enum KError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("coefficient mode conflict: {0}")]
    ModeConflict(String),
    #[error("unknown rule id {0}")]
    UnknownRule(String),
    #[error("degree {0} has no finite-ring oracle; use the symbolic engine")]
    SymbolicOnly(u8),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl KError {
    /// Whether the error is a resource cap rather than a mathematical or
    /// input failure.
    pub fn is_cap(&self) -> bool {
        matches!(self, KError::Ring(RingError::SizeCapExceeded { .. }))
    }
}
