//! Finite modules over finite rings: Hom groups, Ext^1 via free
//! presentations, add(M)-approximations, and the split-sequence checker.

pub mod approx;
pub mod endring;
pub mod ext;
pub mod hom;
pub mod map;
pub mod module;

pub use approx::{in_add, is_approximation, is_dsplit, ApproxResult, DsplitReport};
pub use endring::{endomorphism_ring, EndRing};
pub use ext::ext1;
pub use hom::{hom_group, HomGroup};
pub use map::ModuleMap;
pub use module::{FinModule, ModRef, ModulePresentation};


use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("action is not well defined: {0}")]
    ActionMismatch(String),
}
