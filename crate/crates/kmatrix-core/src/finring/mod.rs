//! Finite rings with identity: structure-constant presentations, ideals,
//! quotients, homomorphisms, the Jacobson radical, unit groups, and the
//! block decomposition of the semisimple quotient.

pub mod blocks;
pub mod hom;
pub mod ideal;
pub mod json;
pub mod radical;
pub mod ring;
pub mod subgroup;
pub mod units;

pub use blocks::{block_count, BlockData};
pub use hom::{quotient_ring, RingHom};
pub use ideal::{colon_ideal, ideal_closure, IdealHandle, Side};
pub use radical::jacobson_radical;
pub use ring::{Elem, FiniteRing, RingRef};
pub use subgroup::{GroupBasis, Subgroup};
pub use units::{unit_group, UnitGroup};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("associativity fails on generator triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("identity law fails on generator {0}")]
    IdentityViolation(usize),
    #[error("structure constants of g_{0} * g_{1} do not respect additive orders")]
    OrderInconsistency(usize, usize),
    #[error("malformed presentation: {0}")]
    Shape(String),
    #[error("ideal is not two-sided")]
    NotTwoSided,
    #[error("operands belong to different parent rings")]
    ParentMismatch,
    #[error("enumeration of size {size} exceeds the configured cap {cap}")]
    SizeCapExceeded { size: u128, cap: u128 },
    #[error("homomorphism is not well defined: {0}")]
    BadHom(String),
    #[error("element is not idempotent")]
    NotIdempotent,
}
