//! Exact algebra for K-groups of finite rings and matrix subrings.
//!
//! The crate has three layers:
//!
//! * substrate — [`abgroup`] (f.g. abelian groups, Smith normal form),
//!   [`finring`] (finite rings by structure constants), [`finmod`]
//!   (finite modules, Hom/Ext, approximation and split-sequence checks);
//! * builders — [`matshape`] (matrix subring patterns, Milnor squares,
//!   poset and bimodule rings, companion rings), [`gvtools`] (GV-ideal
//!   detection and endomorphism rings of ideal chains);
//! * verdicts — [`kdirect`] (direct K0/K1 oracles, induced maps,
//!   Mayer-Vietoris exactness, decomposition verification) and
//!   [`ksymbolic`] (formal rewriting of K-expressions with coefficient
//!   modes and a curated base-fact table).
//!
//! All values are immutable after construction and all operations are
//! pure functions, so everything here is safe to use from multiple
//! threads.

pub mod abgroup;
pub mod finring;
pub mod finmod;
pub mod matshape;
pub mod kdirect;
pub mod ksymbolic;
pub mod gvtools;

pub use abgroup::{FgAbGroup, LocalizedAbGroup};
pub use finring::{FiniteRing, IdealHandle, RingHom, Side};
