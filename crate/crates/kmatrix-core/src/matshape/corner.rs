//! Corner rings of built patterns: for an idempotent e of the ambient
//! ring, the corner by diag(e, ..., e) has components e B_{ij} e.

use super::component::Addressing;
use super::MatError;
use crate::finring::hom::{corner_ring_of, Subring};
use crate::finring::{Elem, RingError, RingRef};

/// Corner of a built pattern ring by an ambient idempotent `e`.
pub fn corner_of_pattern(
    built: &RingRef,
    addr: &Addressing,
    e: &Elem,
) -> Result<(RingRef, Subring), MatError> {
    let ambient = &addr.ambient;
    let e = ambient.reduce(e.to_vec());
    if ambient.mul_el(&e, &e) != e {
        return Err(MatError::Ring(RingError::NotIdempotent));
    }
    // diag(e, ..., e) inside the built ring
    let mut diag = built.zero();
    for i in 0..addr.n {
        let part = addr.embed(i, i, &e).ok_or_else(|| {
            MatError::WrongKind(format!("idempotent not in diagonal component {i}"))
        })?;
        diag = built.add(&diag, &part);
    }
    Ok(corner_ring_of(built, &diag)?)
}
