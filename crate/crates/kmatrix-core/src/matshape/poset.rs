//! Poset-indexed matrix rings B(R, I, P).

use super::component::Addressing;
use super::pattern::{MatrixPattern, PatternSpec, ShapeKind};
use super::MatError;
use crate::finring::{IdealHandle, RingRef};

/// Build the matrix ring with entries `R` at positions where `a_j <= a_i`
/// and `I` elsewhere. The poset is given by its covering/less-or-equal
/// pairs on labels `0..n`; labels must be a linear extension
/// (`a_i <= a_j` implies `i <= j`).
pub fn poset_ring(
    ring: &RingRef,
    ideal: &IdealHandle,
    n: usize,
    relations: &[(usize, usize)],
) -> Result<(MatrixPattern, RingRef, Addressing), MatError> {
    if ideal.ring != *ring {
        return Err(MatError::Ring(crate::finring::RingError::ParentMismatch));
    }
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for &(a, b) in relations {
        if a >= n || b >= n {
            return Err(MatError::WrongKind(format!(
                "poset relation ({a}, {b}) out of range for n = {n}"
            )));
        }
        leq[a][b] = true;
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    // antisymmetry and linear extension
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(MatError::NotLinearlyExtended);
            }
            if leq[i][j] && i > j {
                return Err(MatError::NotLinearlyExtended);
            }
        }
    }
    let pattern = MatrixPattern::from_spec(
        ring.clone(),
        n,
        ShapeKind::Poset,
        PatternSpec::Poset {
            ideal: ideal.clone(),
            leq,
        },
    );
    let (built, addr) = pattern.build_subring()?;
    Ok((pattern, built, addr))
}
