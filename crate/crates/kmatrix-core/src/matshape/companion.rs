//! Companion ring of a triangular pattern with full lower entries: the
//! last column is replaced by quotients, a zero row and a duplicated
//! quotient corner are appended. The companion is derived-equivalence
//! shaped, so its K-groups must agree with the source pattern's.

use super::component::{Addressing, ComponentMatrix, QuotComponent};
use super::pattern::{MatrixPattern, PatternSpec, ShapeKind};
use super::MatError;
use crate::finring::RingRef;

/// Build the companion of an `n x n` pattern `B` with full lower entries
/// and uppers `I_{ij}`:
///
/// ```text
/// C[i][j]   = B[i][j]                    for i, j <= n-2
/// C[i][n-1] = I_{i,n-2} / I_{i,n-1}      for i <= n-3
/// C[n-2][n-1] = C[n-1][n-1] = R / I_{n-2,n-1}
/// C[n-1][j] = 0                          for j <= n-2
/// ```
pub fn companion_ring(pattern: &MatrixPattern) -> Result<(RingRef, Addressing), MatError> {
    if !matches!(pattern.kind, ShapeKind::SThm2 | ShapeKind::BLemma32) {
        return Err(MatError::WrongKind(
            "companion construction needs a full-lower triangular pattern".into(),
        ));
    }
    let PatternSpec::SLike { uppers, .. } = &pattern.spec else {
        return Err(MatError::WrongKind("companion needs upper-ideal data".into()));
    };
    let named = pattern.check_conditions();
    if !named.pass() {
        return Err(MatError::ConditionsNotVerified(named.violations));
    }
    let n = pattern.n;
    if n < 2 {
        return Err(MatError::WrongKind("companion needs n >= 2".into()));
    }
    let ring = &pattern.ring;
    let last = n - 1;
    let corner_den = uppers[&(n - 2, last)].basis.clone();
    let comps: Vec<Vec<QuotComponent>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == last {
                        if j == last {
                            QuotComponent::quotient(ring.full_subgroup(), corner_den.clone())
                        } else {
                            QuotComponent::zero(ring)
                        }
                    } else if j == last {
                        if i == n - 2 {
                            QuotComponent::quotient(ring.full_subgroup(), corner_den.clone())
                        } else {
                            QuotComponent::quotient(
                                uppers[&(i, n - 2)].basis.clone(),
                                uppers[&(i, last)].basis.clone(),
                            )
                        }
                    } else {
                        QuotComponent::plain(pattern.entry(i, j), ring)
                    }
                })
                .collect()
        })
        .collect();
    ComponentMatrix {
        ring: ring.clone(),
        n,
        comps,
    }
    .build()
}
