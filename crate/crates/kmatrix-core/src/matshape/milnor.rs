//! Milnor squares: pullback squares of rings with a surjective leg.

use super::pattern::{MatrixPattern, PatternSpec, ShapeKind};
use super::{MatError, Violation};
use crate::finring::subgroup::Subgroup;
use crate::finring::{ideal_closure, quotient_ring, IdealHandle, RingHom, RingRef, Side};

/// A commuting square of ring maps
/// ```text
///     r  --f1--> r1
///     |h2        |h1
///     v          v
///     r2 --f2--> r0
/// ```
/// with at least one of `f2`, `h1` surjective and `r` the pullback.
pub struct MilnorSquare {
    pub r: RingRef,
    pub r1: RingRef,
    pub r2: RingRef,
    pub r0: RingRef,
    pub f1: RingHom,
    pub h2: RingHom,
    pub h1: RingHom,
    pub f2: RingHom,
}

impl MilnorSquare {
    /// The Milnor condition: one of the two maps into the corner surjective.
    pub fn is_milnor(&self) -> bool {
        self.h1.is_surjective() || self.f2.is_surjective()
    }

    /// Verify commutativity, the Milnor condition, and the pullback
    /// property `r = {(a, b) in r1 x r2 : h1(a) = f2(b)}` by exact order
    /// count.
    pub fn validate(&self) -> Result<(), MatError> {
        for i in 0..self.r.num_gens() {
            let g = self.r.gen(i);
            if self.h1.apply(&self.f1.apply(&g)) != self.f2.apply(&self.h2.apply(&g)) {
                return Err(MatError::ConditionsNotVerified(vec![Violation {
                    condition: format!("square does not commute on generator {i}"),
                    witness: Some(g),
                }]));
            }
        }
        if !self.is_milnor() {
            return Err(MatError::NotMilnor);
        }
        // injectivity of (f1, h2): kernels intersect trivially
        let k1 = self.f1.kernel_subgroup();
        let k2 = self.h2.kernel_subgroup();
        if !k1.intersection(&k2).is_trivial() {
            return Err(MatError::NotPullback);
        }
        // order of the fibered product: |ker(h1 - f2 : r1 + r2 -> r0)|
        let mut orders = self.r1.orders().to_vec();
        orders.extend_from_slice(self.r2.orders());
        let k0 = self.r0.num_gens();
        let mut gen_images: Vec<Vec<i64>> = Vec::new();
        for i in 0..self.r1.num_gens() {
            gen_images.push(self.h1.apply(&self.r1.gen(i)));
        }
        for i in 0..self.r2.num_gens() {
            let img = self.f2.apply(&self.r2.gen(i));
            gen_images.push(self.r0.neg(&img));
        }
        let constraints: Vec<(Vec<i64>, i64)> = (0..k0)
            .map(|c| {
                let row: Vec<i64> = gen_images.iter().map(|img| img[c]).collect();
                (row, self.r0.orders()[c])
            })
            .collect();
        let fiber = crate::finring::subgroup::solve_kernel(&orders, &constraints);
        if fiber.order() != self.r.order() {
            return Err(MatError::NotPullback);
        }
        Ok(())
    }
}

/// The square used to localize the triangular reduction: from an S-thm1
/// pattern, build `B` (the pattern ring), `A` (the same pattern with full
/// lower entries), the ideal `J` carrying the lower ideal on and below the
/// diagonal, and the two quotients.
pub fn milnor_square_thm1(pattern: &MatrixPattern) -> Result<MilnorSquare, MatError> {
    if pattern.kind != ShapeKind::SThm1 {
        return Err(MatError::WrongKind(
            "Milnor square construction needs an S-thm1 pattern".into(),
        ));
    }
    let PatternSpec::SLike { lower, uppers } = &pattern.spec else {
        return Err(MatError::WrongKind(
            "Milnor square construction needs an S-thm1 pattern".into(),
        ));
    };
    let n = pattern.n;
    let ring = &pattern.ring;
    let (b, b_addr) = pattern.build_subring()?;
    let a_pattern = MatrixPattern::from_spec(
        ring.clone(),
        n,
        ShapeKind::SThm2,
        PatternSpec::SLike {
            lower: ring.full_subgroup(),
            uppers: uppers.clone(),
        },
    );
    let (a, a_addr) = a_pattern.build_subring()?;

    // J: the lower ideal on/below the diagonal, the pattern uppers above
    let j_parts: Vec<Vec<Subgroup>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i < j {
                        uppers[&(i, j)].basis.clone()
                    } else {
                        lower.clone()
                    }
                })
                .collect()
        })
        .collect();
    let j_in_a = a_addr
        .embed_componentwise(&j_parts)
        .expect("J components sit inside A's entries");
    let j_in_b = b_addr
        .embed_componentwise(&j_parts)
        .expect("J components sit inside B's entries");

    let j_ideal_a = ideal_closure(&a, &j_in_a.basis().to_vec(), Side::TwoSided);
    if j_ideal_a.basis != j_in_a {
        return Err(MatError::ConditionsNotVerified(vec![Violation {
            condition: "J is not an ideal of A".into(),
            witness: None,
        }]));
    }
    let j_ideal_b = IdealHandle {
        ring: b.clone(),
        side: Side::TwoSided,
        gens: j_in_b.basis().to_vec(),
        basis: j_in_b,
    };

    // f1: B -> A by componentwise embedding of generator representatives
    let mut f1_images = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let comp = b_addr.component(i, j);
            for rep in comp.gens() {
                let img = a_addr
                    .embed(i, j, rep)
                    .expect("B entries contained in A entries");
                f1_images.push(img);
            }
        }
    }
    let f1 = RingHom::new(b.clone(), a.clone(), f1_images)?;

    let (b_quot, h2) = quotient_ring(&b, &j_ideal_b)?;
    let (a_quot, h1) = quotient_ring(&a, &j_ideal_a)?;

    // f2: B/J -> A/J induced on section representatives
    let section = b.full_subgroup().quotient_structure(&j_ideal_b.basis);
    let f2_images: Vec<Vec<i64>> = section
        .gens()
        .iter()
        .map(|rep| h1.apply(&f1.apply(rep)))
        .collect();
    let f2 = RingHom::new(b_quot.clone(), a_quot.clone(), f2_images)?;

    let square = MilnorSquare {
        r: b,
        r1: a,
        r2: b_quot,
        r0: a_quot,
        f1,
        h2,
        h1,
        f2,
    };
    square.validate()?;
    Ok(square)
}
