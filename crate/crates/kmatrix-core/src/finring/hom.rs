//! Ring homomorphisms, quotient rings, and subrings carved out of an
//! ambient ring (corners, centers).

use super::ideal::IdealHandle;
use super::ring::{Elem, FiniteRing, RingRef};
use super::subgroup::{solve_kernel, GroupBasis, Subgroup};
use super::RingError;
use std::sync::Arc;

/// Unital ring homomorphism, stored by generator images.
#[derive(Clone)]
pub struct RingHom {
    pub source: RingRef,
    pub target: RingRef,
    pub images: Vec<Elem>,
}

impl RingHom {
    pub fn new(source: RingRef, target: RingRef, images: Vec<Elem>) -> Result<Self, RingError> {
        if images.len() != source.num_gens() {
            return Err(RingError::BadHom("one image per source generator".into()));
        }
        let images: Vec<Elem> = images.into_iter().map(|v| target.reduce(v)).collect();
        let hom = RingHom {
            source,
            target,
            images,
        };
        hom.validate()?;
        Ok(hom)
    }

    fn validate(&self) -> Result<(), RingError> {
        let k = self.source.num_gens();
        for i in 0..k {
            let d = self.source.orders()[i];
            if !self
                .target
                .is_zero_el(&self.target.scalar_mul(d, &self.images[i]))
            {
                return Err(RingError::BadHom(format!(
                    "image of generator {i} does not respect its additive order"
                )));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let prod_img = self.apply_additive(&self.source.mul_el(
                    &self.source.gen(i),
                    &self.source.gen(j),
                ));
                let img_prod = self.target.mul_el(&self.images[i], &self.images[j]);
                if prod_img != img_prod {
                    return Err(RingError::BadHom(format!(
                        "multiplicativity fails on generators ({i}, {j})"
                    )));
                }
            }
        }
        if self.apply(&self.source.one()) != self.target.one() {
            return Err(RingError::BadHom("identity not preserved".into()));
        }
        Ok(())
    }

    fn apply_additive(&self, x: &[i64]) -> Elem {
        let mut acc = self.target.zero();
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                acc = self
                    .target
                    .add(&acc, &self.target.scalar_mul(c, &self.images[i]));
            }
        }
        acc
    }

    pub fn apply(&self, x: &[i64]) -> Elem {
        self.apply_additive(x)
    }

    pub fn identity(ring: &RingRef) -> RingHom {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            images: (0..ring.num_gens()).map(|i| ring.gen(i)).collect(),
        }
    }

    pub fn compose(&self, then: &RingHom) -> Result<RingHom, RingError> {
        if self.target != then.source {
            return Err(RingError::ParentMismatch);
        }
        RingHom::new(
            self.source.clone(),
            then.target.clone(),
            self.images.iter().map(|v| then.apply(v)).collect(),
        )
    }

    /// Image of the whole source as an additive subgroup of the target.
    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::from_gens(self.target.orders(), &self.images)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup().is_full()
    }

    /// Additive kernel (a two-sided ideal for unital homs).
    pub fn kernel_subgroup(&self) -> Subgroup {
        let k = self.source.num_gens();
        let kt = self.target.num_gens();
        let mut constraints = Vec::new();
        for c in 0..kt {
            let row: Vec<i64> = (0..k).map(|l| self.images[l][c]).collect();
            constraints.push((row, self.target.orders()[c]));
        }
        solve_kernel(self.source.orders(), &constraints)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_subgroup().is_trivial()
    }
}

impl std::fmt::Debug for RingHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RingHom({:?} -> {:?}, images={:?})",
            self.source, self.target, self.images
        )
    }
}

/// Quotient by a two-sided ideal, with the canonical surjection.
///
/// The additive structure of the quotient is recomputed into invariant
/// cyclic form, so `|R/I| * |I| = |R|` holds by construction.
pub fn quotient_ring(ring: &RingRef, ideal: &IdealHandle) -> Result<(RingRef, RingHom), RingError> {
    let (q, hom, _) = quotient_ring_with_basis(ring, ideal)?;
    Ok((q, hom))
}

/// Like [`quotient_ring`] but also returns the group basis whose generator
/// representatives form a section of the surjection.
pub fn quotient_ring_with_basis(
    ring: &RingRef,
    ideal: &IdealHandle,
) -> Result<(RingRef, RingHom, GroupBasis), RingError> {
    if ideal.ring != *ring {
        return Err(RingError::ParentMismatch);
    }
    if !ideal.is_two_sided() {
        return Err(RingError::NotTwoSided);
    }
    let basis = ring.full_subgroup().quotient_structure(&ideal.basis);
    let reps: Vec<Elem> = basis.gens().to_vec();
    let orders = basis.orders().to_vec();
    let n = reps.len();
    let mut mul = vec![vec![vec![0i64; n]; n]; n];
    for s in 0..n {
        for t in 0..n {
            mul[s][t] = basis
                .express(&ring.mul_el(&reps[s], &reps[t]))
                .expect("full numerator");
        }
    }
    let one = basis.express(&ring.one()).expect("full numerator");
    let q = Arc::new(FiniteRing::make_ring(orders, mul, one).expect("quotient ring is a ring"));
    let images: Vec<Elem> = (0..ring.num_gens())
        .map(|i| basis.express(&ring.gen(i)).expect("full numerator"))
        .collect();
    let hom = RingHom::new(ring.clone(), q.clone(), images)?;
    debug_assert_eq!(q.order() * ideal.order(), ring.order());
    Ok((q, hom, basis))
}

/// A subring presented by a multiplicatively closed subgroup and its own
/// identity element (used for corners eRe and centers).
pub struct Subring {
    pub ring: RingRef,
    pub basis: GroupBasis,
    /// Embedding of subring generator `t` into the ambient ring.
    pub gens: Vec<Elem>,
}

impl Subring {
    pub fn embed(&self, x: &[i64]) -> Elem {
        self.basis.lift(x)
    }

    pub fn project(&self, ambient: &[i64]) -> Option<Elem> {
        self.basis.express(ambient)
    }
}

/// Build a FiniteRing structure on a multiplicatively closed subgroup of
/// `ring` with identity `one_el`.
pub fn subring_from_subgroup(
    ring: &RingRef,
    sub: &Subgroup,
    one_el: &[i64],
) -> Result<(RingRef, Subring), RingError> {
    if !sub.contains(one_el) {
        return Err(RingError::Shape("identity not in subgroup".into()));
    }
    let basis = sub.group_structure();
    let reps: Vec<Elem> = basis.gens().to_vec();
    let orders = basis.orders().to_vec();
    let n = reps.len();
    let mut mul = vec![vec![vec![0i64; n]; n]; n];
    for s in 0..n {
        for t in 0..n {
            let prod = ring.mul_el(&reps[s], &reps[t]);
            mul[s][t] = basis
                .express(&prod)
                .ok_or_else(|| RingError::Shape("subgroup not closed under multiplication".into()))?;
        }
    }
    let one = basis.express(one_el).expect("checked membership");
    let sr = Arc::new(FiniteRing::make_ring(orders, mul, one)?);
    Ok((
        sr,
        Subring {
            ring: ring.clone(),
            basis,
            gens: reps,
        },
    ))
}

/// Corner ring uRu for an idempotent u, with its addressing data.
pub fn corner_ring_of(ring: &RingRef, u: &[i64]) -> Result<(RingRef, Subring), RingError> {
    let u = ring.reduce(u.to_vec());
    if ring.mul_el(&u, &u) != u {
        return Err(RingError::NotIdempotent);
    }
    let gens: Vec<Elem> = (0..ring.num_gens())
        .map(|l| ring.mul_el(&ring.mul_el(&u, &ring.gen(l)), &u))
        .collect();
    let sub = Subgroup::from_gens(ring.orders(), &gens);
    subring_from_subgroup(ring, &sub, &u)
}

/// Center of the ring as a subgroup.
pub fn center_subgroup(ring: &FiniteRing) -> Subgroup {
    let k = ring.num_gens();
    let mut constraints = Vec::new();
    for i in 0..k {
        let gi = ring.gen(i);
        // z*g_i - g_i*z = 0 componentwise; coefficients of z_l
        let left: Vec<Elem> = (0..k).map(|l| ring.mul_el(&ring.gen(l), &gi)).collect();
        let right: Vec<Elem> = (0..k).map(|l| ring.mul_el(&gi, &ring.gen(l))).collect();
        for c in 0..k {
            let row: Vec<i64> = (0..k).map(|l| left[l][c] - right[l][c]).collect();
            constraints.push((row, ring.orders()[c]));
        }
    }
    solve_kernel(ring.orders(), &constraints)
}
