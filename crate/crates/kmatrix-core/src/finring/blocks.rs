//! Block decomposition of the semisimple quotient R/rad(R).
//!
//! A finite semisimple ring is a product of matrix rings over finite
//! fields. The block count is the number of primitive idempotents of the
//! center, and per-block data (field order, matrix size) is recovered from
//! subgroup orders.

use super::hom::{center_subgroup, quotient_ring_with_basis, subring_from_subgroup, RingHom};
use super::ideal::IdealHandle;
use super::radical::jacobson_radical;
use super::ring::{Elem, FiniteRing, RingRef};
use super::subgroup::Subgroup;
use super::RingError;

const CENTER_ENUM_CAP: u128 = 1 << 16;

/// Decomposition data for R/rad(R).
pub struct BlockData {
    pub radical: IdealHandle,
    pub semisimple: RingRef,
    pub to_semisimple: RingHom,
    /// Central primitive idempotents of the semisimple quotient.
    pub idempotents_s: Vec<Elem>,
    /// Idempotent lifts in R of the central primitive idempotents.
    pub idempotents_r: Vec<Elem>,
    /// |B_i| for each simple block.
    pub block_orders: Vec<u128>,
    /// q_i = |Z(B_i)| (a finite field order).
    pub field_orders: Vec<u128>,
    /// n_i with |B_i| = q_i^(n_i^2).
    pub matrix_sizes: Vec<u32>,
}

impl BlockData {
    pub fn count(&self) -> usize {
        self.idempotents_s.len()
    }
}

/// Idempotent in the cyclic semigroup generated by `a` (unique for finite
/// commutative rings), found by cycle detection on powers.
fn idempotent_part(ring: &FiniteRing, a: &Elem) -> Elem {
    let mut seen: std::collections::HashMap<u128, u64> = std::collections::HashMap::new();
    let mut x = a.clone();
    let mut k = 1u64;
    let (mu, lambda);
    loop {
        if let Some(&first) = seen.get(&ring.encode(&x)) {
            mu = first;
            lambda = k - first;
            break;
        }
        seen.insert(ring.encode(&x), k);
        x = ring.mul_el(&x, a);
        k += 1;
    }
    // exponent m >= mu with lambda | m
    let mut m = lambda * mu.div_ceil(lambda);
    if m == 0 {
        m = lambda;
    }
    let mut pow = a.clone();
    for _ in 1..m {
        pow = ring.mul_el(&pow, a);
    }
    debug_assert_eq!(ring.mul_el(&pow, &pow), pow);
    pow
}

/// Primitive idempotents of a finite commutative ring, by repeated
/// splitting until no element refines the decomposition.
fn primitive_idempotents(ring: &FiniteRing) -> Result<Vec<Elem>, RingError> {
    if ring.is_zero_ring() {
        return Ok(vec![]);
    }
    if ring.order() > CENTER_ENUM_CAP {
        return Err(RingError::SizeCapExceeded {
            size: ring.order(),
            cap: CENTER_ENUM_CAP,
        });
    }
    let mut prims: Vec<Elem> = vec![ring.one()];
    loop {
        let mut changed = false;
        'outer: for z in ring.elements() {
            for (i, e) in prims.iter().enumerate() {
                let a = ring.mul_el(e, &z);
                if ring.is_zero_el(&a) {
                    continue;
                }
                let f = idempotent_part(ring, &a);
                if !ring.is_zero_el(&f) && f != *e {
                    let rest = ring.sub(e, &f);
                    let e_old = prims.remove(i);
                    debug_assert_eq!(ring.mul_el(&f, &e_old), f, "split must stay under e");
                    prims.push(f);
                    if !ring.is_zero_el(&rest) {
                        prims.push(rest);
                    }
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(prims)
}

/// Newton lift of an idempotent along the nilpotent kernel of R -> S.
fn lift_idempotent(ring: &FiniteRing, seed: &Elem) -> Elem {
    let mut a = seed.clone();
    for _ in 0..64 {
        if ring.mul_el(&a, &a) == a {
            return a;
        }
        // a <- 3a^2 - 2a^3, squares the idempotency defect each step
        let a2 = ring.mul_el(&a, &a);
        let a3 = ring.mul_el(&a2, &a);
        a = ring.sub(&ring.scalar_mul(3, &a2), &ring.scalar_mul(2, &a3));
    }
    panic!("idempotent lift did not converge; kernel not nilpotent?");
}

pub fn block_data(ring: &RingRef) -> Result<BlockData, RingError> {
    let radical = jacobson_radical(ring);
    let (s, to_s, section) = quotient_ring_with_basis(ring, &radical)?;
    if s.is_zero_ring() {
        return Ok(BlockData {
            radical,
            semisimple: s,
            to_semisimple: to_s,
            idempotents_s: vec![],
            idempotents_r: vec![],
            block_orders: vec![],
            field_orders: vec![],
            matrix_sizes: vec![],
        });
    }
    let center = center_subgroup(&s);
    let (c_ring, c_addr) = subring_from_subgroup(&s, &center, &s.one())?;
    let prims_c = primitive_idempotents(&c_ring)?;
    let mut idempotents_s: Vec<Elem> = prims_c.iter().map(|e| c_addr.embed(e)).collect();
    // deterministic order: by encoded value
    idempotents_s.sort_by_key(|e| s.encode(e));

    let mut block_orders = Vec::new();
    let mut field_orders = Vec::new();
    let mut matrix_sizes = Vec::new();
    for eps in &idempotents_s {
        let block: Vec<Elem> = (0..s.num_gens())
            .map(|t| s.mul_el(eps, &s.gen(t)))
            .collect();
        let bsub = Subgroup::from_gens(s.orders(), &block);
        let bo = bsub.order();
        let zblock: Vec<Elem> = center
            .basis()
            .iter()
            .map(|z| s.mul_el(eps, z))
            .collect();
        let q = Subgroup::from_gens(s.orders(), &zblock).order();
        let mut n = 1u32;
        loop {
            let need = q.checked_pow(n * n).expect("block size fits u128");
            if need == bo {
                break;
            }
            assert!(need < bo, "block order {bo} is not q^(n^2) for q={q}");
            n += 1;
        }
        block_orders.push(bo);
        field_orders.push(q);
        matrix_sizes.push(n);
    }

    let idempotents_r: Vec<Elem> = idempotents_s
        .iter()
        .map(|eps| {
            let coords = to_s
                .target
                .reduce(eps.clone());
            // section lifts quotient coordinates to ring representatives
            let seed = section.lift(&coords);
            let lifted = lift_idempotent(ring, &seed);
            debug_assert_eq!(&to_s.apply(&lifted), eps);
            lifted
        })
        .collect();

    Ok(BlockData {
        radical,
        semisimple: s,
        to_semisimple: to_s,
        idempotents_s,
        idempotents_r,
        block_orders,
        field_orders,
        matrix_sizes,
    })
}

/// Number of simple blocks of R/rad(R).
pub fn block_count(ring: &RingRef) -> usize {
    block_data(ring)
        .expect("block decomposition within caps")
        .count()
}
