//! K1 of a finite ring by the semilocal description: the unit group
//! modulo the subgroup generated by all commutators and all elements
//! `(1+ab)(1+ba)^{-1}` with `1+ab` invertible.
//!
//! Finite rings are semilocal, where this description of K1 is a standard
//! external fact; the test suite cross-validates it against every
//! integral K1 value the decomposition rules produce.

use super::{Caps, KError};
use crate::abgroup::{snf, FgAbGroup, IntMat};
use crate::finring::{unit_group, RingError, RingHom, RingRef, UnitGroup};
use num_traits::ToPrimitive;
use std::collections::HashMap;

pub struct K1Data {
    pub ring: RingRef,
    pub group: FgAbGroup,
    units: UnitGroup,
    w_member: Vec<bool>,
    w_gens: Vec<u32>,
    coset_of: Vec<u32>,
    coset_reps: Vec<u32>,
    /// Cyclic generators of the quotient matching `group`'s invariant
    /// factors, as unit indices.
    gens: Vec<u32>,
    gen_orders: Vec<u64>,
    dlog: HashMap<u32, Vec<i64>>,
}

pub fn k1(ring: &RingRef, caps: &Caps) -> Result<FgAbGroup, KError> {
    Ok(k1_data(ring, caps)?.group)
}

struct WClosure<'a> {
    units: &'a UnitGroup,
    member: Vec<bool>,
    list: Vec<u32>,
}

impl<'a> WClosure<'a> {
    fn new(units: &'a UnitGroup) -> Self {
        let mut member = vec![false; units.len()];
        let one = units.one_idx();
        member[one as usize] = true;
        WClosure {
            units,
            member,
            list: vec![one],
        }
    }

    fn contains(&self, idx: u32) -> bool {
        self.member[idx as usize]
    }

    /// Add a generator and close under multiplication by it (both the
    /// element and its inverse, saturating the whole subgroup).
    fn add(&mut self, gen: u32) {
        if self.contains(gen) {
            return;
        }
        // multiply every known member by words in the enlarged set until
        // stable; BFS over the coset graph
        let mut queue = vec![gen];
        self.member[gen as usize] = true;
        self.list.push(gen);
        while let Some(x) = queue.pop() {
            // close under products with all current members, both sides
            let snapshot: Vec<u32> = self.list.clone();
            for &m in &snapshot {
                for y in [self.units.mul_idx(x, m), self.units.mul_idx(m, x)] {
                    if !self.member[y as usize] {
                        self.member[y as usize] = true;
                        self.list.push(y);
                        queue.push(y);
                    }
                }
            }
            let xi = self.units.inv_idx(x);
            if !self.member[xi as usize] {
                self.member[xi as usize] = true;
                self.list.push(xi);
                queue.push(xi);
            }
        }
    }
}

pub fn k1_data(ring: &RingRef, caps: &Caps) -> Result<K1Data, KError> {
    let units = unit_group(ring, caps.unit_cap)?;
    let size = ring.order();
    let pairs = size.saturating_mul(size);
    if pairs > caps.pair_budget {
        return Err(KError::Ring(RingError::SizeCapExceeded {
            size: pairs,
            cap: caps.pair_budget,
        }));
    }

    // dense lookup tables over the mixed-radix encoding
    let n_el = size as usize;
    let mut unit_idx = vec![u32::MAX; n_el];
    for (i, u) in units.elements().iter().enumerate() {
        unit_idx[ring.encode(u) as usize] = i as u32;
    }
    let elements: Vec<Vec<i64>> = ring.elements().collect();

    let mut w = WClosure::new(&units);
    let mut w_gens: Vec<u32> = Vec::new();

    // commutators of a generating set of the unit group
    let ugens = units.generating_set();
    for &a in &ugens {
        for &b in &ugens {
            let c = units.mul_idx(
                units.mul_idx(a, b),
                units.mul_idx(units.inv_idx(a), units.inv_idx(b)),
            );
            if !w.contains(c) {
                w_gens.push(c);
                w.add(c);
            }
        }
    }
    // normal closure: conjugates of members by unit generators; any
    // subgroup containing the commutators of generators of U is normal
    // once it also contains their conjugates, so saturate directly
    loop {
        let mut changed = false;
        let snapshot = w.list.clone();
        for &m in &snapshot {
            for &g in &ugens {
                let c = units.mul_idx(units.mul_idx(g, m), units.inv_idx(g));
                if !w.contains(c) {
                    w_gens.push(c);
                    w.add(c);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Vaserstein sweep over unordered pairs: w(b, a) = w(a, b)^{-1}
    let one = ring.one();
    for ia in 0..n_el {
        let a = &elements[ia];
        if ring.is_zero_el(a) {
            continue;
        }
        for ib in ia..n_el {
            let b = &elements[ib];
            let ab = ring.mul_el(a, b);
            let t = ring.add(&one, &ab);
            let tu = unit_idx[ring.encode(&t) as usize];
            if tu == u32::MAX {
                continue;
            }
            let ba = ring.mul_el(b, a);
            let s = ring.add(&one, &ba);
            let su = unit_idx[ring.encode(&s) as usize];
            if su == u32::MAX {
                return Err(KError::Internal(
                    "1+ab invertible but 1+ba is not".into(),
                ));
            }
            let wel = units.mul_idx(tu, units.inv_idx(su));
            if !w.contains(wel) {
                w_gens.push(wel);
                w.add(wel);
            }
        }
    }

    let w_member = w.member.clone();
    let w_list = w.list.clone();
    drop(w);

    // cosets of W in U
    let mut coset_of = vec![u32::MAX; units.len()];
    let mut coset_reps: Vec<u32> = Vec::new();
    for u in 0..units.len() as u32 {
        if coset_of[u as usize] != u32::MAX {
            continue;
        }
        let id = coset_reps.len() as u32;
        coset_reps.push(u);
        for &m in &w_list {
            let x = units.mul_idx(u, m);
            coset_of[x as usize] = id;
        }
    }
    let ncosets = coset_reps.len();

    // abelian structure of U/W from a triangular relative-order
    // presentation of the projected generators, then Smith normal form
    let cmul = |a: u32, b: u32| -> u32 {
        coset_of[units.mul_idx(coset_reps[a as usize], coset_reps[b as usize]) as usize]
    };
    let one_coset = coset_of[units.one_idx() as usize];
    let proj_gens: Vec<u32> = ugens.iter().map(|&g| coset_of[g as usize]).collect();
    let r = proj_gens.len();
    let mut expr: HashMap<u32, Vec<i64>> = HashMap::new();
    expr.insert(one_coset, vec![0i64; r]);
    let mut rel_rows: Vec<Vec<i64>> = Vec::new();
    for (i, &g) in proj_gens.iter().enumerate() {
        // relative order of g over the current subgroup
        let mut m = 1i64;
        let mut pow = g;
        while !expr.contains_key(&pow) {
            pow = cmul(pow, g);
            m += 1;
        }
        let tail = expr[&pow].clone();
        let mut row = vec![0i64; r];
        row[i] = m;
        for (j, &e) in tail.iter().enumerate() {
            row[j] -= e;
        }
        rel_rows.push(row);
        // extend the expressed subgroup by powers of g
        let snapshot: Vec<(u32, Vec<i64>)> =
            expr.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut powg = one_coset;
        for jpow in 0..m {
            if jpow > 0 {
                powg = cmul(powg, g);
            }
            for (h, he) in &snapshot {
                let c = cmul(*h, powg);
                let mut e = he.clone();
                e[i] += jpow;
                expr.entry(c).or_insert(e);
            }
        }
    }
    debug_assert_eq!(expr.len(), ncosets, "presentation misses cosets");

    let rel = IntMat::from_rows_i64(&rel_rows);
    let dec = snf(&rel);
    let mut gens: Vec<u32> = Vec::new();
    let mut gen_orders: Vec<u64> = Vec::new();
    for t in 0..r {
        let d = dec
            .d
            .get(t, t)
            .to_u64()
            .ok_or_else(|| KError::Internal("relation matrix not diagonalizable".into()))?;
        if d >= 2 {
            // generator = product of projected gens with exponents from
            // row t of V^{-1}
            let mut c = one_coset;
            for j in 0..r {
                let e = dec.v_inv.get(t, j);
                let d_big = num_bigint::BigInt::from(uorder(&units, &coset_of, &coset_reps, proj_gens[j]) as i64);
                let e_red = (e % &d_big)
                    .to_i64()
                    .unwrap()
                    .rem_euclid(uorder(&units, &coset_of, &coset_reps, proj_gens[j]) as i64);
                for _ in 0..e_red {
                    c = cmul(c, proj_gens[j]);
                }
            }
            gens.push(coset_reps[c as usize]);
            gen_orders.push(d);
        }
    }
    let group = FgAbGroup::new(0, gen_orders.iter().copied());

    // discrete log table over the invariant-factor generators
    let mut dlog: HashMap<u32, Vec<i64>> = HashMap::new();
    let gen_cosets: Vec<u32> = gens.iter().map(|&u| coset_of[u as usize]).collect();
    enumerate_dlog(&mut dlog, &cmul, &gen_cosets, &gen_orders, one_coset);
    if dlog.len() != ncosets {
        return Err(KError::Internal(format!(
            "K1 presentation inconsistent: {} cosets, {} expressible",
            ncosets,
            dlog.len()
        )));
    }

    Ok(K1Data {
        ring: ring.clone(),
        group,
        units,
        w_member,
        w_gens,
        coset_of,
        coset_reps,
        gens,
        gen_orders,
        dlog,
    })
}

fn uorder(units: &UnitGroup, coset_of: &[u32], coset_reps: &[u32], coset: u32) -> u64 {
    // order of a coset in the quotient group
    let one = coset_of[units.one_idx() as usize];
    let mut m = 1u64;
    let mut pow = coset;
    while pow != one {
        pow = coset_of
            [units.mul_idx(coset_reps[pow as usize], coset_reps[coset as usize]) as usize];
        m += 1;
    }
    m
}

fn enumerate_dlog(
    dlog: &mut HashMap<u32, Vec<i64>>,
    cmul: &impl Fn(u32, u32) -> u32,
    gen_cosets: &[u32],
    gen_orders: &[u64],
    one_coset: u32,
) {
    let mut frontier: Vec<(u32, Vec<i64>)> = vec![(one_coset, vec![0i64; gen_cosets.len()])];
    dlog.insert(one_coset, vec![0i64; gen_cosets.len()]);
    for (t, (&g, &d)) in gen_cosets.iter().zip(gen_orders).enumerate() {
        let mut next = frontier.clone();
        for (c0, e0) in &frontier {
            let mut c = *c0;
            for p in 1..d {
                c = cmul(c, g);
                let mut e = e0.clone();
                e[t] = p as i64;
                if dlog.insert(c, e.clone()).is_none() {
                    next.push((c, e));
                }
            }
        }
        frontier = next;
    }
}

impl K1Data {
    pub fn num_classes(&self) -> usize {
        self.coset_reps.len()
    }

    /// Class id of a unit element.
    pub fn class_of(&self, unit: &[i64]) -> Option<u32> {
        let idx = self.units.idx_of(&unit.to_vec())?;
        Some(self.coset_of[idx as usize])
    }

    pub fn class_of_idx(&self, coset: u32) -> &[i64] {
        self.units.el(self.coset_reps[coset as usize])
    }

    pub fn one_class(&self) -> u32 {
        self.coset_of[self.units.one_idx() as usize]
    }

    pub fn class_mul(&self, a: u32, b: u32) -> u32 {
        self.coset_of[self
            .units
            .mul_idx(self.coset_reps[a as usize], self.coset_reps[b as usize])
            as usize]
    }

    pub fn class_inv(&self, a: u32) -> u32 {
        self.coset_of[self.units.inv_idx(self.coset_reps[a as usize]) as usize]
    }

    /// Invariant-factor coordinates of a class.
    pub fn dlog(&self, coset: u32) -> &[i64] {
        &self.dlog[&coset]
    }

    pub fn gen_orders(&self) -> &[u64] {
        &self.gen_orders
    }

    /// Representatives of the Vaserstein-commutator subgroup generators.
    pub fn relation_gens(&self) -> impl Iterator<Item = &[i64]> {
        self.w_gens.iter().map(move |&i| self.units.el(i).as_slice())
    }

    pub fn in_relation_subgroup(&self, unit: &[i64]) -> Option<bool> {
        let idx = self.units.idx_of(&unit.to_vec())?;
        Some(self.w_member[idx as usize])
    }
}

/// The induced map on K1: a unit class maps to the class of its image.
pub struct K1Map {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    /// Column j = dlog of the image of source generator j.
    pub matrix: Vec<Vec<i64>>,
    /// Image of each source class id as a target class id.
    class_map: Vec<u32>,
}

impl K1Map {
    pub fn apply_class(&self, c: u32) -> u32 {
        self.class_map[c as usize]
    }

    pub fn is_iso(&self, src: &K1Data, tgt: &K1Data) -> bool {
        if src.num_classes() != tgt.num_classes() {
            return false;
        }
        let mut seen = vec![false; tgt.num_classes()];
        for &c in &self.class_map {
            if seen[c as usize] {
                return false;
            }
            seen[c as usize] = true;
        }
        true
    }
}

/// Compute the induced map on K1, verifying well-definedness on the
/// relation generators.
pub fn induced_k1(f: &RingHom, src: &K1Data, tgt: &K1Data) -> Result<K1Map, KError> {
    if f.source != src.ring || f.target != tgt.ring {
        return Err(KError::Internal("K1 data does not match the hom".into()));
    }
    // well-definedness: relation generators map into the relation subgroup
    for wgen in src.relation_gens() {
        let img = f.apply(wgen);
        match tgt.in_relation_subgroup(&img) {
            Some(true) => {}
            Some(false) => {
                return Err(KError::Internal(
                    "relation generator does not map into the relation subgroup".into(),
                ))
            }
            None => {
                return Err(KError::Internal(
                    "unit maps to a non-unit under a ring homomorphism".into(),
                ))
            }
        }
    }
    let mut class_map = vec![0u32; src.num_classes()];
    for c in 0..src.num_classes() as u32 {
        let rep = src.class_of_idx(c);
        let img = f.apply(rep);
        class_map[c as usize] = tgt
            .class_of(&img)
            .ok_or_else(|| KError::Internal("image of unit is not a unit".into()))?;
    }
    let matrix: Vec<Vec<i64>> = src
        .gens
        .iter()
        .map(|&g| {
            let c = src.coset_of[g as usize];
            tgt.dlog(class_map[c as usize]).to_vec()
        })
        .collect();
    Ok(K1Map {
        source: src.group.clone(),
        target: tgt.group.clone(),
        matrix,
        class_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{ideal_closure, quotient_ring, FiniteRing, Side};
    use std::sync::Arc;

    fn zmod(m: i64) -> RingRef {
        Arc::new(FiniteRing::zmod(m))
    }

    #[test]
    fn k1_of_commutative_rings_is_units() {
        let caps = Caps::default();
        assert_eq!(k1(&zmod(4), &caps).unwrap(), FgAbGroup::cyclic(2));
        assert_eq!(k1(&zmod(5), &caps).unwrap(), FgAbGroup::cyclic(4));
        assert_eq!(k1(&zmod(8), &caps).unwrap(), FgAbGroup::new(0, [2, 2]));
        assert!(k1(&zmod(2), &caps).unwrap().is_trivial());
        let zero: RingRef = Arc::new(FiniteRing::zero_ring());
        assert!(k1(&zero, &caps).unwrap().is_trivial());
    }

    #[test]
    fn k1_of_m2_f2_vanishes() {
        // GL_2(F2) = S_3; commutators give A_3 and a Vaserstein element is
        // odd, so the whole unit group dies
        let m2: RingRef = Arc::new(FiniteRing::matrix_ring(&FiniteRing::zmod(2), 2));
        let caps = Caps::default();
        assert!(k1(&m2, &caps).unwrap().is_trivial());
    }

    #[test]
    fn k1_morita_stability_samples() {
        let caps = Caps::default();
        for m in [3i64, 4] {
            let r = zmod(m);
            let m2: RingRef = Arc::new(FiniteRing::matrix_ring(&FiniteRing::zmod(m), 2));
            assert_eq!(
                k1(&r, &caps).unwrap(),
                k1(&m2, &caps).unwrap(),
                "K1(M2(Z/{m})) != K1(Z/{m})"
            );
        }
    }

    #[test]
    fn pair_budget_is_enforced() {
        let r = zmod(8);
        let caps = Caps {
            unit_cap: 1 << 20,
            pair_budget: 10,
        };
        let err = k1(&r, &caps).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn induced_k1_identity_and_quotient() {
        let caps = Caps::default();
        let r = zmod(4);
        let src = k1_data(&r, &caps).unwrap();
        let id_map = induced_k1(&RingHom::identity(&r), &src, &src).unwrap();
        assert!(id_map.is_iso(&src, &src));

        // canonical surjection Z/4 -> Z/2 kills K1
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let (q, hom) = quotient_ring(&r, &i).unwrap();
        let tgt = k1_data(&q, &caps).unwrap();
        let map = induced_k1(&hom, &src, &tgt).unwrap();
        assert!(tgt.group.is_trivial());
        assert_eq!(map.matrix.len(), 1);
        assert!(map.matrix[0].is_empty());
    }

    #[test]
    fn induced_k1_diagonal_embedding() {
        let caps = Caps::default();
        let r = zmod(4);
        let prod: RingRef = Arc::new(FiniteRing::product(&r, &r));
        let hom = RingHom::new(r.clone(), prod.clone(), vec![vec![1, 1]]).unwrap();
        let src = k1_data(&r, &caps).unwrap();
        let tgt = k1_data(&prod, &caps).unwrap();
        assert_eq!(tgt.group, FgAbGroup::new(0, [2, 2]));
        let map = induced_k1(&hom, &src, &tgt).unwrap();
        // the diagonal embedding Z/2 -> Z/2 + Z/2 is injective
        let img = map.apply_class(
            src.class_of(&vec![3]).expect("3 is a unit"),
        );
        assert_ne!(img, tgt.one_class());
    }

    #[test]
    fn k1_of_opposite_ring_agrees() {
        let caps = Caps::default();
        let ut = Arc::new(
            FiniteRing::make_ring(
                vec![2, 2, 2],
                vec![
                    vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
                    vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]],
                    vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
                ],
                vec![1, 0, 1],
            )
            .unwrap(),
        );
        let op: RingRef = Arc::new(ut.opposite());
        assert_eq!(k1(&ut, &caps).unwrap(), k1(&op, &caps).unwrap());
        assert_eq!(
            super::super::k0(&ut).unwrap(),
            super::super::k0(&op).unwrap()
        );
    }
}
