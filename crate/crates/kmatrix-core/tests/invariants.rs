//! Cross-module invariants: properties that tie the oracle, the builders,
//! and the module layer together.

use kmatrix_core::abgroup::FgAbGroup;
use kmatrix_core::finmod::{hom_group, FinModule};
use kmatrix_core::finring::{
    block_count, ideal_closure, jacobson_radical, quotient_ring, unit_group, FiniteRing,
    IdealHandle, RingRef, Side,
};
use kmatrix_core::kdirect::{k0, k1, Caps};
use std::sync::Arc;

fn zmod(m: i64) -> RingRef {
    Arc::new(FiniteRing::zmod(m))
}

fn regression_rings() -> Vec<(String, RingRef)> {
    let f2 = FiniteRing::zmod(2);
    vec![
        ("Z/4".into(), zmod(4)),
        ("Z/6".into(), zmod(6)),
        ("Z/9".into(), zmod(9)),
        ("F2xF2".into(), Arc::new(FiniteRing::product(&f2, &f2))),
        (
            "upper triangular 2x2 over F2".into(),
            Arc::new(
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
            ),
        ),
    ]
}

#[test]
fn morita_stability_of_the_oracle() {
    let caps = Caps::default();
    for (name, r) in regression_rings() {
        let m2: RingRef = Arc::new(FiniteRing::matrix_ring(&r, 2));
        assert_eq!(
            k0(&r).unwrap(),
            k0(&m2).unwrap(),
            "K0 not Morita stable for {name}"
        );
        if m2.order() <= 1 << 13 {
            assert_eq!(
                k1(&r, &caps).unwrap(),
                k1(&m2, &caps).unwrap(),
                "K1 not Morita stable for {name}"
            );
        }
    }
}

#[test]
fn k_groups_invariant_under_opposite() {
    let caps = Caps::default();
    for (name, r) in regression_rings() {
        let op: RingRef = Arc::new(r.opposite());
        assert_eq!(k0(&r).unwrap(), k0(&op).unwrap(), "K0 vs opposite: {name}");
        assert_eq!(
            k1(&r, &caps).unwrap(),
            k1(&op, &caps).unwrap(),
            "K1 vs opposite: {name}"
        );
    }
}

#[test]
fn quotient_composition_agrees() {
    // (R/I)/(J/I) and R/J have the same order and block count
    let r = zmod(8);
    let i = ideal_closure(&r, &[vec![4]], Side::TwoSided);
    let j = ideal_closure(&r, &[vec![2]], Side::TwoSided);
    let (ri, to_ri) = quotient_ring(&r, &i).unwrap();
    // J/I inside R/I
    let j_in_ri: Vec<Vec<i64>> = j.basis.basis().iter().map(|x| to_ri.apply(x)).collect();
    let ji = ideal_closure(&ri, &j_in_ri, Side::TwoSided);
    let (riji, _) = quotient_ring(&ri, &ji).unwrap();
    let (rj, _) = quotient_ring(&r, &j).unwrap();
    assert_eq!(riji.order(), rj.order());
    assert_eq!(block_count(&riji), block_count(&rj));
}

#[test]
fn unit_counts_multiply_and_radical_vanishes_on_quotient() {
    for (name, r) in regression_rings() {
        let rad = jacobson_radical(&r);
        let (ss, _) = quotient_ring(&r, &rad).unwrap();
        assert_eq!(
            jacobson_radical(&ss).order(),
            1,
            "rad(R/rad R) != 0 for {name}"
        );
        // rad is nilpotent with small degree
        assert!(rad.nilpotency_degree().unwrap() as u128 <= r.order());
    }
    let a = zmod(4);
    let b = zmod(9);
    let prod: RingRef = Arc::new(FiniteRing::product(&a, &b));
    let ua = unit_group(&a, 1 << 20).unwrap().len();
    let ub = unit_group(&b, 1 << 20).unwrap().len();
    let up = unit_group(&prod, 1 << 20).unwrap().len();
    assert_eq!(up, ua * ub);
}

#[test]
fn hom_from_regular_is_the_module() {
    // Hom(R, M) and M have the same group, naturally via evaluation at 1
    for (name, r) in regression_rings() {
        let reg = Arc::new(FinModule::regular(r.clone()));
        let i = jacobson_radical(&r);
        let (m, _) = FinModule::from_ideal(&IdealHandle {
            ring: r.clone(),
            side: Side::TwoSided,
            gens: i.gens.clone(),
            basis: i.basis.clone(),
        });
        let m = Arc::new(m);
        let h = hom_group(&reg, &m).unwrap();
        let module_group = FgAbGroup::new(0, m.orders().iter().map(|&d| d as u64));
        assert!(
            h.group.iso_test(&module_group),
            "Hom(R, M) != M for {name}: {} vs {}",
            h.group,
            module_group
        );
        // evaluation at 1 identifies basis maps with module elements
        for f in h.basis_maps() {
            let v = f.apply(&r.one());
            let roundtrip = h
                .basis_maps()
                .iter()
                .zip(h.express(f).unwrap())
                .fold(m.zero(), |acc, (bm, c)| {
                    m.add(&acc, &m.scalar_mul(c, &bm.apply(&r.one())))
                });
            assert_eq!(v, roundtrip);
        }
    }
}

#[test]
fn k0_matches_block_count_everywhere() {
    for (name, r) in regression_rings() {
        assert_eq!(
            k0(&r).unwrap(),
            FgAbGroup::free(block_count(&r)),
            "K0 vs block count for {name}"
        );
    }
}
