//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test -p kmatrix-cli --test acceptance -- --nocapture`.

use kmatrix_core::abgroup::{det, snf, FgAbGroup, IntMat};
use kmatrix_core::finmod::{ext1, is_approximation, is_dsplit, FinModule, ModuleMap};
use kmatrix_core::finring::{
    ideal_closure, FiniteRing, IdealHandle, RingHom, RingRef, Side, Subgroup,
};
use kmatrix_core::gvtools::{chain_end_ring, is_gv, GvVerdict};
use kmatrix_core::kdirect::{
    k0, mv_exactness, verify_decomposition, Caps, CoeffMode, GroupValue, KError, RuleInstance,
};
use kmatrix_core::ksymbolic::{endo_example, FactTable};
use kmatrix_core::matshape::{milnor_square_thm1, MatrixPattern};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

fn zmod(m: i64) -> RingRef {
    Arc::new(FiniteRing::zmod(m))
}

fn ideal(r: &RingRef, gens: &[Vec<i64>]) -> IdealHandle {
    ideal_closure(r, gens, Side::TwoSided)
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn uniform_uppers(r: &RingRef, n: usize, i: &IdealHandle) -> MatrixPattern {
    let mut uppers = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            uppers.insert((a, b), i.clone());
        }
    }
    MatrixPattern::b_lemma32(r.clone(), n, uppers).unwrap()
}

/// Corollary-style integral check at n = 2 over Z/4: direct oracle values
/// of both sides must be Z^2 at degree 0 and Z/2 at degree 1.
#[test]
fn criterion_01_chain_rule_integral_z4() {
    let start = Instant::now();
    let caps = Caps::default();
    let r = zmod(4);
    let i2 = ideal(&r, &[vec![2]]);
    let p = MatrixPattern::chain(r.clone(), 2, vec![i2], true).unwrap();
    let reports = verify_decomposition(
        "cor4.6t",
        &RuleInstance::Pattern(p),
        "c1",
        &[0, 1],
        &CoeffMode::Integral,
        &caps,
    )
    .unwrap();
    let ok = reports.iter().all(|r| r.iso)
        && reports[0].lhs == GroupValue::Integral(FgAbGroup::free(2))
        && reports[1].lhs == GroupValue::Integral(FgAbGroup::cyclic(2));
    let elapsed = start.elapsed();
    report(
        "01",
        ok && elapsed.as_secs_f64() < 1.0,
        &format!(
            "K0(T) = Z^2 and K1(T) = Z/2 on both sides ({:.3}s < 1s)",
            elapsed.as_secs_f64()
        ),
    );
}

/// Triangular chain at n = 3 over Z/4. The full K1 needs a pair sweep over
/// 2^30 pairs, above the default budget, so the run degrades to the K0
/// check at n = 3 plus the K1 check at n = 2, and says so.
#[test]
fn criterion_02_triangular_chain_n3_with_degradation() {
    let start = Instant::now();
    let caps = Caps::default();
    let r = zmod(4);
    let i2 = ideal(&r, &[vec![2]]);
    let p3 = uniform_uppers(&r, 3, &i2);
    let full = verify_decomposition(
        "lem4.2",
        &RuleInstance::Pattern(p3.clone()),
        "c2",
        &[0, 1],
        &CoeffMode::Integral,
        &caps,
    );
    let mut degraded = false;
    let ok = match full {
        Ok(reports) => reports.iter().all(|r| r.iso),
        Err(e) if e.is_cap() => {
            degraded = true;
            println!("  degradation: {e}; running K0 at n = 3 and K1 at n = 2");
            let k0_reports = verify_decomposition(
                "lem4.2",
                &RuleInstance::Pattern(p3.clone()),
                "c2-k0",
                &[0],
                &CoeffMode::Integral,
                &caps,
            )
            .unwrap();
            let p2 = uniform_uppers(&r, 2, &i2);
            let k1_reports = verify_decomposition(
                "lem4.2",
                &RuleInstance::Pattern(p2),
                "c2-k1",
                &[1],
                &CoeffMode::Integral,
                &caps,
            )
            .unwrap();
            k0_reports[0].iso
                && k0_reports[0].lhs == GroupValue::Integral(FgAbGroup::free(3))
                && k1_reports[0].iso
        }
        Err(e) => panic!("unexpected error: {e}"),
    };
    // expected K0 group derived by the oracle, not asserted a priori:
    // recompute it directly on the built ring
    let (built, _) = p3.build_subring().unwrap();
    let k0_direct = k0(&built).unwrap();
    let elapsed = start.elapsed();
    report(
        "02",
        ok && k0_direct == FgAbGroup::free(3) && elapsed.as_secs_f64() < 30.0,
        &format!(
            "K0(B) = {k0_direct}{} ({:.2}s < 30s)",
            if degraded {
                "; cap bound, degraded to K0(n=3) + K1(n=2) as reported"
            } else {
                "; full run within budget"
            },
            elapsed.as_secs_f64()
        ),
    );
}

/// Localized check of the main S-shape at p = s = 2 over Z/4.
#[test]
fn criterion_03_localized_s_shape() {
    let start = Instant::now();
    let caps = Caps::default();
    let r = zmod(4);
    let i = ideal(&r, &[vec![2]]);
    let mut uppers = BTreeMap::new();
    uppers.insert((0, 1), i.clone());
    let p = MatrixPattern::s_shape(r, 2, Some(i), uppers).unwrap();
    let reports = verify_decomposition(
        "thm1.1s",
        &RuleInstance::Pattern(p),
        "c3",
        &[0, 1],
        &CoeffMode::Localized(2),
        &caps,
    )
    .unwrap();
    let rank_ok = match (&reports[0].lhs, &reports[0].rhs) {
        (GroupValue::Localized(l), GroupValue::Localized(rr)) => {
            l.free_rank() == 2 && rr.free_rank() == 2
        }
        _ => false,
    };
    let k1_trivial = match (&reports[1].lhs, &reports[1].rhs) {
        (GroupValue::Localized(l), GroupValue::Localized(rr)) => {
            l.is_trivial() && rr.is_trivial()
        }
        _ => false,
    };
    let ok = reports.iter().all(|r| r.iso) && rank_ok && k1_trivial;
    let elapsed = start.elapsed();
    report(
        "03",
        ok && elapsed.as_secs_f64() < 1.0,
        &format!(
            "localized ranks 2 = 2 at degree 0, trivial at degree 1 ({:.3}s < 1s)",
            elapsed.as_secs_f64()
        ),
    );
}

/// Mayer-Vietoris exactness for the square built from criterion 3's
/// instance, at every inner position.
#[test]
fn criterion_04_mayer_vietoris_exactness() {
    let start = Instant::now();
    let caps = Caps::default();
    let r = zmod(4);
    let i = ideal(&r, &[vec![2]]);
    let mut uppers = BTreeMap::new();
    uppers.insert((0, 1), i.clone());
    let p = MatrixPattern::s_shape(r, 2, Some(i), uppers).unwrap();
    let square = milnor_square_thm1(&p).unwrap();
    let report_mv = mv_exactness(&square, &caps).unwrap();
    let wanted = ["K1(R0)", "K0(R)", "K0(R1)+K0(R2)"];
    let all_positions = wanted.iter().all(|w| {
        report_mv
            .positions
            .iter()
            .any(|(name, ok, _)| name == w && *ok)
    });
    let elapsed = start.elapsed();
    report(
        "04",
        report_mv.all_pass() && all_positions && elapsed.as_secs_f64() < 5.0,
        &format!(
            "exact at {} positions incl. K1(R0), K0(B), K0(R1)+K0(R2) ({:.2}s < 5s)",
            report_mv.positions.len(),
            elapsed.as_secs_f64()
        ),
    );
}

/// The worked endomorphism-ring example: exact display lines and group
/// values for p in {3, 5}.
#[test]
fn criterion_05_worked_example_display() {
    let facts = FactTable::builtin();
    let mut ok = true;
    for p in [3u64, 5] {
        let rep = endo_example(p, &facts).unwrap();
        let expected_lines = vec![
            "K_0(R) = Z \u{2295} Z".to_string(),
            format!("K_1(R) = Z/2 \u{2295} (Z/{p})^x"),
            "K_{2m}(R) = K_{2m}(Z), m >= 1".to_string(),
            format!("K_{{2m-1}}(R) = K_{{2m-1}}(Z) \u{2295} Z/({p}^m - 1), m >= 2"),
        ];
        ok &= rep.matches_display
            && rep.lines == expected_lines
            && rep.k0 == FgAbGroup::free(2)
            && rep.k1
                == FgAbGroup::direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(p - 1)]);
        // the odd family at m = 2 evaluates its finite part exactly
        let (fin, missing) = rep.odd_family(2, &facts).unwrap();
        ok &= fin == FgAbGroup::cyclic(p * p - 1) && missing == vec!["K_3(Z)".to_string()];
    }
    report(
        "05",
        ok,
        "display matches token-for-token for p = 3 and p = 5, groups exact",
    );
}

/// Split-sequence machinery: the inclusion of the lower-triangular ring
/// into the full matrix ring gives a genuine split sequence, and the
/// multiplication-by-two analog fails with a witness.
#[test]
fn criterion_06_dsplit_machinery() {
    let start = Instant::now();
    // B = lower triangular 2x2 over F2 as a chain pattern with zero ideal
    let f2 = zmod(2);
    let zero_ideal = IdealHandle::zero_ideal(&f2);
    let bp = MatrixPattern::chain(f2.clone(), 2, vec![zero_ideal], true).unwrap();
    let (b, b_addr) = bp.build_subring().unwrap();
    let a = Arc::new(FiniteRing::matrix_ring(&f2, 2));
    // inclusion B -> A on component representatives
    let mut images = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let comp = b_addr.component(i, j);
            for rep in comp.gens() {
                // matrix ring generator layout: (i, j) at index i*2 + j
                let mut v = a.zero();
                v[i * 2 + j] = rep[0];
                images.push(v);
            }
        }
    }
    let incl = RingHom::new(b.clone(), a.clone(), images).unwrap();
    // A as a left B-module (restriction of scalars), plus the regular B
    let restricted = {
        let k = b.num_gens();
        let n = a.num_gens();
        let mut action = vec![vec![vec![0i64; n]; n]; k];
        for l in 0..k {
            let im = incl.apply(&b.gen(l));
            for j in 0..n {
                let col = a.mul_el(&im, &a.gen(j));
                for i2 in 0..n {
                    action[l][i2][j] = col[i2];
                }
            }
        }
        Arc::new(FinModule::new(b.clone(), a.orders().to_vec(), action).unwrap())
    };
    let regular_b = Arc::new(FinModule::regular(b.clone()));
    // Ext^1_B(A, B) = 0
    let ext = ext1(&restricted, &regular_b).unwrap();
    // the sequence 0 -> B -> A -> A/B -> 0
    let f = ModuleMap::new(
        regular_b.clone(),
        restricted.clone(),
        {
            let n = a.num_gens();
            let m = b.num_gens();
            let mut mat = vec![vec![0i64; m]; n];
            for j in 0..m {
                let img = incl.apply(&b.gen(j));
                for i2 in 0..n {
                    mat[i2][j] = img[i2];
                }
            }
            mat
        },
    )
    .unwrap();
    let (_, g) = f.cokernel_module();
    let split = is_dsplit(&f, &g, &restricted).unwrap();

    // the failing analog: multiplication by 2 on Z/8 is not a left
    // approximation of the regular module; a witness map is returned
    let r8 = zmod(8);
    let reg8 = Arc::new(FinModule::regular(r8.clone()));
    let two = ModuleMap::new(reg8.clone(), reg8.clone(), vec![vec![2]]).unwrap();
    let approx = is_approximation(&two, &reg8, kmatrix_core::finmod::approx::ApproxSide::Left)
        .unwrap();
    let witness_ok = match &approx.witness {
        Some(w) => !w.is_zero(),
        None => false,
    };
    // the corner criterion: e R f = a f R f holds for the triangular ring
    // with e = e22, f = e11, a = e21, and fails in the Z/8 analog where
    // e R f = R but a f R f = 2R
    let e22 = b_addr.diag_idempotent(1);
    let e11 = b_addr.diag_idempotent(0);
    let a21 = b_addr.embed(1, 0, &f2.one()).unwrap();
    let erf = {
        let gens: Vec<Vec<i64>> = (0..b.num_gens())
            .map(|l| b.mul_el(&b.mul_el(&e22, &b.gen(l)), &e11))
            .collect();
        Subgroup::from_gens(b.orders(), &gens)
    };
    let afrf = {
        let gens: Vec<Vec<i64>> = (0..b.num_gens())
            .map(|l| {
                b.mul_el(
                    &b.mul_el(&a21, &b.mul_el(&e11, &b.gen(l))),
                    &e11,
                )
            })
            .collect();
        Subgroup::from_gens(b.orders(), &gens)
    };
    let erf_matches = erf == afrf;
    // and the right-multiplication map Re22 -> Re11 by a21 is a left
    // approximation of Re22 with respect to add(Re11)
    let re22 = ideal_closure(&b, &[e22.clone()], Side::Left);
    let re11 = ideal_closure(&b, &[e11.clone()], Side::Left);
    let (re22_mod, re22_reps) = FinModule::from_ideal(&re22);
    let (re11_mod, _) = FinModule::from_ideal(&re11);
    let re22_mod = Arc::new(re22_mod);
    let re11_mod = Arc::new(re11_mod);
    let gb11 = re11.basis.group_structure();
    let mult_map = {
        let cols: Vec<Vec<i64>> = re22_reps
            .iter()
            .map(|x| gb11.express(&b.mul_el(x, &a21)).unwrap())
            .collect();
        let n = re11_mod.num_gens();
        let mat: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        ModuleMap::new(re22_mod.clone(), re11_mod.clone(), mat).unwrap()
    };
    let erf_approx =
        is_approximation(&mult_map, &re11_mod, kmatrix_core::finmod::approx::ApproxSide::Left)
            .unwrap();

    let ok = ext.is_trivial()
        && split.holds
        && !approx.holds
        && witness_ok
        && erf_matches
        && erf_approx.holds;
    let elapsed = start.elapsed();
    report(
        "06",
        ok && elapsed.as_secs_f64() < 1.0,
        &format!(
            "Ext^1_B(A,B) = 0, sequence split; x2 analog fails with witness; corner criterion agrees both ways ({:.3}s < 1s)",
            elapsed.as_secs_f64()
        ),
    );
}

/// Companion-ring consequence: source and companion have identical K0 and
/// K1 on the three regression instances.
#[test]
fn criterion_07_companion_k_groups() {
    let start = Instant::now();
    let caps = Caps::default();
    let f2 = FiniteRing::zmod(2);
    let f2f2: RingRef = Arc::new(FiniteRing::product(&f2, &f2));
    let z4 = zmod(4);
    let instances: Vec<(&str, MatrixPattern)> = vec![
        ("Z/4, n=2, I=2R", uniform_uppers(&z4, 2, &ideal(&z4, &[vec![2]]))),
        (
            "F2xF2, n=2, I=F2x0",
            uniform_uppers(&f2f2, 2, &ideal(&f2f2, &[vec![1, 0]])),
        ),
        (
            "Z/4, n=3, I=0",
            uniform_uppers(&z4, 3, &IdealHandle::zero_ideal(&z4)),
        ),
    ];
    let mut ok = true;
    for (name, p) in &instances {
        let reports = verify_decomposition(
            "lem3.2",
            &RuleInstance::Pattern(p.clone()),
            name,
            &[0, 1],
            &CoeffMode::Integral,
            &caps,
        )
        .unwrap();
        let inst_ok = reports.iter().all(|r| r.iso);
        println!(
            "  {name}: K0 {} vs {}, K1 {} vs {} -> {}",
            reports[0].lhs,
            reports[0].rhs,
            reports[1].lhs,
            reports[1].rhs,
            if inst_ok { "iso" } else { "MISMATCH" }
        );
        ok &= inst_ok;
    }
    let elapsed = start.elapsed();
    report(
        "07",
        ok && elapsed.as_secs_f64() < 10.0,
        &format!(
            "companion K0/K1 agree on all three instances ({:.2}s < 10s)",
            elapsed.as_secs_f64()
        ),
    );
}

/// Degree-1 check with an idempotent ideal over F2 x F2, plus the guard
/// that rejects a non-idempotent ideal with a witness.
#[test]
fn criterion_08_idempotent_ideal_k1() {
    let caps = Caps::default();
    let f2 = FiniteRing::zmod(2);
    let r: RingRef = Arc::new(FiniteRing::product(&f2, &f2));
    let i = ideal(&r, &[vec![1, 0]]);
    let j = IdealHandle::unit_ideal(&r);
    let p = MatrixPattern::two_ideals(r.clone(), 2, i, j).unwrap();
    let reports = verify_decomposition(
        "prop5.3",
        &RuleInstance::Pattern(p),
        "c8",
        &[1],
        &CoeffMode::Integral,
        &caps,
    )
    .unwrap();
    let ok_pos = reports[0].iso;

    let z4 = zmod(4);
    let bad = MatrixPattern::two_ideals(
        z4.clone(),
        2,
        ideal(&z4, &[vec![2]]),
        IdealHandle::unit_ideal(&z4),
    )
    .unwrap();
    let err = verify_decomposition(
        "prop5.3",
        &RuleInstance::Pattern(bad),
        "c8-bad",
        &[1],
        &CoeffMode::Integral,
        &caps,
    )
    .unwrap_err();
    let ok_guard = match &err {
        KError::HypothesisFailed(msg) => msg.contains("I^2 != I") && msg.contains("witness"),
        _ => false,
    };
    report(
        "08",
        ok_pos && ok_guard,
        &format!(
            "K1 decomposition holds ({} vs {}); non-idempotent ideal rejected with witness",
            reports[0].lhs, reports[0].rhs
        ),
    );
}

/// GV property suite on randomized finite commutative instances: the two
/// routes must agree on every instance, certificates must re-verify, and
/// the annihilator property must hold for every GV verdict.
#[test]
fn criterion_09_gv_randomized_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut instances = 0usize;
    let mut gv_count = 0usize;
    while instances < 24 {
        let ring: RingRef = match rng.gen_range(0..3) {
            0 => zmod(rng.gen_range(2..32)),
            1 => {
                let a = FiniteRing::zmod(rng.gen_range(2..10));
                let b = FiniteRing::zmod(rng.gen_range(2..10));
                Arc::new(FiniteRing::product(&a, &b))
            }
            _ => {
                // F_4 or the dual numbers, small noncyclic additive groups
                if rng.gen_bool(0.5) {
                    Arc::new(
                        FiniteRing::make_ring(
                            vec![2, 2],
                            vec![
                                vec![vec![1, 0], vec![0, 1]],
                                vec![vec![0, 1], vec![1, 1]],
                            ],
                            vec![1, 0],
                        )
                        .unwrap(),
                    )
                } else {
                    Arc::new(
                        FiniteRing::make_ring(
                            vec![2, 2],
                            vec![
                                vec![vec![1, 0], vec![0, 1]],
                                vec![vec![0, 1], vec![0, 0]],
                            ],
                            vec![1, 0],
                        )
                        .unwrap(),
                    )
                }
            }
        };
        let gen: Vec<i64> = (0..ring.num_gens())
            .map(|l| rng.gen_range(0..ring.orders()[l]))
            .collect();
        let handle = ideal(&ring, &[gen]);
        // the two routes are compared inside is_gv; disagreement errors out
        let cert = is_gv(&ring, &handle).expect("route agreement");
        assert!(cert.verify(), "certificate failed re-verification");
        if cert.is_gv() {
            gv_count += 1;
            match &cert.verdict {
                GvVerdict::Gv { .. } => {}
                _ => unreachable!(),
            }
            // proper ideals of finite commutative rings always have a
            // nonzero annihilator on some local factor, so a GV verdict
            // forces the unit ideal
            if ring.is_commutative() {
                assert!(
                    handle.basis.is_full(),
                    "proper GV ideal in a finite commutative ring"
                );
            }
        }
        instances += 1;
    }
    // the trivial GV chain: entrywise agreement of the two constructions
    let f2 = zmod(2);
    let full = IdealHandle::unit_ideal(&f2);
    let chain_report = chain_end_ring(&f2, &[full.clone(), full.clone(), full]).unwrap();
    let elapsed = start.elapsed();
    report(
        "09",
        instances >= 20 && chain_report.isomorphic() && chain_report.tail_gv
            && elapsed.as_secs_f64() < 30.0,
        &format!(
            "{instances} randomized instances, 100% route agreement ({gv_count} GV); trivial chain entrywise equal ({:.2}s < 30s)",
            elapsed.as_secs_f64()
        ),
    );
}

/// The exact-linear-algebra kernel: certified Smith forms on 1000 random
/// matrices, plus the localization and mod-p identities.
#[test]
fn criterion_10_snf_certificates() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-20..=20)).collect())
            .collect();
        let m = IntMat::from_rows_i64(&data);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d, "U*M*V != D");
        assert_eq!(det(&s.u).abs(), BigInt::one(), "U not unimodular");
        assert_eq!(det(&s.v).abs(), BigInt::one(), "V not unimodular");
        let inv = s.invariants();
        for w in inv.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "divisibility chain broken: {inv:?}"
            );
        }
    }
    // algebraic identities of the group layer on random groups
    for _ in 0..200 {
        let rank = rng.gen_range(0..3);
        let nf = rng.gen_range(0..4);
        let factors: Vec<u64> = (0..nf).map(|_| rng.gen_range(2..40)).collect();
        let g = FgAbGroup::new(rank, factors);
        let s = rng.gen_range(2..12);
        let once = g.localize(s);
        let again = FgAbGroup::new(once.free_rank(), once.torsion().iter().copied()).localize(s);
        assert_eq!(once, again, "localize not idempotent on {g}");
        let p = rng.gen_range(2..12);
        let (tensor, tor) = g.mod_p(p);
        if g.is_finite() {
            assert_eq!(tensor.order(), tor.order(), "mod-p self-duality on {g}");
        }
    }
    let elapsed = start.elapsed();
    report(
        "10",
        elapsed.as_secs_f64() < 10.0,
        &format!(
            "1000 certified Smith forms and 200 group-identity samples ({:.2}s < 10s)",
            elapsed.as_secs_f64()
        ),
    );
}

/// The shipped regression manifest must run end to end through the CLI.
#[test]
fn shipped_suite_manifest_passes() {
    let manifest = concat!(env!("CARGO_MANIFEST_DIR"), "/../../instances/suite.json");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_kmatrix"))
        .args(["suite", "--manifest", manifest])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "suite exit: {:?}, stdout: {}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}
