//! The 2x2 bimodule ring [[R, M],[N, S]] with zero pairings, and its
//! Milnor square of quotients by the two off-diagonal ideals.

use super::milnor::MilnorSquare;
use super::MatError;
use crate::finmod::FinModule;
use crate::finring::{
    ideal_closure, quotient_ring, FiniteRing, IdealHandle, RingHom, RingRef, Side, Subgroup,
};
use std::sync::Arc;

/// A finite (left, right)-bimodule: a left module over `left` and a right
/// module over `right`, with commuting actions.
#[derive(Clone)]
pub struct Bimodule {
    pub left: RingRef,
    pub right: RingRef,
    pub orders: Vec<i64>,
    /// `left_action[l]`: matrix of the l-th generator of `left`.
    pub left_action: Vec<Vec<Vec<i64>>>,
    /// `right_action[l]`: matrix of the right action of the l-th generator
    /// of `right`.
    pub right_action: Vec<Vec<Vec<i64>>>,
}

impl Bimodule {
    pub fn new(
        left: RingRef,
        right: RingRef,
        orders: Vec<i64>,
        left_action: Vec<Vec<Vec<i64>>>,
        right_action: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, MatError> {
        // left module axioms
        FinModule::new(left.clone(), orders.clone(), left_action.clone())
            .map_err(|e| MatError::ActionMismatch(format!("left action: {e}")))?;
        // right module = left module over the opposite ring
        let right_op: RingRef = Arc::new(right.opposite());
        FinModule::new(right_op, orders.clone(), right_action.clone())
            .map_err(|e| MatError::ActionMismatch(format!("right action: {e}")))?;
        let bm = Bimodule {
            left,
            right,
            orders,
            left_action,
            right_action,
        };
        // commuting actions: (r m) s = r (m s)
        let n = bm.orders.len();
        for l in 0..bm.left.num_gens() {
            for s in 0..bm.right.num_gens() {
                for j in 0..n {
                    let mut e = vec![0i64; n];
                    e[j] = 1;
                    let a = bm.act_right(s, &bm.act_left(l, &e));
                    let b = bm.act_left(l, &bm.act_right(s, &e));
                    if a != b {
                        return Err(MatError::ActionMismatch(format!(
                            "actions do not commute on generator {j}"
                        )));
                    }
                }
            }
        }
        Ok(bm)
    }

    /// The zero bimodule.
    pub fn zero(left: RingRef, right: RingRef) -> Self {
        Bimodule {
            left,
            right,
            orders: vec![],
            left_action: vec![],
            right_action: vec![],
        }
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    fn act_left(&self, l: usize, v: &[i64]) -> Vec<i64> {
        mat_apply(&self.left_action[l], v, &self.orders)
    }

    fn act_right(&self, l: usize, v: &[i64]) -> Vec<i64> {
        mat_apply(&self.right_action[l], v, &self.orders)
    }
}

fn mat_apply(m: &[Vec<i64>], v: &[i64], orders: &[i64]) -> Vec<i64> {
    let n = orders.len();
    let mut out = vec![0i128; n];
    for j in 0..n {
        if v[j] == 0 {
            continue;
        }
        for i in 0..n {
            out[i] += m[i][j] as i128 * v[j] as i128;
        }
    }
    out.iter()
        .zip(orders)
        .map(|(&x, &d)| x.rem_euclid(d as i128) as i64)
        .collect()
}

/// The assembled ring with addressing and its canonical Milnor square.
pub struct BimoduleRing {
    pub ring: RingRef,
    pub m_ideal: IdealHandle,
    pub n_ideal: IdealHandle,
    pub square: MilnorSquare,
    /// Index ranges of the four blocks in the generator layout.
    pub layout: BimodLayout,
}

pub struct BimodLayout {
    pub r_range: std::ops::Range<usize>,
    pub m_range: std::ops::Range<usize>,
    pub n_range: std::ops::Range<usize>,
    pub s_range: std::ops::Range<usize>,
}

/// Build `A = [[R, M],[N, S]]` with the displayed multiplication; products
/// of M with N are zero on both sides.
pub fn bimodule_ring(
    r: &RingRef,
    s: &RingRef,
    m: &Bimodule,
    n: &Bimodule,
) -> Result<BimoduleRing, MatError> {
    if m.left != *r || m.right != *s {
        return Err(MatError::ActionMismatch(
            "M must be an (R, S)-bimodule".into(),
        ));
    }
    if n.left != *s || n.right != *r {
        return Err(MatError::ActionMismatch(
            "N must be an (S, R)-bimodule".into(),
        ));
    }
    let (kr, km, kn, ks) = (r.num_gens(), m.num_gens(), n.num_gens(), s.num_gens());
    let total = kr + km + kn + ks;
    let r_range = 0..kr;
    let m_range = kr..kr + km;
    let n_range = kr + km..kr + km + kn;
    let s_range = kr + km + kn..total;

    let mut orders = Vec::with_capacity(total);
    orders.extend_from_slice(r.orders());
    orders.extend_from_slice(&m.orders);
    orders.extend_from_slice(&n.orders);
    orders.extend_from_slice(s.orders());

    let mut mul = vec![vec![vec![0i64; total]; total]; total];
    let put = |dst: &mut Vec<i64>, offset: usize, coords: &[i64]| {
        for (t, &c) in coords.iter().enumerate() {
            dst[offset + t] = c;
        }
    };
    for a in 0..total {
        for b in 0..total {
            let mut out = vec![0i64; total];
            if r_range.contains(&a) && r_range.contains(&b) {
                put(&mut out, 0, &r.mul_el(&r.gen(a), &r.gen(b)));
            } else if r_range.contains(&a) && m_range.contains(&b) {
                let mut e = vec![0i64; km];
                e[b - m_range.start] = 1;
                put(&mut out, m_range.start, &m.act_left(a, &e));
            } else if m_range.contains(&a) && s_range.contains(&b) {
                let mut e = vec![0i64; km];
                e[a - m_range.start] = 1;
                put(&mut out, m_range.start, &m.act_right(b - s_range.start, &e));
            } else if s_range.contains(&a) && n_range.contains(&b) {
                let mut e = vec![0i64; kn];
                e[b - n_range.start] = 1;
                put(&mut out, n_range.start, &n.act_left(a - s_range.start, &e));
            } else if n_range.contains(&a) && r_range.contains(&b) {
                let mut e = vec![0i64; kn];
                e[a - n_range.start] = 1;
                put(&mut out, n_range.start, &n.act_right(b, &e));
            } else if s_range.contains(&a) && s_range.contains(&b) {
                put(
                    &mut out,
                    s_range.start,
                    &s.mul_el(&s.gen(a - s_range.start), &s.gen(b - s_range.start)),
                );
            }
            mul[a][b] = out;
        }
    }
    let mut one = vec![0i64; total];
    put(&mut one, 0, &r.one());
    put(&mut one, s_range.start, &s.one());
    let ring: RingRef = Arc::new(
        FiniteRing::make_ring(orders, mul, one)
            .map_err(|e| MatError::ActionMismatch(format!("assembled ring invalid: {e}")))?,
    );

    // the two off-diagonal ideals
    let block = |range: &std::ops::Range<usize>| -> Vec<Vec<i64>> {
        range
            .clone()
            .map(|t| {
                let mut v = vec![0i64; total];
                v[t] = 1;
                v
            })
            .collect()
    };
    let m_ideal = ideal_closure(&ring, &block(&m_range), Side::TwoSided);
    let n_ideal = ideal_closure(&ring, &block(&n_range), Side::TwoSided);
    assert_eq!(m_ideal.order(), m.orders.iter().map(|&d| d as u128).product());
    assert_eq!(n_ideal.order(), n.orders.iter().map(|&d| d as u128).product());

    let (a_mod_m, f1) = quotient_ring(&ring, &m_ideal)?;
    let (a_mod_n, h2) = quotient_ring(&ring, &n_ideal)?;
    let sum = m_ideal.sum(&n_ideal)?;
    let (a_mod_both, to_both) = quotient_ring(&ring, &sum)?;

    // induced maps on quotients via section representatives
    let mk_induced = |src: &RingRef, src_ideal: &Subgroup| -> Result<RingHom, MatError> {
        let section = ring.full_subgroup().quotient_structure(src_ideal);
        let images: Vec<Vec<i64>> = section
            .gens()
            .iter()
            .map(|rep| to_both.apply(rep))
            .collect();
        Ok(RingHom::new(src.clone(), a_mod_both.clone(), images)?)
    };
    let h1 = mk_induced(&a_mod_m, &m_ideal.basis)?;
    let f2 = mk_induced(&a_mod_n, &n_ideal.basis)?;

    let square = MilnorSquare {
        r: ring.clone(),
        r1: a_mod_m,
        r2: a_mod_n,
        r0: a_mod_both,
        f1,
        h2,
        h1,
        f2,
    };
    square.validate()?;
    Ok(BimoduleRing {
        ring,
        m_ideal,
        n_ideal,
        square,
        layout: BimodLayout {
            r_range,
            m_range,
            n_range,
            s_range,
        },
    })
}
