//! Finitely generated abelian groups in invariant-factor normal form.
//!
//! The invariant-factor form is the single canonical representation in this
//! crate: every construction normalizes, and isomorphism is structural
//! equality of normalized values.

pub mod snf;

pub use snf::{det, kernel, snf, IntMat, SnfDecomp};

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(rename = "torsion")]
    invariant_factors: Vec<u64>,
}

/// A finitely generated `Z[1/s]`-module: free rank plus torsion coprime to `s`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedAbGroup {
    #[serde(rename = "inverted")]
    s: u64,
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(rename = "torsion")]
    torsion: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime factorization by trial division; fine for the sizes handled here.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Rebuild a divisibility chain from arbitrary cyclic orders via primary
/// decomposition (CRT merging of coprime parts).
fn normalize_factors(factors: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &d in factors {
        assert!(d != 0, "cyclic order must be positive");
        for (p, e) in factorize(d) {
            buckets.entry(p).or_default().push(e);
        }
    }
    for exps in buckets.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    let depth = buckets.values().map(|v| v.len()).max().unwrap_or(0);
    let mut chain = Vec::new();
    for i in 0..depth {
        let mut d: u64 = 1;
        for (p, exps) in &buckets {
            if let Some(&e) = exps.get(i) {
                d = d
                    .checked_mul(p.checked_pow(e).expect("prime power overflow"))
                    .expect("invariant factor overflow");
            }
        }
        if d >= 2 {
            chain.push(d);
        }
    }
    chain.reverse();
    chain
}

impl FgAbGroup {
    pub fn new(free_rank: usize, factors: impl IntoIterator<Item = u64>) -> Self {
        let factors: Vec<u64> = factors.into_iter().collect();
        FgAbGroup {
            free_rank,
            invariant_factors: normalize_factors(&factors),
        }
    }

    pub fn trivial() -> Self {
        FgAbGroup::new(0, [])
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(rank, [])
    }

    pub fn cyclic(d: u64) -> Self {
        FgAbGroup::new(0, [d])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group if finite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(1u128, |acc, &d| acc * d as u128),
        )
    }

    /// Isomorphism test: normalized values are isomorphic iff equal.
    pub fn iso_test(&self, other: &FgAbGroup) -> bool {
        self == other
    }

    pub fn direct_sum(groups: &[FgAbGroup]) -> FgAbGroup {
        let rank = groups.iter().map(|g| g.free_rank).sum();
        let factors: Vec<u64> = groups
            .iter()
            .flat_map(|g| g.invariant_factors.iter().copied())
            .collect();
        FgAbGroup::new(rank, factors)
    }

    /// Tensor with `Z[1/s]`: kills torsion supported on the primes of `s`.
    pub fn localize(&self, s: u64) -> LocalizedAbGroup {
        assert!(s >= 1, "localization requires s >= 1");
        let mut torsion = Vec::new();
        for &d in &self.invariant_factors {
            let mut d = d;
            loop {
                let g = gcd(d, s);
                if g == 1 {
                    break;
                }
                d /= g;
            }
            if d >= 2 {
                torsion.push(d);
            }
        }
        LocalizedAbGroup {
            s,
            free_rank: self.free_rank,
            torsion: normalize_factors(&torsion),
        }
    }

    /// `(G ⊗ Z/p, Tor_1(G, Z/p))` for any modulus `p >= 2`.
    pub fn mod_p(&self, p: u64) -> (FgAbGroup, FgAbGroup) {
        assert!(p >= 2, "mod-p requires p >= 2");
        let mut tensor: Vec<u64> = vec![p; self.free_rank];
        let mut tor: Vec<u64> = Vec::new();
        for &d in &self.invariant_factors {
            let g = gcd(d, p);
            tensor.push(g);
            tor.push(g);
        }
        (FgAbGroup::new(0, tensor), FgAbGroup::new(0, tor))
    }

    /// Cokernel of an integer matrix whose rows are relations on `cols`
    /// generators of a free group.
    pub fn cokernel(relations: &IntMat) -> FgAbGroup {
        let gens = relations.cols();
        let s = snf(relations);
        let inv = s.invariants();
        let rank = gens - inv.len();
        let factors: Vec<u64> = inv
            .iter()
            .map(|d| {
                d.abs()
                    .to_u64()
                    .expect("invariant factor exceeds u64 range")
            })
            .collect();
        FgAbGroup::new(rank, factors)
    }
}

impl LocalizedAbGroup {
    pub fn new(s: u64, free_rank: usize, torsion: impl IntoIterator<Item = u64>) -> Self {
        let torsion: Vec<u64> = torsion.into_iter().collect();
        for &d in &torsion {
            let mut d2 = d;
            loop {
                let g = gcd(d2, s);
                if g == 1 {
                    break;
                }
                d2 /= g;
            }
            assert_eq!(d2, d, "torsion factor {d} not coprime to inverted {s}");
        }
        LocalizedAbGroup {
            s,
            free_rank,
            torsion: normalize_factors(&torsion),
        }
    }

    pub fn inverted(&self) -> u64 {
        self.s
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn iso_test(&self, other: &LocalizedAbGroup) -> bool {
        self == other
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, parts: &[String]) -> fmt::Result {
    if parts.is_empty() {
        return write!(f, "0");
    }
    write!(f, "{}", parts.join(" \u{2295} "))
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for &d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write_sum(f, &parts)
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LocalizedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let base = format!("Z[1/{}]", self.s);
        if self.free_rank == 1 {
            parts.push(base.clone());
        } else if self.free_rank > 1 {
            parts.push(format!("{base}^{}", self.free_rank));
        }
        for &d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write_sum(f, &parts)
    }
}

impl fmt::Debug for LocalizedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_test_basics() {
        assert!(FgAbGroup::free(1).iso_test(&FgAbGroup::free(1)));
        // distinct invariant factors
        assert!(!FgAbGroup::new(0, [2, 2]).iso_test(&FgAbGroup::cyclic(4)));
        // CRT merging: Z/6 = Z/2 + Z/3
        assert!(FgAbGroup::cyclic(6).iso_test(&FgAbGroup::new(0, [2, 3])));
    }

    #[test]
    fn normalization_produces_chains() {
        let g = FgAbGroup::new(0, [6, 4]);
        assert_eq!(g.invariant_factors(), &[2, 12]);
        let g = FgAbGroup::new(0, [2, 3, 4, 9]);
        assert_eq!(g.invariant_factors(), &[6, 36]);
        let g = FgAbGroup::new(2, [1, 1]);
        assert_eq!(g.invariant_factors(), &[] as &[u64]);
        assert_eq!(g.free_rank(), 2);
    }

    #[test]
    fn localize_examples() {
        // 2-torsion of Z/4 dies at s=2
        assert!(FgAbGroup::cyclic(4).localize(2).is_trivial());
        // 6 = 2*3, the 2-part is removed
        let l = FgAbGroup::cyclic(6).localize(2);
        assert_eq!(l.torsion(), &[3]);
        assert_eq!(l.free_rank(), 0);
        // rank survives, 5-torsion dies since 5 | 10
        let l = FgAbGroup::new(1, [5]).localize(10);
        assert_eq!(l.free_rank(), 1);
        assert!(l.torsion().is_empty());
    }

    #[test]
    fn localize_idempotent() {
        for (rank, factors, s) in [
            (0usize, vec![4u64, 8], 2u64),
            (1, vec![6, 12], 2),
            (2, vec![30], 6),
            (0, vec![7, 49], 5),
        ] {
            let g = FgAbGroup::new(rank, factors);
            let once = g.localize(s);
            let again =
                FgAbGroup::new(once.free_rank(), once.torsion().iter().copied()).localize(s);
            assert_eq!(once, again);
        }
    }

    #[test]
    fn mod_p_examples() {
        let (t, tor) = FgAbGroup::free(1).mod_p(3);
        assert_eq!(t, FgAbGroup::cyclic(3));
        assert!(tor.is_trivial());

        // 0 -> Z/2 -> Z/4 -> Z/2 -> 0
        let (t, tor) = FgAbGroup::cyclic(4).mod_p(2);
        assert_eq!(t, FgAbGroup::cyclic(2));
        assert_eq!(tor, FgAbGroup::cyclic(2));

        let (t, tor) = FgAbGroup::cyclic(3).mod_p(2);
        assert!(t.is_trivial());
        assert!(tor.is_trivial());
    }

    #[test]
    fn mod_p_self_duality_finite() {
        // for finite G, |G ⊗ Z/p| = |Tor_1(G, Z/p)|; brute-checked over a sweep
        for a in 1..25u64 {
            for b in 1..8u64 {
                let g = FgAbGroup::new(0, [a, a * b]);
                for p in [2u64, 3, 4, 5, 6, 9] {
                    let (t, tor) = g.mod_p(p);
                    assert_eq!(t.order(), tor.order(), "G={g} p={p}");
                }
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let g = FgAbGroup::direct_sum(&[FgAbGroup::free(1), FgAbGroup::cyclic(2)]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), &[2]);

        let g = FgAbGroup::direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)]);
        assert_eq!(g, FgAbGroup::cyclic(6));

        assert!(FgAbGroup::direct_sum(&[]).is_trivial());
    }

    #[test]
    fn direct_sum_commutative_associative() {
        let gs = [
            FgAbGroup::new(1, [4]),
            FgAbGroup::new(0, [6]),
            FgAbGroup::new(2, [2, 10]),
        ];
        let ab = FgAbGroup::direct_sum(&[gs[0].clone(), gs[1].clone()]);
        let ba = FgAbGroup::direct_sum(&[gs[1].clone(), gs[0].clone()]);
        assert_eq!(ab, ba);
        let left = FgAbGroup::direct_sum(&[ab, gs[2].clone()]);
        let bc = FgAbGroup::direct_sum(&[gs[1].clone(), gs[2].clone()]);
        let right = FgAbGroup::direct_sum(&[gs[0].clone(), bc]);
        assert_eq!(left, right);
    }

    #[test]
    fn cokernel_from_relations() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
        let rel = IntMat::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(FgAbGroup::cokernel(&rel), FgAbGroup::cyclic(6));
        // Z^2 / <(1,0)> = Z
        let rel = IntMat::from_rows_i64(&[vec![1, 0]]);
        assert_eq!(FgAbGroup::cokernel(&rel), FgAbGroup::free(1));
    }

    #[test]
    fn serde_shape() {
        let g = FgAbGroup::new(2, [2, 6]);
        let j = serde_json::to_value(&g).unwrap();
        assert_eq!(j, serde_json::json!({"rank": 2, "torsion": [2, 6]}));
        let l = g.localize(5);
        let j = serde_json::to_value(&l).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"inverted": 5, "rank": 2, "torsion": [2, 6]})
        );
    }
}
