//! Jacobson radical of a finite ring.
//!
//! The computation reduces to prime characteristic:
//! `rad(R) = ∩_p  preimage of rad(R/pR)` over the primes `p` dividing the
//! additive exponent, and each `R/pR` is a finite-dimensional F_p-algebra.
//! Over F_p the radical is the set of `x` such that left multiplication by
//! `x*y` is nilpotent for every `y`; nilpotency of a matrix over F_p is
//! detected exactly by the lifted trace congruences
//! `Tr(M^{p^i}) ≡ 0 (mod p^{i+1})` for `0 <= i <= floor(log_p n)`, which
//! turn the whole test into a chain of F_p-linear kernels.

use super::hom::quotient_ring_with_basis;
use super::ideal::{ideal_closure, scalar_ideal, IdealHandle, Side};
use super::ring::{Elem, FiniteRing, RingRef};
use super::subgroup::Subgroup;

fn prime_divisors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// n x n matrix product mod m.
fn mat_mul_mod(a: &[Vec<i64>], b: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = ((out[i][j] as i128 + x as i128 * b[k][j] as i128)
                    .rem_euclid(m as i128)) as i64;
            }
        }
    }
    out
}

fn mat_pow_mod(a: &[Vec<i64>], mut e: u64, m: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut result = vec![vec![0i64; n]; n];
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = 1 % m;
    }
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul_mod(&result, &base, m);
        }
        base = mat_mul_mod(&base, &base, m);
        e >>= 1;
    }
    result
}

fn inv_mod(a: i64, p: i64) -> i64 {
    // p prime, a not divisible by p
    let (mut t, mut newt) = (0i64, 1i64);
    let (mut r, mut newr) = (p, a.rem_euclid(p));
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    t.rem_euclid(p)
}

/// Kernel of a matrix over F_p (rows are constraints on the column space).
fn fp_kernel(mat: &[Vec<i64>], ncols: usize, p: i64) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect())
        .collect();
    let nrows = rows.len();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(sel) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as i128 * inv as i128).rem_euclid(p as i128) as i64;
        }
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    rows[r][c] = ((rows[r][c] as i128 - f as i128 * rows[rank][c] as i128)
                        .rem_euclid(p as i128)) as i64;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0i64; ncols];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (-rows[r][free]).rem_euclid(p);
        }
        basis.push(v);
    }
    basis
}

/// Radical of a finite-dimensional F_p-algebra (all generator orders = p),
/// returned as a basis of coordinate vectors.
fn fp_algebra_radical(ring: &FiniteRing, p: i64) -> Vec<Elem> {
    let n = ring.num_gens();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(ring.orders().iter().all(|&d| d == p));
    // number of trace rounds: smallest l with p^(l+1) > n
    let mut l = 0u32;
    while (p as u128).pow(l + 1) <= n as u128 {
        l += 1;
    }
    let mut basis: Vec<Elem> = (0..n).map(|i| ring.gen(i)).collect();
    for i in 0..=l {
        if basis.is_empty() {
            break;
        }
        let modulus = (p as i128).pow(i + 1) as i64;
        let scale = (p as i64).pow(i);
        let dim = basis.len();
        // constraint matrix: rows indexed by y, columns by x
        let mut f = vec![vec![0i64; dim]; dim];
        for (yi, y) in basis.iter().enumerate() {
            for (xi, x) in basis.iter().enumerate() {
                let z = ring.mul_el(x, y);
                // left-multiplication matrix of z with integer-lifted
                // structure constants, entries mod p^(i+1):
                // L_z[c][j] = coefficient c of z * g_j
                let mut lz = vec![vec![0i64; n]; n];
                for c in 0..n {
                    for j in 0..n {
                        let mut acc: i128 = 0;
                        for (t, &zt) in z.iter().enumerate() {
                            if zt != 0 {
                                acc += zt as i128 * ring.struct_const(t, j, c) as i128;
                            }
                        }
                        lz[c][j] = acc.rem_euclid(modulus as i128) as i64;
                    }
                }
                let w = mat_pow_mod(&lz, scale as u64, modulus);
                let tr: i64 = (0..n)
                    .fold(0i128, |acc, c| (acc + w[c][c] as i128).rem_euclid(modulus as i128))
                    as i64;
                assert!(
                    tr % scale == 0,
                    "trace congruence violated; radical chain is inconsistent"
                );
                f[yi][xi] = (tr / scale).rem_euclid(p);
            }
        }
        let ker = fp_kernel(&f, dim, p);
        let mut next = Vec::new();
        for xi in ker {
            let mut v = ring.zero();
            for (t, &c) in xi.iter().enumerate() {
                if c != 0 {
                    v = ring.add(&v, &ring.scalar_mul(c, &basis[t]));
                }
            }
            if !ring.is_zero_el(&v) {
                next.push(v);
            }
        }
        basis = next;
    }
    basis
}

/// Intersection of all maximal left ideals. The result is verified to be a
/// two-sided nilpotent ideal before it is returned.
pub fn jacobson_radical(ring: &RingRef) -> IdealHandle {
    if ring.is_zero_ring() {
        return IdealHandle::zero_ideal(ring);
    }
    let mut n = ring.full_subgroup();
    for p in prime_divisors(ring.exponent()) {
        let p_ideal = scalar_ideal(ring, p);
        let (abar, _hom, section) =
            quotient_ring_with_basis(ring, &p_ideal).expect("pR is two-sided");
        let rad_bar = fp_algebra_radical(&abar, p);
        let mut gens: Vec<Elem> = rad_bar.iter().map(|w| section.lift(w)).collect();
        gens.extend(p_ideal.basis.basis().iter().cloned());
        let preimage = Subgroup::from_gens(ring.orders(), &gens);
        n = n.intersection(&preimage);
    }
    let handle = IdealHandle {
        ring: ring.clone(),
        side: Side::TwoSided,
        gens: n.basis().to_vec(),
        basis: n,
    };
    // exactness guards: must be two-sided and nilpotent
    let closed = ideal_closure(ring, &handle.gens, Side::TwoSided);
    assert_eq!(
        closed.basis, handle.basis,
        "radical candidate is not a two-sided ideal"
    );
    assert!(
        handle.nilpotency_degree().is_some(),
        "radical candidate is not nilpotent"
    );
    handle
}
