//! Subgroups of a finite abelian group `⊕ Z/orders[i]`.
//!
//! A subgroup is stored as the integer lattice between `diag(orders)·Z^k`
//! and `Z^k` that corresponds to it, in row Hermite form: upper triangular,
//! pivot `h_j | orders[j]` on the diagonal, entries above a pivot reduced
//! modulo that pivot. The form is canonical, so equality of subgroups is
//! structural equality.

use crate::abgroup::{kernel, snf, FgAbGroup, IntMat};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), if a < 0 { -1 } else { 1 }, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
    (((a as i128 * b as i128) % m as i128 + m as i128) % m as i128) as i64
}

/// `v mod orders`, entries into `[0, orders[c])`.
pub fn reduce_vec(v: &mut [i64], orders: &[i64]) {
    for (x, &m) in v.iter_mut().zip(orders) {
        *x = x.rem_euclid(m);
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    orders: Vec<i64>,
    rows: Vec<Vec<i64>>,
}

impl Subgroup {
    /// The zero subgroup.
    pub fn trivial(orders: &[i64]) -> Self {
        let k = orders.len();
        let mut rows = vec![vec![0i64; k]; k];
        for j in 0..k {
            rows[j][j] = orders[j];
        }
        Subgroup {
            orders: orders.to_vec(),
            rows,
        }
    }

    /// The whole group.
    pub fn full(orders: &[i64]) -> Self {
        let k = orders.len();
        let mut s = Subgroup::trivial(orders);
        for j in 0..k {
            s.rows[j][j] = 1;
        }
        s
    }

    pub fn from_gens(orders: &[i64], gens: &[Vec<i64>]) -> Self {
        let mut s = Subgroup::trivial(orders);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn ambient_orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Basis rows (also valid element representatives of the subgroup).
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Insert a vector; returns true if the subgroup grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let k = self.orders.len();
        assert_eq!(v.len(), k, "vector length mismatch");
        let mut v = v.to_vec();
        reduce_vec(&mut v, &self.orders);
        let mut grew = false;
        for j in 0..k {
            if v[j] == 0 {
                continue;
            }
            let h = self.rows[j][j];
            if v[j] % h == 0 {
                let q = v[j] / h;
                for c in j..k {
                    v[c] = (v[c] as i128 - q as i128 * self.rows[j][c] as i128)
                        .rem_euclid(self.orders[c] as i128) as i64;
                }
            } else {
                let (g, a, b) = egcd(h, v[j]);
                let mut new_row = vec![0i64; k];
                for c in j..k {
                    let t = a as i128 * self.rows[j][c] as i128 + b as i128 * v[c] as i128;
                    new_row[c] = t.rem_euclid(self.orders[c] as i128) as i64;
                }
                // force the exact pivot value: the combination equals g mod orders[j]
                new_row[j] = g;
                let (hq, vq) = (h / g, v[j] / g);
                let mut v2 = vec![0i64; k];
                for c in j..k {
                    let t = hq as i128 * v[c] as i128 - vq as i128 * self.rows[j][c] as i128;
                    v2[c] = t.rem_euclid(self.orders[c] as i128) as i64;
                }
                self.rows[j] = new_row;
                v = v2;
                grew = true;
            }
        }
        if grew {
            self.renormalize();
        }
        grew
    }

    fn renormalize(&mut self) {
        let k = self.orders.len();
        for j in 0..k {
            let h = self.rows[j][j];
            for i in 0..j {
                let q = self.rows[i][j].div_euclid(h);
                if q != 0 {
                    for c in j..k {
                        self.rows[i][c] = (self.rows[i][c] as i128
                            - q as i128 * self.rows[j][c] as i128)
                            .rem_euclid(self.orders[c] as i128)
                            as i64;
                    }
                }
            }
        }
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.orders, other.orders);
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Coefficients of `v` over the basis rows, each in `[0, orders[j]/h_j)`.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let k = self.orders.len();
        assert_eq!(v.len(), k);
        let mut v = v.to_vec();
        reduce_vec(&mut v, &self.orders);
        let mut out = vec![0i64; k];
        for j in 0..k {
            let h = self.rows[j][j];
            if v[j] % h != 0 {
                return None;
            }
            let q = v[j] / h;
            out[j] = q;
            if q != 0 {
                for c in j..k {
                    v[c] = (v[c] as i128 - q as i128 * self.rows[j][c] as i128)
                        .rem_euclid(self.orders[c] as i128) as i64;
                }
            }
        }
        Some(out)
    }

    pub fn order(&self) -> u128 {
        (0..self.orders.len())
            .map(|j| (self.orders[j] / self.rows[j][j]) as u128)
            .product()
    }

    pub fn is_full(&self) -> bool {
        (0..self.orders.len()).all(|j| self.rows[j][j] == 1)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.orders.len()).all(|j| self.rows[j][j] == self.orders[j])
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(j, r)| r.iter().enumerate().all(|(c, &x)| c == j || x == 0))
    }

    /// Element representatives of the subgroup. Order of iteration is the
    /// mixed-radix order of basis coefficients.
    pub fn elements(&self) -> SubgroupElements<'_> {
        let radii: Vec<i64> = (0..self.orders.len())
            .map(|j| self.orders[j] / self.rows[j][j])
            .collect();
        SubgroupElements {
            sub: self,
            counters: vec![0; self.orders.len()],
            radii,
            done: false,
        }
    }

    /// Intersection, computed exactly from the two lattices.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.orders, other.orders);
        let k = self.orders.len();
        if k == 0 {
            return self.clone();
        }
        // columns of m are (basis of self | -(basis of other)) transposed:
        // kernel vectors (a, b) satisfy a*rows1 = b*rows2
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(k);
        for c in 0..k {
            let mut row = Vec::with_capacity(2 * k);
            for t in 0..k {
                row.push(self.rows[t][c]);
            }
            for t in 0..k {
                row.push(-other.rows[t][c]);
            }
            rows.push(row);
        }
        let m = IntMat::from_rows_i64(&rows);
        let ker = kernel(&m);
        let mut out = Subgroup::trivial(&self.orders);
        for z in ker {
            let mut v = vec![0i64; k];
            for c in 0..k {
                let mut acc: i128 = 0;
                let mc = self.orders[c] as i128;
                let mc_big = BigInt::from(mc);
                for t in 0..k {
                    let zt = (&z[t] % &mc_big)
                        .to_i128()
                        .expect("reduced coefficient fits i128");
                    acc += zt * self.rows[t][c] as i128;
                }
                v[c] = acc.rem_euclid(mc) as i64;
            }
            out.insert(&v);
        }
        out
    }

    /// Exact integral coordinates of a lattice vector over the basis rows
    /// (no reduction modulo the ambient orders).
    fn exact_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let k = self.orders.len();
        let mut t: Vec<BigInt> = v.to_vec();
        let mut out = vec![BigInt::zero(); k];
        for j in 0..k {
            let h = BigInt::from(self.rows[j][j]);
            if (&t[j] % &h) != BigInt::zero() {
                return None;
            }
            let q = &t[j] / &h;
            if q != BigInt::zero() {
                for c in j..k {
                    t[c] = &t[c] - &q * self.rows[j][c];
                }
            }
            out[j] = q;
        }
        if t.iter().all(|x| x.is_zero()) {
            Some(out)
        } else {
            None
        }
    }

    /// Structure of `self/den` (`den` must be contained in `self`) as an
    /// abelian group, with generators and a coordinate map.
    pub fn quotient_structure(&self, den: &Subgroup) -> GroupBasis {
        assert_eq!(self.orders, den.orders);
        let k = self.orders.len();
        // relation lattice: exact expressions of the denominator basis and
        // of the ambient order relations over the numerator basis
        let mut rel_rows: Vec<Vec<BigInt>> = Vec::with_capacity(2 * k);
        for r in &den.rows {
            let v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            let c = self
                .exact_coords(&v)
                .expect("quotient denominator not contained in numerator");
            rel_rows.push(c);
        }
        for j in 0..k {
            let mut v = vec![BigInt::zero(); k];
            v[j] = BigInt::from(self.orders[j]);
            let c = self
                .exact_coords(&v)
                .expect("ambient relations lie in every lattice");
            rel_rows.push(c);
        }
        let rel = IntMat::from_rows(rel_rows);
        let dec = snf(&rel);
        let mut gens = Vec::new();
        let mut gen_orders = Vec::new();
        let mut vmod_cols: Vec<(usize, i64)> = Vec::new();
        for j in 0..k {
            let d = dec.d.get(j, j);
            assert!(!d.is_zero(), "quotient of full-rank lattices is finite");
            let d = d.abs().to_i64().expect("cyclic order fits i64");
            if d >= 2 {
                // generator: (e_j * V^-1) * basis rows, reduced mod ambient orders
                let mut v = vec![0i64; k];
                for c in 0..k {
                    let mc = self.orders[c] as i128;
                    let mc_big = BigInt::from(mc);
                    let mut acc: i128 = 0;
                    for t in 0..k {
                        let coef = (dec.v_inv.get(j, t) % &mc_big)
                            .to_i128()
                            .expect("reduced transform entry fits");
                        acc += coef * self.rows[t][c] as i128;
                    }
                    v[c] = acc.rem_euclid(mc) as i64;
                }
                gens.push(v);
                gen_orders.push(d);
                vmod_cols.push((j, d));
            }
        }
        // coordinate map: coords in self-basis -> (c * V) mod d at kept columns
        let mut vmod = vec![vec![0i64; vmod_cols.len()]; k];
        for t in 0..k {
            for (outj, &(j, d)) in vmod_cols.iter().enumerate() {
                let e = (dec.v.get(t, j) % BigInt::from(d))
                    .to_i64()
                    .unwrap()
                    .rem_euclid(d);
                vmod[t][outj] = e;
            }
        }
        GroupBasis {
            num: self.clone(),
            gens,
            orders: gen_orders,
            vmod,
        }
    }

    /// Structure of the subgroup itself as an abelian group.
    pub fn group_structure(&self) -> GroupBasis {
        self.quotient_structure(&Subgroup::trivial(&self.orders))
    }

    pub fn as_fg_ab_group(&self) -> FgAbGroup {
        FgAbGroup::new(0, self.group_structure().orders.iter().map(|&d| d as u64))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(orders={:?}, rows={:?}, order={})",
            self.orders,
            self.rows,
            self.order()
        )
    }
}

pub struct SubgroupElements<'a> {
    sub: &'a Subgroup,
    counters: Vec<i64>,
    radii: Vec<i64>,
    done: bool,
}

impl<'a> Iterator for SubgroupElements<'a> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let k = self.sub.orders.len();
        let mut v = vec![0i64; k];
        for t in 0..k {
            let c = self.counters[t];
            if c != 0 {
                for col in t..k {
                    v[col] = (v[col] as i128 + c as i128 * self.sub.rows[t][col] as i128)
                        .rem_euclid(self.sub.orders[col] as i128)
                        as i64;
                }
            }
        }
        // advance mixed-radix counter
        let mut t = 0;
        loop {
            if t == k {
                self.done = true;
                break;
            }
            self.counters[t] += 1;
            if self.counters[t] < self.radii[t] {
                break;
            }
            self.counters[t] = 0;
            t += 1;
        }
        Some(v)
    }
}

/// Basis data for a finite abelian group presented as `num/den`: true cyclic
/// generators with their orders, plus a linear coordinate map.
#[derive(Clone)]
pub struct GroupBasis {
    num: Subgroup,
    gens: Vec<Vec<i64>>,
    orders: Vec<i64>,
    /// `vmod[t][j]`: contribution of the `t`-th numerator basis coefficient
    /// to the `j`-th output coordinate, reduced mod `orders[j]`.
    vmod: Vec<Vec<i64>>,
}

impl GroupBasis {
    /// Ambient representatives of the cyclic generators.
    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    /// Cyclic orders of the generators (each >= 2).
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::new(0, self.orders.iter().map(|&d| d as u64))
    }

    /// Coordinates of an ambient vector in the generator basis; `None` when
    /// the vector is not in the numerator subgroup.
    pub fn express(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = self.num.coords(v)?;
        let mut out = vec![0i64; self.orders.len()];
        for (j, &d) in self.orders.iter().enumerate() {
            let mut acc: i128 = 0;
            for (t, &ct) in c.iter().enumerate() {
                acc += (ct as i128).rem_euclid(d as i128) * self.vmod[t][j] as i128;
            }
            out[j] = acc.rem_euclid(d as i128) as i64;
        }
        Some(out)
    }

    /// Ambient representative of a coordinate vector.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        let k = self.num.dim();
        let mut v = vec![0i64; k];
        for (t, &c) in coords.iter().enumerate() {
            if c != 0 {
                for col in 0..k {
                    v[col] = (v[col] as i128 + c as i128 * self.gens[t][col] as i128)
                        .rem_euclid(self.num.orders[col] as i128)
                        as i64;
                }
            }
        }
        v
    }
}

/// Solve `{x in ⊕ Z/var_orders : a·x ≡ 0 (mod m) for every constraint}`.
///
/// Every constraint must be well-posed on the ambient group, i.e.
/// `a_c * var_orders[c] ≡ 0 (mod m)` for all `c`.
pub fn solve_kernel(var_orders: &[i64], constraints: &[(Vec<i64>, i64)]) -> Subgroup {
    let mut cur = Subgroup::full(var_orders);
    for (a, m) in constraints {
        restrict(&mut cur, a, *m);
        if cur.is_trivial() {
            // later constraints cannot shrink further but must stay well-posed
            debug_assert!(constraints
                .iter()
                .all(|(a, m)| well_posed(var_orders, a, *m)));
            break;
        }
    }
    cur
}

fn well_posed(var_orders: &[i64], a: &[i64], m: i64) -> bool {
    var_orders
        .iter()
        .zip(a)
        .all(|(&o, &ac)| mul_mod(ac.rem_euclid(m), o.rem_euclid(m), m) == 0)
}

fn restrict(cur: &mut Subgroup, a: &[i64], m: i64) {
    debug_assert!(well_posed(&cur.orders, a, m), "ill-posed congruence");
    if m == 1 {
        return;
    }
    let k = cur.orders.len();
    let w: Vec<i64> = (0..k)
        .map(|t| {
            let mut acc: i128 = 0;
            for c in 0..k {
                acc += (a[c] as i128).rem_euclid(m as i128) * cur.rows[t][c] as i128;
            }
            acc.rem_euclid(m as i128) as i64
        })
        .collect();
    if w.iter().all(|&x| x == 0) {
        return;
    }
    // kernel of the single congruence w·c ≡ 0 (mod m) in coefficient space
    let mut row: Vec<i64> = w.clone();
    row.push(m);
    let mat = IntMat::from_rows_i64(&[row]);
    let ker = kernel(&mat);
    let old_rows = cur.rows.clone();
    let mut next = Subgroup::trivial(&cur.orders);
    for z in ker {
        let mut v = vec![0i64; k];
        for c in 0..k {
            let mc = cur.orders[c] as i128;
            let mc_big = BigInt::from(mc);
            let mut acc: i128 = 0;
            for t in 0..k {
                let zt = (&z[t] % &mc_big).to_i128().unwrap();
                acc += zt * old_rows[t][c] as i128;
            }
            v[c] = acc.rem_euclid(mc) as i64;
        }
        next.insert(&v);
    }
    *cur = next;
}

/// Solve an inhomogeneous system `a·x ≡ b (mod m)`; returns a particular
/// solution and the homogeneous solution subgroup.
pub fn solve_affine(
    var_orders: &[i64],
    constraints: &[(Vec<i64>, i64, i64)],
) -> Option<(Vec<i64>, Subgroup)> {
    let k = var_orders.len();
    let mut x0 = vec![0i64; k];
    let mut cur = Subgroup::full(var_orders);
    for (a, m, b) in constraints {
        let m = *m;
        if m == 1 {
            continue;
        }
        let mut beta: i128 = (*b as i128).rem_euclid(m as i128);
        for c in 0..k {
            beta -= (a[c] as i128).rem_euclid(m as i128) * x0[c] as i128;
        }
        let beta = beta.rem_euclid(m as i128) as i64;
        if beta != 0 {
            let w: Vec<i64> = (0..k)
                .map(|t| {
                    let mut acc: i128 = 0;
                    for c in 0..k {
                        acc += (a[c] as i128).rem_euclid(m as i128) * cur.rows[t][c] as i128;
                    }
                    acc.rem_euclid(m as i128) as i64
                })
                .collect();
            let mut row = w;
            row.push(m);
            let mat = IntMat::from_rows_i64(&[row]);
            let dec = snf(&mat);
            let g = dec.d.get(0, 0);
            if g.is_zero() || !(BigInt::from(beta) % g).is_zero() {
                return None;
            }
            let y0 = BigInt::from(beta) / g * dec.u.get(0, 0);
            for c in 0..k {
                let mc = var_orders[c] as i128;
                let mc_big = BigInt::from(mc);
                let mut acc: i128 = x0[c] as i128;
                for t in 0..k {
                    let vt = ((dec.v.get(t, 0) * &y0) % &mc_big).to_i128().unwrap();
                    acc += vt * cur.rows[t][c] as i128;
                }
                x0[c] = acc.rem_euclid(mc) as i64;
            }
        }
        restrict(&mut cur, a, m);
    }
    Some((x0, cur))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_trivial() {
        let orders = [4i64, 2, 8];
        let f = Subgroup::full(&orders);
        let t = Subgroup::trivial(&orders);
        assert!(f.is_full());
        assert!(!f.is_trivial());
        assert!(t.is_trivial());
        assert_eq!(f.order(), 64);
        assert_eq!(t.order(), 1);
        assert!(t.is_subgroup_of(&f));
    }

    #[test]
    fn cyclic_subgroup_of_z8() {
        let orders = [8i64];
        let s = Subgroup::from_gens(&orders, &[vec![2]]);
        assert_eq!(s.order(), 4);
        assert!(s.contains(&[6]));
        assert!(!s.contains(&[3]));
        let els: Vec<_> = s.elements().collect();
        assert_eq!(els.len(), 4);
    }

    #[test]
    fn diagonal_in_z2xz2() {
        let orders = [2i64, 2];
        let s = Subgroup::from_gens(&orders, &[vec![1, 1]]);
        assert_eq!(s.order(), 2);
        assert!(s.contains(&[1, 1]));
        assert!(!s.contains(&[1, 0]));
    }

    #[test]
    fn canonical_equality() {
        let orders = [4i64, 4];
        let a = Subgroup::from_gens(&orders, &[vec![2, 2], vec![0, 2]]);
        let b = Subgroup::from_gens(&orders, &[vec![2, 0], vec![2, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.order(), 4);
    }

    #[test]
    fn quotient_structure_detects_z4() {
        // L = <(1,1),(0,2)> inside Z/2 x Z/4; T = trivial. L/T is cyclic of
        // order 4 even though the naive pivot quotients read (2, 2).
        let orders = [2i64, 4];
        let l = Subgroup::from_gens(&orders, &[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.order(), 4);
        let gb = l.group_structure();
        assert_eq!(gb.group(), FgAbGroup::cyclic(4));
        // generator really has order 4
        let g = &gb.gens()[0];
        let mut w = vec![0i64; 2];
        for _ in 0..2 {
            for c in 0..2 {
                w[c] = (w[c] + g[c]).rem_euclid(orders[c]);
            }
        }
        assert!(w.iter().any(|&x| x != 0), "2*g must be nonzero");
    }

    #[test]
    fn express_and_lift_roundtrip() {
        let orders = [4i64, 8];
        let l = Subgroup::from_gens(&orders, &[vec![2, 0], vec![0, 2]]);
        let gb = l.group_structure();
        for el in l.elements() {
            let c = gb.express(&el).expect("member");
            let back = gb.lift(&c);
            assert_eq!(back, el);
        }
        assert!(gb.express(&[1, 0]).is_none());
    }

    #[test]
    fn intersection_examples() {
        let orders = [8i64];
        let a = Subgroup::from_gens(&orders, &[vec![2]]);
        let b = Subgroup::from_gens(&orders, &[vec![4]]);
        assert_eq!(a.intersection(&b), b);

        let orders = [2i64, 2];
        let a = Subgroup::from_gens(&orders, &[vec![1, 0]]);
        let b = Subgroup::from_gens(&orders, &[vec![1, 1]]);
        assert!(a.intersection(&b).is_trivial());
    }

    #[test]
    fn kernel_solver_annihilator() {
        // {x in Z/8 : 2x ≡ 0 mod 8} = 4Z/8
        let s = solve_kernel(&[8], &[(vec![2], 8)]);
        assert_eq!(s, Subgroup::from_gens(&[8], &[vec![4]]));
    }

    #[test]
    fn affine_solver() {
        // 3x ≡ 5 mod 7 and x ≡ 1 mod 2 over Z/14
        let sol = solve_affine(&[14], &[(vec![3], 7, 5), (vec![1], 2, 1)]);
        let (x0, hom) = sol.expect("solvable");
        assert_eq!((3 * x0[0]).rem_euclid(7), 5);
        assert_eq!(x0[0].rem_euclid(2), 1);
        assert_eq!(hom.order(), 1);

        // unsolvable: 2x ≡ 1 mod 4
        assert!(solve_affine(&[4], &[(vec![2], 4, 1)]).is_none());
    }

    #[test]
    fn zero_dimensional_ambient() {
        let s = Subgroup::full(&[]);
        assert!(s.is_full() && s.is_trivial());
        assert_eq!(s.order(), 1);
        assert_eq!(s.elements().count(), 1);
    }
}
