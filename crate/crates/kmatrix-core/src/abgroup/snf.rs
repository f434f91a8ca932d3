//! Smith normal form over the integers with transform certificates.
//!
//! All arithmetic is exact big-integer arithmetic. Pivots are chosen by
//! minimal absolute value, which keeps entries small at the scales this
//! crate works at.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row[i] += c * row[k]
    fn add_row(&mut self, i: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(i, j) + c * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// col[j] += c * col[k]
    fn add_col(&mut self, j: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, j) + c * self.get(i, k);
            self.set(i, j, v);
        }
    }
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation: `u * m * v == d` with
/// `u`, `v` unimodular, `d` diagonal, diagonal entries nonnegative and
/// forming a divisibility chain.
pub struct SnfDecomp {
    pub d: IntMat,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl SnfDecomp {
    /// Nonzero diagonal entries d_1 | d_2 | ...
    pub fn invariants(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

struct Worker {
    a: IntMat,
    u: IntMat,
    u_inv: IntMat,
    v: IntMat,
    v_inv: IntMat,
}

impl Worker {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
        self.v_inv.swap_rows(j, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// row[i] += c * row[t]
    fn add_row(&mut self, i: usize, t: usize, c: &BigInt) {
        self.a.add_row(i, t, c);
        self.u.add_row(i, t, c);
        let neg = -c.clone();
        self.u_inv.add_col(t, i, &neg);
    }

    /// col[j] += c * col[t]
    fn add_col(&mut self, j: usize, t: usize, c: &BigInt) {
        self.a.add_col(j, t, c);
        self.v.add_col(j, t, c);
        let neg = -c.clone();
        self.v_inv.add_row(t, j, &neg);
    }
}

/// Quotient rounding to nearest, which shrinks remainders fastest.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    // adjust so |a - qb| <= |b|/2
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form with full transform certificates.
pub fn snf(m: &IntMat) -> SnfDecomp {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Worker {
        a: m.clone(),
        u: IntMat::identity(rows),
        u_inv: IntMat::identity(rows),
        v: IntMat::identity(cols),
        v_inv: IntMat::identity(cols),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        'cell: loop {
            // minimal-absolute-value pivot in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = w.a.get(i, j);
                    if !x.is_zero()
                        && pivot.map_or(true, |(pi, pj)| x.abs() < w.a.get(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a.get(i, t).is_zero() {
                    let q = -round_div(w.a.get(i, t), w.a.get(t, t));
                    w.add_row(i, t, &q);
                    if !w.a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a.get(t, j).is_zero() {
                    let q = -round_div(w.a.get(t, j), w.a.get(t, t));
                    w.add_col(j, t, &q);
                    if !w.a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // row and column t are clear; enforce divisibility of the rest
            let p = w.a.get(t, t).clone();
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(w.a.get(i, j) % &p).is_zero() {
                        let one = BigInt::one();
                        w.add_row(t, i, &one);
                        continue 'cell;
                    }
                }
            }
            if w.a.get(t, t).sign() == num_bigint::Sign::Minus {
                w.negate_row(t);
            }
            break;
        }
    }
    finish(w)
}

fn finish(mut w: Worker) -> SnfDecomp {
    let steps = w.a.rows().min(w.a.cols());
    for t in 0..steps {
        if w.a.get(t, t).sign() == num_bigint::Sign::Minus {
            w.negate_row(t);
        }
    }
    SnfDecomp {
        d: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Basis of the right kernel `{x : m x = 0}`, as column vectors.
pub fn kernel(m: &IntMat) -> Vec<Vec<BigInt>> {
    let s = snf(m);
    let rank = s.rank();
    let n = m.cols();
    (rank..n)
        .map(|j| (0..n).map(|i| s.v.get(i, j).clone()).collect())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
pub fn det(m: &IntMat) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "det of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a.set(i, j, q);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}
