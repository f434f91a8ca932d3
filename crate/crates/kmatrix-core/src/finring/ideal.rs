//! Ideals as closed additive subgroups, plus the colon construction
//! `(I : J) = {x | I x ⊆ J}`.

use super::ring::{Elem, FiniteRing, RingRef};
use super::subgroup::{solve_kernel, Subgroup};
use super::RingError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "left")]
    Left,
    #[serde(rename = "right")]
    Right,
    #[serde(rename = "two")]
    TwoSided,
}

#[derive(Clone)]
pub struct IdealHandle {
    pub ring: RingRef,
    pub side: Side,
    pub gens: Vec<Elem>,
    pub basis: Subgroup,
}

impl IdealHandle {
    pub fn order(&self) -> u128 {
        self.basis.order()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.basis.contains(x)
    }

    pub fn is_two_sided(&self) -> bool {
        match self.side {
            Side::TwoSided => true,
            _ => is_closed(&self.ring, &self.basis, Side::TwoSided),
        }
    }

    /// The whole ring as a two-sided ideal.
    pub fn unit_ideal(ring: &RingRef) -> IdealHandle {
        IdealHandle {
            ring: ring.clone(),
            side: Side::TwoSided,
            gens: vec![ring.one()],
            basis: ring.full_subgroup(),
        }
    }

    pub fn zero_ideal(ring: &RingRef) -> IdealHandle {
        IdealHandle {
            ring: ring.clone(),
            side: Side::TwoSided,
            gens: vec![],
            basis: ring.trivial_subgroup(),
        }
    }

    /// Product ideal I*J (two-sided closure of pairwise products).
    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle, RingError> {
        if self.ring != other.ring {
            return Err(RingError::ParentMismatch);
        }
        let mut gens = Vec::new();
        for a in self.basis.basis() {
            for b in other.basis.basis() {
                gens.push(self.ring.mul_el(a, b));
            }
        }
        Ok(ideal_closure(&self.ring, &gens, Side::TwoSided))
    }

    /// I^n for n >= 1.
    pub fn power(&self, n: u32) -> Result<IdealHandle, RingError> {
        assert!(n >= 1, "ideal powers start at 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Sum of ideals (additive join).
    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle, RingError> {
        if self.ring != other.ring {
            return Err(RingError::ParentMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(IdealHandle {
            ring: self.ring.clone(),
            side: combine_side(self.side, other.side),
            gens,
            basis: self.basis.join(&other.basis),
        })
    }

    pub fn is_idempotent(&self) -> bool {
        match self.product(self) {
            Ok(sq) => sq.basis == self.basis,
            Err(_) => false,
        }
    }

    /// Smallest k with I^k = 0, if I is nilpotent.
    pub fn nilpotency_degree(&self) -> Option<u32> {
        let mut power = self.basis.clone();
        let mut k = 1u32;
        loop {
            if power.is_trivial() {
                return Some(k);
            }
            let mut gens = Vec::new();
            for a in power.basis() {
                for b in self.basis.basis() {
                    gens.push(self.ring.mul_el(a, b));
                }
            }
            let next = Subgroup::from_gens(self.ring.orders(), &gens);
            if next == power {
                return None;
            }
            power = next;
            k += 1;
        }
    }
}

impl std::fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "IdealHandle(side={:?}, |I|={}, gens={:?})",
            self.side,
            self.order(),
            self.gens
        )
    }
}

fn combine_side(a: Side, b: Side) -> Side {
    if a == b {
        a
    } else {
        // mixed-side sums only keep the guarantees common to both
        Side::TwoSided
    }
}

fn is_closed(ring: &FiniteRing, sub: &Subgroup, side: Side) -> bool {
    let act_left = matches!(side, Side::Left | Side::TwoSided);
    let act_right = matches!(side, Side::Right | Side::TwoSided);
    for b in sub.basis() {
        for l in 0..ring.num_gens() {
            let g = ring.gen(l);
            if act_left && !sub.contains(&ring.mul_el(&g, b)) {
                return false;
            }
            if act_right && !sub.contains(&ring.mul_el(b, &g)) {
                return false;
            }
        }
    }
    true
}

/// Smallest additive subgroup containing `gens` and closed under the
/// declared side actions.
pub fn ideal_closure(ring: &RingRef, gens: &[Elem], side: Side) -> IdealHandle {
    let act_left = matches!(side, Side::Left | Side::TwoSided);
    let act_right = matches!(side, Side::Right | Side::TwoSided);
    let mut basis = Subgroup::from_gens(ring.orders(), gens);
    loop {
        let mut grew = false;
        let rows: Vec<Elem> = basis.basis().to_vec();
        for b in &rows {
            for l in 0..ring.num_gens() {
                let g = ring.gen(l);
                if act_left {
                    grew |= basis.insert(&ring.mul_el(&g, b));
                }
                if act_right {
                    grew |= basis.insert(&ring.mul_el(b, &g));
                }
            }
        }
        if !grew {
            break;
        }
    }
    IdealHandle {
        ring: ring.clone(),
        side,
        gens: gens.to_vec(),
        basis,
    }
}

/// The two-sided ideal p*R.
pub fn scalar_ideal(ring: &RingRef, p: i64) -> IdealHandle {
    let gens: Vec<Elem> = (0..ring.num_gens())
        .map(|i| ring.scalar_mul(p, &ring.gen(i)))
        .collect();
    IdealHandle {
        ring: ring.clone(),
        side: Side::TwoSided,
        gens: gens.clone(),
        basis: Subgroup::from_gens(ring.orders(), &gens),
    }
}

/// `(I : J) = {x in R | I x ⊆ J}`, with the left-action convention.
/// For two-sided `I`, `J` the result is a two-sided ideal.
pub fn colon_ideal(i: &IdealHandle, j: &IdealHandle) -> Result<IdealHandle, RingError> {
    if i.ring != j.ring {
        return Err(RingError::ParentMismatch);
    }
    let ring = &i.ring;
    let k = ring.num_gens();
    // membership of b*x in J, linearized through the quotient map R -> R/J
    let quot = ring.full_subgroup().quotient_structure(&j.basis);
    let mut constraints: Vec<(Vec<i64>, i64)> = Vec::new();
    for b in i.basis.basis() {
        // images of b*g_l under the quotient coordinates
        let cols: Vec<Vec<i64>> = (0..k)
            .map(|l| {
                quot.express(&ring.mul_el(b, &ring.gen(l)))
                    .expect("full numerator")
            })
            .collect();
        for (out_j, &d) in quot.orders().iter().enumerate() {
            let row: Vec<i64> = (0..k).map(|l| cols[l][out_j]).collect();
            constraints.push((row, d));
        }
    }
    let basis = solve_kernel(ring.orders(), &constraints);
    let gens: Vec<Elem> = basis.basis().to_vec();
    let handle = IdealHandle {
        ring: ring.clone(),
        side: Side::TwoSided,
        gens,
        basis,
    };
    debug_assert!(
        !(i.is_two_sided() && j.is_two_sided()) || handle.is_two_sided(),
        "colon of two-sided ideals must be two-sided"
    );
    Ok(handle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn zmod(m: i64) -> RingRef {
        Arc::new(FiniteRing::zmod(m))
    }

    #[test]
    fn closure_in_zmod4() {
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        assert_eq!(i.order(), 2);
        assert!(i.contains(&[2]));
        assert!(!i.contains(&[1]));
    }

    #[test]
    fn closure_in_f2xf2() {
        let f2 = FiniteRing::zmod(2);
        let r = Arc::new(FiniteRing::product(&f2, &f2));
        let i = ideal_closure(&r, &[vec![1, 0]], Side::TwoSided);
        assert_eq!(i.order(), 2);
        assert!(i.contains(&[1, 0]));
        assert!(!i.contains(&[1, 1]));
    }

    #[test]
    fn closure_in_upper_triangular() {
        // upper triangular 2x2 over F2: generators e11, e12, e22
        let r = Arc::new(
            FiniteRing::make_ring(
                vec![2, 2, 2],
                vec![
                    // e11 * : e11 -> e11, e12 -> e12, e22 -> 0
                    vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
                    // e12 * : e11 -> 0, e12 -> 0, e22 -> e12
                    vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]],
                    // e22 * : e11 -> 0, e12 -> 0, e22 -> e22
                    vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
                ],
                vec![1, 0, 1],
            )
            .unwrap(),
        );
        let i = ideal_closure(&r, &[vec![0, 1, 0]], Side::TwoSided);
        // the square-zero ideal {0, e12}
        assert_eq!(i.order(), 2);
        assert_eq!(i.nilpotency_degree(), Some(2));
    }

    #[test]
    fn colon_identities() {
        // (I : R) = R and (R : I) = I for any ideal I
        let r = zmod(8);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let full = IdealHandle::unit_ideal(&r);
        let c1 = colon_ideal(&i, &full).unwrap();
        assert!(c1.basis.is_full());
        let c2 = colon_ideal(&full, &i).unwrap();
        assert_eq!(c2.basis, i.basis);
    }

    #[test]
    fn colon_brute_force_zmod8() {
        // {x | 2x in 4Z/8} = 2Z/8, checked against enumeration
        let r = zmod(8);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let j = ideal_closure(&r, &[vec![4]], Side::TwoSided);
        let c = colon_ideal(&i, &j).unwrap();
        let brute: Vec<Elem> = r
            .elements()
            .filter(|x| {
                i.basis
                    .elements()
                    .all(|a| j.contains(&r.mul_el(&a, x)))
            })
            .collect();
        for x in &brute {
            assert!(c.contains(x));
        }
        assert_eq!(c.order(), brute.len() as u128);
        assert_eq!(c.basis, ideal_closure(&r, &[vec![2]], Side::TwoSided).basis);
    }

    #[test]
    fn ideal_powers_and_idempotence() {
        let r = zmod(8);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        assert_eq!(i.power(2).unwrap().order(), 2); // 4Z/8
        assert_eq!(i.power(3).unwrap().order(), 1); // 0
        assert!(!i.is_idempotent());
        assert!(IdealHandle::unit_ideal(&r).is_idempotent());
        assert_eq!(i.nilpotency_degree(), Some(3));
    }
}
