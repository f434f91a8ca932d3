//! Matrix rings assembled from components.
//!
//! A component is an additive quotient `num/den` of subgroups of a fixed
//! ambient ring; multiplication of the assembled ring is matrix
//! multiplication of representatives. Plain subring patterns use trivial
//! denominators; companion rings use genuine quotient components.

use super::{MatError, Violation};
use crate::finring::subgroup::GroupBasis;
use crate::finring::{Elem, FiniteRing, RingRef, Subgroup};
use std::sync::Arc;

#[derive(Clone)]
pub struct QuotComponent {
    pub num: Subgroup,
    pub den: Subgroup,
    basis: GroupBasis,
}

impl QuotComponent {
    pub fn plain(num: Subgroup, ambient: &RingRef) -> Self {
        let den = ambient.trivial_subgroup();
        let basis = num.quotient_structure(&den);
        QuotComponent { num, den, basis }
    }

    pub fn quotient(num: Subgroup, den: Subgroup) -> Self {
        let basis = num.quotient_structure(&den);
        QuotComponent { num, den, basis }
    }

    pub fn zero(ambient: &RingRef) -> Self {
        QuotComponent::plain(ambient.trivial_subgroup(), ambient)
    }

    pub fn full(ambient: &RingRef) -> Self {
        QuotComponent::plain(ambient.full_subgroup(), ambient)
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        self.basis.gens()
    }

    pub fn orders(&self) -> &[i64] {
        self.basis.orders()
    }

    pub fn express(&self, ambient: &[i64]) -> Option<Vec<i64>> {
        self.basis.express(ambient)
    }

    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        self.basis.lift(coords)
    }
}

/// An n x n array of components over one ambient ring.
pub struct ComponentMatrix {
    pub ring: RingRef,
    pub n: usize,
    pub comps: Vec<Vec<QuotComponent>>,
}

/// Maps between the assembled ring and its components.
pub struct Addressing {
    pub ring: RingRef,
    pub ambient: RingRef,
    pub n: usize,
    comps: Vec<Vec<QuotComponent>>,
    /// generator layout: (row, col, basis index)
    gen_index: Vec<(usize, usize, usize)>,
}

impl std::fmt::Debug for Addressing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Addressing(n={}, |ring|={})", self.n, self.ring.order())
    }
}

impl Addressing {
    /// Element supported on component (i, j) representing the class of `x`.
    pub fn embed(&self, i: usize, j: usize, x: &[i64]) -> Option<Elem> {
        let coords = self.comps[i][j].express(x)?;
        let mut v = vec![0i64; self.gen_index.len()];
        for (pos, &(a, b, t)) in self.gen_index.iter().enumerate() {
            if a == i && b == j {
                v[pos] = coords[t];
            }
        }
        Some(v)
    }

    /// Ambient representative of the (i, j) component of an element.
    pub fn component_rep(&self, el: &Elem, i: usize, j: usize) -> Elem {
        let mut coords = Vec::new();
        for (pos, &(a, b, _)) in self.gen_index.iter().enumerate() {
            if a == i && b == j {
                coords.push(el[pos]);
            }
        }
        self.comps[i][j].lift(&coords)
    }

    /// The diagonal matrix idempotent e_i.
    pub fn diag_idempotent(&self, i: usize) -> Elem {
        self.embed(i, i, &self.ambient.one())
            .expect("diagonal components contain 1")
    }

    /// Subgroup of the assembled ring supported on component (i, j).
    pub fn component_subgroup(&self, i: usize, j: usize) -> Subgroup {
        let mut gens = Vec::new();
        for (pos, &(a, b, _)) in self.gen_index.iter().enumerate() {
            if a == i && b == j {
                let mut v = vec![0i64; self.gen_index.len()];
                v[pos] = 1;
                gens.push(v);
            }
        }
        Subgroup::from_gens(self.ring.orders(), &gens)
    }

    /// Embed a set of ambient subgroups (one per matrix position) as a
    /// subgroup of the assembled ring; every provided subgroup must sit
    /// inside the numerator of its component.
    pub fn embed_componentwise(&self, parts: &[Vec<Subgroup>]) -> Option<Subgroup> {
        let mut gens: Vec<Elem> = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for b in parts[i][j].basis() {
                    gens.push(self.embed(i, j, b)?);
                }
            }
        }
        Some(Subgroup::from_gens(self.ring.orders(), &gens))
    }

    pub fn component(&self, i: usize, j: usize) -> &QuotComponent {
        &self.comps[i][j]
    }
}

impl ComponentMatrix {
    /// Closure and well-definedness violations of the component layout.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let r = &self.ring;
        for i in 0..self.n {
            let ci = &self.comps[i][i];
            if !ci.num.contains(&r.one()) {
                out.push(Violation {
                    condition: format!("diagonal component ({i},{i}) must contain 1"),
                    witness: Some(r.one()),
                });
            }
        }
        for i in 0..self.n {
            for k in 0..self.n {
                for j in 0..self.n {
                    let a = &self.comps[i][k];
                    let b = &self.comps[k][j];
                    let c = &self.comps[i][j];
                    for x in a.num.basis() {
                        for y in b.num.basis() {
                            let p = r.mul_el(x, y);
                            if !c.num.contains(&p) {
                                out.push(Violation {
                                    condition: format!(
                                        "product closure fails at ({i},{k},{j})"
                                    ),
                                    witness: Some(p),
                                });
                            }
                        }
                    }
                    // quotient well-definedness: num*den and den*num must
                    // land in the target denominator
                    for x in a.num.basis() {
                        for y in b.den.basis() {
                            let p = r.mul_el(x, y);
                            if !c.den.contains(&p) {
                                out.push(Violation {
                                    condition: format!(
                                        "quotient well-definedness fails at ({i},{k},{j})"
                                    ),
                                    witness: Some(p),
                                });
                            }
                        }
                    }
                    for x in a.den.basis() {
                        for y in b.num.basis() {
                            let p = r.mul_el(x, y);
                            if !c.den.contains(&p) {
                                out.push(Violation {
                                    condition: format!(
                                        "quotient well-definedness fails at ({i},{k},{j})"
                                    ),
                                    witness: Some(p),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Assemble the ring. Conditions are re-verified here so builders are
    /// safe entry points regardless of earlier checks.
    pub fn build(&self) -> Result<(RingRef, Addressing), MatError> {
        let violations = self.violations();
        if !violations.is_empty() {
            return Err(MatError::ConditionsNotVerified(violations));
        }
        let mut gen_index = Vec::new();
        let mut orders = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for (t, &d) in self.comps[i][j].orders().iter().enumerate() {
                    gen_index.push((i, j, t));
                    orders.push(d);
                }
            }
        }
        let ngens = gen_index.len();
        let mut mul = vec![vec![vec![0i64; ngens]; ngens]; ngens];
        for (a, &(i, j, s)) in gen_index.iter().enumerate() {
            let x = &self.comps[i][j].gens()[s];
            for (b, &(k, l, t)) in gen_index.iter().enumerate() {
                if j != k {
                    continue;
                }
                let y = &self.comps[k][l].gens()[t];
                let p = self.ring.mul_el(x, y);
                let coords = self.comps[i][l]
                    .express(&p)
                    .expect("closure was verified");
                for (pos, &(u, v, w)) in gen_index.iter().enumerate() {
                    if u == i && v == l {
                        mul[a][b][pos] = coords[w];
                    }
                }
            }
        }
        let mut one = vec![0i64; ngens];
        for i in 0..self.n {
            let coords = self.comps[i][i]
                .express(&self.ring.one())
                .expect("diagonal contains 1");
            for (pos, &(u, v, w)) in gen_index.iter().enumerate() {
                if u == i && v == i {
                    one[pos] = coords[w];
                }
            }
        }
        let ring = Arc::new(
            FiniteRing::make_ring(orders, mul, one)
                .expect("verified component layout assembles to a ring"),
        );
        Ok((
            ring.clone(),
            Addressing {
                ring,
                ambient: self.ring.clone(),
                n: self.n,
                comps: self.comps.clone(),
                gen_index,
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{ideal_closure, unit_group, Side};

    fn zmod(m: i64) -> RingRef {
        Arc::new(FiniteRing::zmod(m))
    }

    #[test]
    fn full_2x2_over_f2_is_m2() {
        let f2 = zmod(2);
        let cm = ComponentMatrix {
            ring: f2.clone(),
            n: 2,
            comps: vec![
                vec![QuotComponent::full(&f2), QuotComponent::full(&f2)],
                vec![QuotComponent::full(&f2), QuotComponent::full(&f2)],
            ],
        };
        let (ring, _) = cm.build().unwrap();
        assert_eq!(ring.order(), 16);
        assert_eq!(unit_group(&ring, 1 << 20).unwrap().len(), 6);
    }

    #[test]
    fn triangular_with_ideal_over_z4() {
        // T = [[Z/4, 2Z/4], [Z/4, Z/4]], order 4*2*4*4 = 128
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let cm = ComponentMatrix {
            ring: r.clone(),
            n: 2,
            comps: vec![
                vec![
                    QuotComponent::full(&r),
                    QuotComponent::plain(i.basis.clone(), &r),
                ],
                vec![QuotComponent::full(&r), QuotComponent::full(&r)],
            ],
        };
        let (ring, addr) = cm.build().unwrap();
        assert_eq!(ring.order(), 128);
        let e0 = addr.diag_idempotent(0);
        let e1 = addr.diag_idempotent(1);
        assert_eq!(ring.mul_el(&e0, &e0), e0);
        assert_eq!(ring.mul_el(&e0, &e1), ring.zero());
        assert_eq!(ring.add(&e0, &e1), ring.one());
    }

    #[test]
    fn closure_violation_reported() {
        // [[R, 0],[R, R]] is fine, but [[R, R],[0, 2Z/4 ... ]] with a
        // non-closed layout must fail: use [[2Z/4, R],[R, R]] where the
        // (0,0) entry misses 1
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let cm = ComponentMatrix {
            ring: r.clone(),
            n: 2,
            comps: vec![
                vec![
                    QuotComponent::plain(i.basis.clone(), &r),
                    QuotComponent::full(&r),
                ],
                vec![QuotComponent::full(&r), QuotComponent::full(&r)],
            ],
        };
        let err = cm.build().unwrap_err();
        assert!(matches!(err, MatError::ConditionsNotVerified(_)));
    }

    #[test]
    fn quotient_component_corner() {
        // C = [[R, R/I],[0, R/I]] over R = Z/4, I = 2R: order 4*2*2 = 16
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let quot = || QuotComponent::quotient(r.full_subgroup(), i.basis.clone());
        let cm = ComponentMatrix {
            ring: r.clone(),
            n: 2,
            comps: vec![
                vec![QuotComponent::full(&r), quot()],
                vec![QuotComponent::zero(&r), quot()],
            ],
        };
        let (ring, _) = cm.build().unwrap();
        assert_eq!(ring.order(), 16);
    }
}
