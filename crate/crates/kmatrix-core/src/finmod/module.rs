//! Finite left modules given by an additive decomposition and one action
//! matrix per ring generator.

use super::ModuleError;
use crate::finring::subgroup::{reduce_vec, Subgroup};
use crate::finring::{Elem, IdealHandle, RingRef};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type ModRef = Arc<FinModule>;

#[derive(Clone, PartialEq, Eq)]
pub struct FinModule {
    pub ring: RingRef,
    orders: Vec<i64>,
    /// `action[l][i][j]`: coefficient of m_i in g_l * m_j.
    action: Vec<Vec<Vec<i64>>>,
}

impl FinModule {
    pub fn new(
        ring: RingRef,
        orders: Vec<i64>,
        action: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, ModuleError> {
        let k = ring.num_gens();
        let n = orders.len();
        if orders.iter().any(|&d| d < 2) {
            return Err(ModuleError::ShapeMismatch(
                "module generator orders must be >= 2".into(),
            ));
        }
        if action.len() != k
            || action
                .iter()
                .any(|m| m.len() != n || m.iter().any(|row| row.len() != n))
        {
            return Err(ModuleError::ShapeMismatch(format!(
                "need {k} action matrices of shape {n}x{n}"
            )));
        }
        let mut action = action;
        for m in &mut action {
            for (i, row) in m.iter_mut().enumerate() {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(orders[i]);
                }
            }
        }
        let module = FinModule {
            ring,
            orders,
            action,
        };
        module.validate()?;
        Ok(module)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let k = self.ring.num_gens();
        let n = self.orders.len();
        // additive orders must be respected on both sides
        for l in 0..k {
            for j in 0..n {
                for i in 0..n {
                    let a = self.action[l][i][j] as i128;
                    let m = self.orders[i] as i128;
                    if (self.orders[j] as i128 * a) % m != 0 {
                        return Err(ModuleError::ActionMismatch(format!(
                            "order of generator {j} not respected by g_{l}"
                        )));
                    }
                    if (self.ring.orders()[l] as i128 * a) % m != 0 {
                        return Err(ModuleError::ActionMismatch(format!(
                            "additive order of ring generator {l} not respected"
                        )));
                    }
                }
            }
        }
        // action(one) = identity
        for j in 0..n {
            let e = self.basis_el(j);
            if self.apply(&self.ring.one(), &e) != e {
                return Err(ModuleError::ActionMismatch(format!(
                    "identity does not act as identity on generator {j}"
                )));
            }
        }
        // action(g_i g_j) = action(g_i) . action(g_j)
        for a in 0..k {
            for b in 0..k {
                for j in 0..n {
                    let e = self.basis_el(j);
                    let lhs = self.apply(
                        &self
                            .ring
                            .mul_el(&self.ring.gen(a), &self.ring.gen(b)),
                        &e,
                    );
                    let rhs = self.act_gen(a, &self.act_gen(b, &e));
                    if lhs != rhs {
                        return Err(ModuleError::ActionMismatch(format!(
                            "ring relation g_{a} g_{b} not respected on generator {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero_module(ring: RingRef) -> Self {
        FinModule {
            ring,
            orders: vec![],
            action: vec![],
        }
    }

    /// The regular left module.
    pub fn regular(ring: RingRef) -> Self {
        let k = ring.num_gens();
        let mut action = vec![vec![vec![0i64; k]; k]; k];
        for l in 0..k {
            for j in 0..k {
                for i in 0..k {
                    action[l][i][j] = ring.struct_const(l, j, i);
                }
            }
        }
        FinModule {
            orders: ring.orders().to_vec(),
            ring,
            action,
        }
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.num_gens()]
    }

    pub fn basis_el(&self, j: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[j] = 1;
        v
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        reduce_vec(&mut v, &self.orders);
        v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &m)| (x + y).rem_euclid(m))
            .collect()
    }

    pub fn scalar_mul(&self, c: i64, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &m)| ((c as i128 * x as i128).rem_euclid(m as i128)) as i64)
            .collect()
    }

    /// Action of ring generator `l`.
    pub fn act_gen(&self, l: usize, v: &[i64]) -> Vec<i64> {
        let n = self.num_gens();
        let mut out = vec![0i128; n];
        for j in 0..n {
            if v[j] == 0 {
                continue;
            }
            for i in 0..n {
                out[i] += self.action[l][i][j] as i128 * v[j] as i128;
            }
        }
        out.iter()
            .zip(&self.orders)
            .map(|(&x, &m)| x.rem_euclid(m as i128) as i64)
            .collect()
    }

    /// Action of an arbitrary ring element.
    pub fn apply(&self, r: &[i64], v: &[i64]) -> Vec<i64> {
        let mut acc = self.zero();
        for (l, &c) in r.iter().enumerate() {
            if c != 0 {
                acc = self.add(&acc, &self.scalar_mul(c, &self.act_gen(l, v)));
            }
        }
        acc
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::full(&self.orders)
    }

    /// Is the subgroup stable under the ring action?
    pub fn is_submodule(&self, sub: &Subgroup) -> bool {
        sub.basis().iter().all(|b| {
            (0..self.ring.num_gens()).all(|l| sub.contains(&self.act_gen(l, b)))
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.full_subgroup()
            .elements()
            .collect::<Vec<_>>()
            .into_iter()
    }

    pub fn direct_sum(a: &FinModule, b: &FinModule) -> Result<FinModule, ModuleError> {
        if a.ring != b.ring {
            return Err(ModuleError::RingMismatch);
        }
        let k = a.ring.num_gens();
        let (na, nb) = (a.num_gens(), b.num_gens());
        let n = na + nb;
        let mut orders = a.orders.clone();
        orders.extend_from_slice(&b.orders);
        let mut action = vec![vec![vec![0i64; n]; n]; k];
        for l in 0..k {
            for i in 0..na {
                for j in 0..na {
                    action[l][i][j] = a.action[l][i][j];
                }
            }
            for i in 0..nb {
                for j in 0..nb {
                    action[l][na + i][na + j] = b.action[l][i][j];
                }
            }
        }
        Ok(FinModule {
            ring: a.ring.clone(),
            orders,
            action,
        })
    }

    pub fn direct_power(&self, k: usize) -> FinModule {
        let mut acc = FinModule::zero_module(self.ring.clone());
        for _ in 0..k {
            acc = FinModule::direct_sum(&acc, self).expect("same ring");
        }
        acc
    }

    /// A left ideal as a module, together with ambient representatives of
    /// its generators.
    pub fn from_ideal(ideal: &IdealHandle) -> (FinModule, Vec<Elem>) {
        let regular = FinModule::regular(ideal.ring.clone());
        submodule_of(&regular, &ideal.basis)
    }
}

impl std::fmt::Debug for FinModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FinModule(orders={:?}, over {:?})",
            self.orders, self.ring
        )
    }
}

/// Submodule on an action-stable subgroup; returns the module and ambient
/// representatives of its generators (columns of the inclusion map).
pub fn submodule_of(parent: &FinModule, sub: &Subgroup) -> (FinModule, Vec<Vec<i64>>) {
    assert!(
        parent.is_submodule(sub),
        "subgroup is not stable under the ring action"
    );
    let gb = sub.group_structure();
    let reps: Vec<Vec<i64>> = gb.gens().to_vec();
    let orders = gb.orders().to_vec();
    let n = reps.len();
    let k = parent.ring.num_gens();
    let mut action = vec![vec![vec![0i64; n]; n]; k];
    for l in 0..k {
        for (j, rep) in reps.iter().enumerate() {
            let img = parent.act_gen(l, rep);
            let coords = gb.express(&img).expect("stable subgroup");
            for i in 0..n {
                action[l][i][j] = coords[i];
            }
        }
    }
    (
        FinModule {
            ring: parent.ring.clone(),
            orders,
            action,
        },
        reps,
    )
}

/// Quotient by an action-stable subgroup; returns the module and the
/// coordinates of each parent generator in the quotient.
pub fn quotient_of(parent: &FinModule, sub: &Subgroup) -> (FinModule, Vec<Vec<i64>>) {
    assert!(
        parent.is_submodule(sub),
        "subgroup is not stable under the ring action"
    );
    let gb = parent.full_subgroup().quotient_structure(sub);
    let reps: Vec<Vec<i64>> = gb.gens().to_vec();
    let orders = gb.orders().to_vec();
    let n = reps.len();
    let k = parent.ring.num_gens();
    let mut action = vec![vec![vec![0i64; n]; n]; k];
    for l in 0..k {
        for (j, rep) in reps.iter().enumerate() {
            let img = parent.act_gen(l, rep);
            let coords = gb.express(&img).expect("full numerator");
            for i in 0..n {
                action[l][i][j] = coords[i];
            }
        }
    }
    let proj: Vec<Vec<i64>> = (0..parent.num_gens())
        .map(|j| gb.express(&parent.basis_el(j)).expect("full numerator"))
        .collect();
    (
        FinModule {
            ring: parent.ring.clone(),
            orders,
            action,
        },
        proj,
    )
}

/// JSON schema: `{"orders": [...], "action": [[matrix per ring generator]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModulePresentation {
    pub orders: Vec<i64>,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl ModulePresentation {
    pub fn build(self, ring: &RingRef) -> Result<FinModule, ModuleError> {
        FinModule::new(ring.clone(), self.orders, self.action)
    }

    pub fn of(module: &FinModule) -> Self {
        ModulePresentation {
            orders: module.orders.clone(),
            action: module.action.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{ideal_closure, FiniteRing, Side};

    fn zmod(m: i64) -> RingRef {
        Arc::new(FiniteRing::zmod(m))
    }

    #[test]
    fn regular_module_is_valid() {
        let r = Arc::new(FiniteRing::matrix_ring(&FiniteRing::zmod(2), 2));
        let m = FinModule::regular(r.clone());
        assert_eq!(m.order(), 16);
        // re-validate through the checker
        FinModule::new(r, m.orders().to_vec(), m.action.clone()).unwrap();
    }

    #[test]
    fn zmod2_as_zmod4_module() {
        // Z/2 with 1 acting as identity: action respects 2*g = 0 since 2*1 = 0 in Z/2
        let r = zmod(4);
        let m = FinModule::new(r, vec![2], vec![vec![vec![1]]]).unwrap();
        assert_eq!(m.apply(&[3], &[1]), vec![1]);
    }

    #[test]
    fn bad_action_rejected() {
        // over Z/4 a module Z/4 where generator 1 of the ring acts as
        // multiplication by 2 cannot be unital
        let r = zmod(4);
        let err = FinModule::new(r, vec![4], vec![vec![vec![2]]]).unwrap_err();
        assert!(matches!(err, ModuleError::ActionMismatch(_)));
    }

    #[test]
    fn ideal_submodule_of_regular() {
        let r = zmod(8);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let (m, reps) = FinModule::from_ideal(&i);
        assert_eq!(m.order(), 4);
        assert_eq!(reps.len(), 1);
        // 2 * (the generator 2) = 4: scalar action consistent
        let g = m.basis_el(0);
        let two = vec![2i64];
        assert_eq!(m.apply(&two, &g), m.scalar_mul(2, &g));
    }

    #[test]
    fn quotient_module() {
        let r = zmod(8);
        let regular = FinModule::regular(r.clone());
        let sub = Subgroup::from_gens(r.orders(), &[vec![4]]);
        let (q, proj) = quotient_of(&regular, &sub);
        assert_eq!(q.order(), 4);
        assert_eq!(proj.len(), 1);
    }

    #[test]
    fn direct_sum_orders() {
        let r = zmod(4);
        let a = FinModule::regular(r.clone());
        let b = FinModule::regular(r.clone());
        let s = FinModule::direct_sum(&a, &b).unwrap();
        assert_eq!(s.order(), 16);
        assert_eq!(s.direct_power(0).order(), 1);
    }
}
