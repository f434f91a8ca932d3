//! Module homomorphisms as integer matrices on generators.

use super::module::{quotient_of, submodule_of, ModRef};
use super::ModuleError;
use crate::finring::subgroup::{solve_kernel, Subgroup};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: ModRef,
    pub target: ModRef,
    /// Column j = image of source generator j.
    matrix: Vec<Vec<i64>>,
}

impl ModuleMap {
    pub fn new(source: ModRef, target: ModRef, matrix: Vec<Vec<i64>>) -> Result<Self, ModuleError> {
        if source.ring != target.ring {
            return Err(ModuleError::RingMismatch);
        }
        let (n, m) = (target.num_gens(), source.num_gens());
        if matrix.len() != n || matrix.iter().any(|r| r.len() != m) {
            return Err(ModuleError::ShapeMismatch(format!(
                "matrix must be {n}x{m}"
            )));
        }
        let mut matrix = matrix;
        for (i, row) in matrix.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x = x.rem_euclid(target.orders()[i]);
            }
        }
        let map = ModuleMap {
            source,
            target,
            matrix,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let m = self.source.num_gens();
        // additive orders
        for j in 0..m {
            let img = self.apply(&self.source.basis_el(j));
            let killed = self.target.scalar_mul(self.source.orders()[j], &img);
            if killed.iter().any(|&x| x != 0) {
                return Err(ModuleError::ShapeMismatch(format!(
                    "image of generator {j} violates its additive order"
                )));
            }
        }
        // commutes with every ring generator action
        for l in 0..self.source.ring.num_gens() {
            for j in 0..m {
                let e = self.source.basis_el(j);
                let lhs = self.apply(&self.source.act_gen(l, &e));
                let rhs = self.target.act_gen(l, &self.apply(&e));
                if lhs != rhs {
                    return Err(ModuleError::ShapeMismatch(format!(
                        "map does not commute with ring generator {l} on generator {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Flattened matrix in the variable layout used by hom-group solving.
    pub fn flatten(&self) -> Vec<i64> {
        let (n, m) = (self.target.num_gens(), self.source.num_gens());
        let mut v = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                v.push(self.matrix[i][j]);
            }
        }
        v
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let (n, m) = (self.target.num_gens(), self.source.num_gens());
        let mut out = vec![0i128; n];
        for j in 0..m {
            if v[j] == 0 {
                continue;
            }
            for i in 0..n {
                out[i] += self.matrix[i][j] as i128 * v[j] as i128;
            }
        }
        out.iter()
            .zip(self.target.orders())
            .map(|(&x, &d)| x.rem_euclid(d as i128) as i64)
            .collect()
    }

    pub fn identity(module: &ModRef) -> ModuleMap {
        let n = module.num_gens();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        ModuleMap {
            source: module.clone(),
            target: module.clone(),
            matrix,
        }
    }

    pub fn zero(source: &ModRef, target: &ModRef) -> ModuleMap {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0i64; source.num_gens()]; target.num_gens()],
        }
    }

    /// self then `then`.
    pub fn compose(&self, then: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if self.target != then.source {
            return Err(ModuleError::ShapeMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        let m = self.source.num_gens();
        let n = then.target.num_gens();
        let mut matrix = vec![vec![0i64; m]; n];
        for j in 0..m {
            let img = then.apply(&self.apply(&self.source.basis_el(j)));
            for i in 0..n {
                matrix[i][j] = img[i];
            }
        }
        Ok(ModuleMap {
            source: self.source.clone(),
            target: then.target.clone(),
            matrix,
        })
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if self.source != other.source || self.target != other.target {
            return Err(ModuleError::ShapeMismatch("adding maps of different type".into()));
        }
        let mut matrix = self.matrix.clone();
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (*x + other.matrix[i][j]).rem_euclid(self.target.orders()[i]);
            }
        }
        Ok(ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        })
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let gens: Vec<Vec<i64>> = (0..self.source.num_gens())
            .map(|j| self.apply(&self.source.basis_el(j)))
            .collect();
        Subgroup::from_gens(self.target.orders(), &gens)
    }

    pub fn kernel_subgroup(&self) -> Subgroup {
        let (n, m) = (self.target.num_gens(), self.source.num_gens());
        let constraints: Vec<(Vec<i64>, i64)> = (0..n)
            .map(|i| {
                let row: Vec<i64> = (0..m).map(|j| self.matrix[i][j]).collect();
                (row, self.target.orders()[i])
            })
            .collect();
        solve_kernel(self.source.orders(), &constraints)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_subgroup().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup().is_full()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Kernel as a module with its inclusion.
    pub fn kernel_module(&self) -> (ModRef, ModuleMap) {
        let sub = self.kernel_subgroup();
        let (km, reps) = submodule_of(&self.source, &sub);
        let km = Arc::new(km);
        let n = self.source.num_gens();
        let mut matrix = vec![vec![0i64; reps.len()]; n];
        for (j, rep) in reps.iter().enumerate() {
            for i in 0..n {
                matrix[i][j] = rep[i];
            }
        }
        let incl = ModuleMap {
            source: km.clone(),
            target: self.source.clone(),
            matrix,
        };
        (km, incl)
    }

    /// Cokernel as a module with its projection.
    pub fn cokernel_module(&self) -> (ModRef, ModuleMap) {
        let sub = self.image_subgroup();
        let (qm, proj_cols) = quotient_of(&self.target, &sub);
        let qm = Arc::new(qm);
        let n = qm.num_gens();
        let m = self.target.num_gens();
        let mut matrix = vec![vec![0i64; m]; n];
        for (j, col) in proj_cols.iter().enumerate() {
            for i in 0..n {
                matrix[i][j] = col[i];
            }
        }
        let proj = ModuleMap {
            source: self.target.clone(),
            target: qm.clone(),
            matrix,
        };
        (qm, proj)
    }
}

impl std::fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ModuleMap({:?} -> {:?}, {:?})",
            self.source, self.target, self.matrix
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::FinModule;
    use crate::finring::FiniteRing;

    fn regular(m: i64) -> ModRef {
        Arc::new(FinModule::regular(Arc::new(FiniteRing::zmod(m))))
    }

    #[test]
    fn multiplication_by_two_on_z8() {
        let r = regular(8);
        let f = ModuleMap::new(r.clone(), r.clone(), vec![vec![2]]).unwrap();
        // kernel {0, 4}, image 2Z/8
        assert!(!f.is_injective());
        assert!(!f.is_surjective());
        let (coker, proj) = f.cokernel_module();
        assert_eq!(coker.order(), 2);
        assert!(proj.is_surjective());
        let (ker, incl) = f.kernel_module();
        assert_eq!(ker.order(), 2);
        assert!(incl.is_injective());
    }

    #[test]
    fn kernel_of_multiplication_by_four() {
        let r = regular(8);
        let f = ModuleMap::new(r.clone(), r.clone(), vec![vec![4]]).unwrap();
        let (ker, incl) = f.kernel_module();
        assert_eq!(ker.order(), 4);
        // composition kernel -> source -> target is zero
        let z = incl.compose(&f).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn non_equivariant_map_rejected() {
        // over M2(F2), swapping the two columns of the regular module is
        // additive but not a module map... build a wrong matrix and check
        let m2 = Arc::new(FiniteRing::matrix_ring(&FiniteRing::zmod(2), 2));
        let reg = Arc::new(FinModule::regular(m2));
        let n = reg.num_gens();
        let mut mat = vec![vec![0i64; n]; n];
        // transpose-like shuffle: e11<->e22
        mat[0][3] = 1;
        mat[3][0] = 1;
        mat[1][1] = 1;
        mat[2][2] = 1;
        assert!(ModuleMap::new(reg.clone(), reg, mat).is_err());
    }
}
