//! Hom groups of finite modules by exact congruence solving.

use super::map::ModuleMap;
use super::module::ModRef;
use super::ModuleError;
use crate::abgroup::FgAbGroup;
use crate::finring::subgroup::{solve_kernel, GroupBasis, Subgroup};

/// The abelian group Hom_R(M, N) with an explicit basis of module maps.
pub struct HomGroup {
    pub source: ModRef,
    pub target: ModRef,
    pub group: FgAbGroup,
    basis: GroupBasis,
    basis_maps: Vec<ModuleMap>,
}

impl HomGroup {
    pub fn basis_maps(&self) -> &[ModuleMap] {
        &self.basis_maps
    }

    /// Cyclic orders of the basis maps.
    pub fn orders(&self) -> &[i64] {
        self.basis.orders()
    }

    /// Coordinates of a module map over the basis.
    pub fn express(&self, map: &ModuleMap) -> Option<Vec<i64>> {
        if map.source != self.source || map.target != self.target {
            return None;
        }
        self.basis.express(&map.flatten())
    }

    /// The map with the given coordinates.
    pub fn lift(&self, coords: &[i64]) -> ModuleMap {
        let flat = self.basis.lift(coords);
        self.map_from_flat(&flat)
    }

    fn map_from_flat(&self, flat: &[i64]) -> ModuleMap {
        let (n, m) = (self.target.num_gens(), self.source.num_gens());
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..m).map(|j| flat[i * m + j]).collect())
            .collect();
        ModuleMap::new(self.source.clone(), self.target.clone(), matrix)
            .expect("solver output is a module map")
    }

    /// Subgroup of the coordinate space spanned by the given maps.
    pub fn span_of(&self, maps: &[ModuleMap]) -> Subgroup {
        let gens: Vec<Vec<i64>> = maps
            .iter()
            .map(|f| self.express(f).expect("map of matching type"))
            .collect();
        Subgroup::from_gens(self.orders(), &gens)
    }
}

/// All additive maps commuting with the ring action, by exact linear
/// solving with congruence constraints.
pub fn hom_group(source: &ModRef, target: &ModRef) -> Result<HomGroup, ModuleError> {
    if source.ring != target.ring {
        return Err(ModuleError::RingMismatch);
    }
    let (n, m) = (target.num_gens(), source.num_gens());
    let nvars = n * m;
    let var = |i: usize, j: usize| i * m + j;
    let mut var_orders = vec![0i64; nvars];
    for i in 0..n {
        for j in 0..m {
            var_orders[var(i, j)] = target.orders()[i];
        }
    }
    let mut constraints: Vec<(Vec<i64>, i64)> = Vec::new();
    // additive order of each source generator
    for i in 0..n {
        for j in 0..m {
            let mut row = vec![0i64; nvars];
            row[var(i, j)] = source.orders()[j];
            constraints.push((row, target.orders()[i]));
        }
    }
    // equivariance: for each ring generator l, target coordinate i, source
    // generator j:  sum_t A^N_l[i][t] x_{t,j} - sum_s x_{i,s} A^M_l[s][j] = 0
    for l in 0..source.ring.num_gens() {
        // target action columns
        let tgt_cols: Vec<Vec<i64>> = (0..n)
            .map(|t| target.act_gen(l, &target.basis_el(t)))
            .collect();
        let src_cols: Vec<Vec<i64>> = (0..m)
            .map(|j| source.act_gen(l, &source.basis_el(j)))
            .collect();
        for i in 0..n {
            for j in 0..m {
                let mut row = vec![0i64; nvars];
                for t in 0..n {
                    row[var(t, j)] += tgt_cols[t][i];
                }
                for s in 0..m {
                    row[var(i, s)] -= src_cols[j][s];
                }
                constraints.push((row, target.orders()[i]));
            }
        }
    }
    let solutions = solve_kernel(&var_orders, &constraints);
    let basis = solutions.group_structure();
    let hg = HomGroup {
        source: source.clone(),
        target: target.clone(),
        group: basis.group(),
        basis_maps: Vec::new(),
        basis,
    };
    let basis_maps: Vec<ModuleMap> = hg
        .basis
        .gens()
        .iter()
        .map(|flat| hg.map_from_flat(flat))
        .collect();
    Ok(HomGroup { basis_maps, ..hg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::module::FinModule;
    use crate::finring::{ideal_closure, FiniteRing, Side};
    use std::sync::Arc;

    fn zmod_ring(m: i64) -> crate::finring::RingRef {
        Arc::new(FiniteRing::zmod(m))
    }

    /// Brute-force Hom for tiny modules: try every candidate matrix.
    fn brute_hom_count(source: &ModRef, target: &ModRef) -> usize {
        let (n, m) = (target.num_gens(), source.num_gens());
        let mut total = 0usize;
        let mut counters = vec![0i64; n * m];
        loop {
            let matrix: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..m).map(|j| counters[i * m + j]).collect())
                .collect();
            if ModuleMap::new(source.clone(), target.clone(), matrix).is_ok() {
                total += 1;
            }
            // advance
            let mut pos = 0;
            loop {
                if pos == n * m {
                    return total;
                }
                counters[pos] += 1;
                if counters[pos] < target.orders()[pos / m] {
                    break;
                }
                counters[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn hom_regular_to_module_is_module() {
        // Hom(R, M) = M via evaluation at 1
        let r = zmod_ring(4);
        let reg = Arc::new(FinModule::regular(r.clone()));
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let (m, _) = FinModule::from_ideal(&i);
        let m = Arc::new(m);
        let h = hom_group(&reg, &m).unwrap();
        assert_eq!(h.group, FgAbGroup::cyclic(2));
        // elementwise: evaluation at 1 is a bijection basis-wise
        for f in h.basis_maps() {
            let at_one = f.apply(&r.one());
            assert!(!at_one.iter().all(|&x| x == 0) || h.group.is_trivial());
        }
    }

    #[test]
    fn hom_z2_to_z4_over_z4() {
        let r = zmod_ring(4);
        let z2 = Arc::new(FinModule::new(r.clone(), vec![2], vec![vec![vec![1]]]).unwrap());
        let reg = Arc::new(FinModule::regular(r.clone()));
        let h = hom_group(&z2, &reg).unwrap();
        assert_eq!(h.group, FgAbGroup::cyclic(2));
        assert_eq!(brute_hom_count(&z2, &reg), 2);
    }

    #[test]
    fn hom_group_matches_brute_force_on_samples() {
        let r = zmod_ring(4);
        let reg = Arc::new(FinModule::regular(r.clone()));
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let (im, _) = FinModule::from_ideal(&i);
        let im = Arc::new(im);
        for (a, b) in [(&reg, &reg), (&reg, &im), (&im, &reg), (&im, &im)] {
            let h = hom_group(a, b).unwrap();
            let size = h.group.order().unwrap() as usize;
            assert_eq!(size, brute_hom_count(a, b), "Hom({a:?},{b:?})");
        }
    }

    #[test]
    fn express_roundtrip() {
        let r = zmod_ring(8);
        let reg = Arc::new(FinModule::regular(r.clone()));
        let h = hom_group(&reg, &reg).unwrap();
        assert_eq!(h.group, FgAbGroup::cyclic(8));
        let two = ModuleMap::new(reg.clone(), reg.clone(), vec![vec![2]]).unwrap();
        let coords = h.express(&two).unwrap();
        let back = h.lift(&coords);
        assert_eq!(back.matrix(), two.matrix());
    }
}
