//! K0 of a finite ring: free abelian on the simple blocks of R/rad(R).
//!
//! A nilpotent ideal does not change K0, so K0(R) = K0(R/rad R), and the
//! semisimple quotient contributes one free generator per block. Classes
//! of projectives are read off from multiplicities over the blocks, and
//! induced maps are computed by tensoring block idempotents.

use super::KError;
use crate::abgroup::FgAbGroup;
use crate::finmod::module::{quotient_of, submodule_of};
use crate::finmod::FinModule;
use crate::finring::blocks::{block_data, BlockData};
use crate::finring::{Elem, RingHom, RingRef, Subgroup};

/// Block data with projective-class coordinates.
pub struct K0Data {
    pub ring: RingRef,
    pub blocks: BlockData,
}

/// K0(R) as a free abelian group of rank block_count(R/rad R).
pub fn k0(ring: &RingRef) -> Result<FgAbGroup, KError> {
    Ok(FgAbGroup::free(k0_data(ring)?.rank()))
}

pub fn k0_data(ring: &RingRef) -> Result<K0Data, KError> {
    let blocks = block_data(ring)?;
    Ok(K0Data {
        ring: ring.clone(),
        blocks,
    })
}

impl K0Data {
    pub fn rank(&self) -> usize {
        self.blocks.count()
    }

    /// Multiplicity coordinates of a finitely generated projective module
    /// over the simple blocks: P/rad Pdecomposes with multiplicity m_i of
    /// the i-th simple, and |e_i (P/rad P)| = q_i^(n_i m_i).
    pub fn class_of_module(&self, module: &FinModule) -> Result<Vec<i64>, KError> {
        if module.ring != self.ring {
            return Err(KError::Internal("module over a different ring".into()));
        }
        // P / rad*P
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for r in self.blocks.radical.basis.basis() {
            for j in 0..module.num_gens() {
                gens.push(module.apply(r, &module.basis_el(j)));
            }
        }
        let rad_p = Subgroup::from_gens(module.orders(), &gens);
        let (pbar, _) = quotient_of(module, &rad_p);
        let mut coords = Vec::with_capacity(self.blocks.count());
        for (b, e) in self.blocks.idempotents_r.iter().enumerate() {
            let e_gens: Vec<Vec<i64>> = (0..pbar.num_gens())
                .map(|j| pbar.apply(e, &pbar.basis_el(j)))
                .collect();
            let size = Subgroup::from_gens(pbar.orders(), &e_gens).order();
            let q = self.blocks.field_orders[b];
            let n = self.blocks.matrix_sizes[b] as u64;
            // size = q^(n * m)
            let mut m = 0u64;
            let mut acc: u128 = 1;
            while acc < size {
                acc = acc.checked_mul(q).ok_or_else(|| {
                    KError::Internal("block multiplicity overflow".into())
                })?;
                m += 1;
            }
            if acc != size || m % n != 0 {
                return Err(KError::Internal(format!(
                    "component of size {size} is not q^(n m) for q={q}, n={n}"
                )));
            }
            coords.push((m / n) as i64);
        }
        Ok(coords)
    }

    /// Class of the left ideal R*e for an idempotent-generated projective;
    /// more generally of any submodule of the regular module given by an
    /// action-stable subgroup.
    pub fn class_of_left_submodule(&self, sub: &Subgroup) -> Result<Vec<i64>, KError> {
        let regular = FinModule::regular(self.ring.clone());
        let (module, _) = submodule_of(&regular, sub);
        self.class_of_module(&module)
    }

    /// Class of the regular module (the free rank-one projective).
    pub fn class_of_free(&self) -> Result<Vec<i64>, KError> {
        self.class_of_module(&FinModule::regular(self.ring.clone()))
    }
}

/// The induced map K0(f): basis projectives are tensored along `f`:
/// `R' (x)_R (R e_i) = R' f(e_i)`, decomposed in the target block basis.
/// Returns the integer matrix with one column per source block.
pub fn induced_k0(f: &RingHom) -> Result<Vec<Vec<i64>>, KError> {
    let src = k0_data(&f.source)?;
    let tgt = k0_data(&f.target)?;
    let t_src = src.rank();
    let t_tgt = tgt.rank();
    let mut matrix = vec![vec![0i64; t_src]; t_tgt];
    for (i, e) in src.blocks.idempotents_r.iter().enumerate() {
        // R e_i has class n_i * [P_i]; its image spans R' f(e_i)
        let fe = f.apply(e);
        let gens: Vec<Elem> = (0..f.target.num_gens())
            .map(|l| f.target.mul_el(&f.target.gen(l), &fe))
            .collect();
        let sub = Subgroup::from_gens(f.target.orders(), &gens);
        let coords = tgt.class_of_left_submodule(&sub)?;
        let n_i = src.blocks.matrix_sizes[i] as i64;
        for (j, &c) in coords.iter().enumerate() {
            if c % n_i != 0 {
                return Err(KError::Internal(
                    "induced class not divisible by block matrix size".into(),
                ));
            }
            matrix[j][i] = c / n_i;
        }
    }
    Ok(matrix)
}
