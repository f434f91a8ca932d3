//! Endomorphism rings of finite direct sums of modules.
//!
//! Elements are matrices `(F_ij : M_i -> M_j)`; the product is
//! "apply F, then G", which makes right-multiplication maps compose the
//! way colon-ideal entries do.

use super::hom::{hom_group, HomGroup};
use super::map::ModuleMap;
use super::module::ModRef;
use super::ModuleError;
use crate::finring::{Elem, FiniteRing, RingRef};
use std::sync::Arc;

pub struct EndRing {
    pub modules: Vec<ModRef>,
    pub ring: RingRef,
    homs: Vec<Vec<HomGroup>>,
    /// Generator layout: (source index, target index, basis index).
    gen_index: Vec<(usize, usize, usize)>,
}

impl EndRing {
    /// Ring element supported on component (i, j).
    pub fn embed(&self, i: usize, j: usize, map: &ModuleMap) -> Option<Elem> {
        let coords = self.homs[i][j].express(map)?;
        let mut v = vec![0i64; self.gen_index.len()];
        for (pos, &(a, b, t)) in self.gen_index.iter().enumerate() {
            if a == i && b == j {
                v[pos] = coords[t];
            }
        }
        Some(v)
    }

    /// The (i, j) component of a ring element, as a module map.
    pub fn component(&self, el: &Elem, i: usize, j: usize) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.modules[i], &self.modules[j]);
        for (pos, &(a, b, t)) in self.gen_index.iter().enumerate() {
            if a == i && b == j && el[pos] != 0 {
                let basis_map = &self.homs[i][j].basis_maps()[t];
                let scaled = scale_map(basis_map, el[pos]);
                acc = acc.add(&scaled).expect("same type");
            }
        }
        acc
    }

    pub fn hom(&self, i: usize, j: usize) -> &HomGroup {
        &self.homs[i][j]
    }
}

fn scale_map(map: &ModuleMap, c: i64) -> ModuleMap {
    let matrix: Vec<Vec<i64>> = map
        .matrix()
        .iter()
        .zip(map.target.orders())
        .map(|(row, &d)| {
            row.iter()
                .map(|&x| ((c as i128 * x as i128).rem_euclid(d as i128)) as i64)
                .collect()
        })
        .collect();
    ModuleMap::new(map.source.clone(), map.target.clone(), matrix).expect("scaling preserves homs")
}

/// Build `End(M_1 + ... + M_n)` as a finite ring with component addressing.
pub fn endomorphism_ring(modules: &[ModRef]) -> Result<(RingRef, EndRing), ModuleError> {
    let n = modules.len();
    assert!(n > 0, "endomorphism ring of an empty list");
    for m in modules {
        if m.ring != modules[0].ring {
            return Err(ModuleError::RingMismatch);
        }
    }
    let mut homs: Vec<Vec<HomGroup>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(hom_group(&modules[i], &modules[j])?);
        }
        homs.push(row);
    }
    let mut gen_index = Vec::new();
    let mut orders = Vec::new();
    for (i, row) in homs.iter().enumerate() {
        for (j, h) in row.iter().enumerate() {
            for (t, &d) in h.orders().iter().enumerate() {
                gen_index.push((i, j, t));
                orders.push(d);
            }
        }
    }
    let ngens = gen_index.len();
    let mut mul = vec![vec![vec![0i64; ngens]; ngens]; ngens];
    for (a, &(i, j, s)) in gen_index.iter().enumerate() {
        for (b, &(k, l, t)) in gen_index.iter().enumerate() {
            if j != k {
                continue;
            }
            let composite = homs[i][j].basis_maps()[s]
                .compose(&homs[k][l].basis_maps()[t])
                .expect("endpoints match");
            let coords = homs[i][l]
                .express(&composite)
                .expect("composite is a hom");
            for (pos, &(x, y, u)) in gen_index.iter().enumerate() {
                if x == i && y == l {
                    mul[a][b][pos] = coords[u];
                }
            }
        }
    }
    let mut one = vec![0i64; ngens];
    for (i, m) in modules.iter().enumerate() {
        let id_coords = homs[i][i]
            .express(&ModuleMap::identity(m))
            .expect("identity is a hom");
        for (pos, &(x, y, u)) in gen_index.iter().enumerate() {
            if x == i && y == i {
                one[pos] = id_coords[u];
            }
        }
    }
    let ring = Arc::new(
        FiniteRing::make_ring(orders, mul, one)
            .expect("endomorphism composition is associative and unital"),
    );
    Ok((
        ring.clone(),
        EndRing {
            modules: modules.to_vec(),
            ring,
            homs,
            gen_index,
        },
    ))
}
