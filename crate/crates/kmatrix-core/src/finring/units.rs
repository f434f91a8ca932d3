//! Unit group enumeration with index-based multiplication.

use super::ring::{Elem, RingRef};
use super::RingError;
use std::collections::HashMap;

/// All units of a finite ring, with fast index arithmetic.
#[derive(Debug)]
pub struct UnitGroup {
    pub ring: RingRef,
    elements: Vec<Elem>,
    index: HashMap<u128, u32>,
    inverses: Vec<u32>,
}

/// Enumerate all two-sided units; errors above the configured size cap.
pub fn unit_group(ring: &RingRef, cap: u128) -> Result<UnitGroup, RingError> {
    let size = ring.order();
    if size > cap {
        return Err(RingError::SizeCapExceeded { size, cap });
    }
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for e in ring.elements() {
        if ring.is_unit(&e) {
            index.insert(ring.encode(&e), elements.len() as u32);
            elements.push(e);
        }
    }
    let mut inverses = vec![0u32; elements.len()];
    for (i, u) in elements.iter().enumerate() {
        let v = ring.inverse(u).expect("enumerated element is a unit");
        inverses[i] = index[&ring.encode(&v)];
    }
    Ok(UnitGroup {
        ring: ring.clone(),
        elements,
        index,
        inverses,
    })
}

impl UnitGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn el(&self, i: u32) -> &Elem {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn idx_of(&self, e: &Elem) -> Option<u32> {
        self.index.get(&self.ring.encode(e)).copied()
    }

    pub fn one_idx(&self) -> u32 {
        self.idx_of(&self.ring.one()).expect("1 is a unit")
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.ring.mul_el(self.el(a), self.el(b));
        self.index[&self.ring.encode(&p)]
    }

    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// A small generating set, grown greedily.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut closed = vec![false; self.len()];
        closed[self.one_idx() as usize] = true;
        let mut closed_count = 1usize;
        for cand in 0..self.len() as u32 {
            if closed[cand as usize] {
                continue;
            }
            gens.push(cand);
            // re-close under the enlarged generating set
            let mut queue: Vec<u32> = (0..self.len() as u32)
                .filter(|&i| closed[i as usize])
                .collect();
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let y = self.mul_idx(x, g);
                    if !closed[y as usize] {
                        closed[y as usize] = true;
                        closed_count += 1;
                        queue.push(y);
                    }
                }
            }
            if closed_count == self.len() {
                break;
            }
        }
        gens
    }

    /// Subgroup closure of seed indices, as a membership bitmap.
    pub fn subgroup_closure(&self, seeds: &[u32]) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        let one = self.one_idx();
        member[one as usize] = true;
        let mut queue = vec![one];
        while let Some(x) = queue.pop() {
            for &g in seeds {
                for y in [self.mul_idx(x, g), self.mul_idx(x, self.inv_idx(g))] {
                    if !member[y as usize] {
                        member[y as usize] = true;
                        queue.push(y);
                    }
                }
            }
        }
        member
    }
}
