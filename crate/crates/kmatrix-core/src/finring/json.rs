//! JSON presentations for rings and ideals.
//!
//! Rings load from `{"orders": [...], "mul": [[[coords]]], "one": [coords]}`
//! and are fully validated on entry. Named ideals load from
//! `{"gens": [[coords]], "side": "two" | "left" | "right"}`.

use super::ideal::{ideal_closure, IdealHandle, Side};
use super::ring::{FiniteRing, RingRef};
use super::RingError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingPresentation {
    pub orders: Vec<i64>,
    pub mul: Vec<Vec<Vec<i64>>>,
    pub one: Vec<i64>,
}

impl RingPresentation {
    pub fn build(self) -> Result<FiniteRing, RingError> {
        FiniteRing::make_ring(self.orders, self.mul, self.one)
    }

    pub fn of(ring: &FiniteRing) -> Self {
        let k = ring.num_gens();
        RingPresentation {
            orders: ring.orders().to_vec(),
            mul: (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            (0..k)
                                .map(|l| ring.struct_const(i, j, l))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            one: ring.one(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealPresentation {
    pub gens: Vec<Vec<i64>>,
    #[serde(default = "default_side")]
    pub side: Side,
}

fn default_side() -> Side {
    Side::TwoSided
}

impl IdealPresentation {
    pub fn build(&self, ring: &RingRef) -> Result<IdealHandle, RingError> {
        for g in &self.gens {
            if g.len() != ring.num_gens() {
                return Err(RingError::Shape(format!(
                    "ideal generator has {} coordinates, ring has {} generators",
                    g.len(),
                    ring.num_gens()
                )));
            }
        }
        Ok(ideal_closure(ring, &self.gens, self.side))
    }
}
