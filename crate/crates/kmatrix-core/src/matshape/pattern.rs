//! The pattern language: an (i, j) -> subgroup assignment with a declared
//! shape kind whose named hypotheses can be checked exactly.

use super::component::{Addressing, ComponentMatrix, QuotComponent};
use super::{MatError, Violation};
use crate::finring::{IdealHandle, RingRef, Subgroup};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    /// Lower entries a fixed ideal I, uppers I_ij (localized theorem shape).
    SThm1,
    /// First column I, diagonal subrings R_i, upper columns I_i.
    TThm1,
    /// Lower entries R, uppers I_ij (integral theorem shape).
    SThm2,
    /// First column R, diagonal subrings R_i, upper columns I_i.
    TThm2,
    /// Alias of SThm2 as the source of the companion construction.
    BLemma32,
    /// Alias of TThm2 for the variant companion construction.
    BLemma34,
    /// Uppers are powers I^{t_ij}.
    Exp,
    /// Uppers are powers I^{t_j}, constant down each column.
    ExpChain,
    /// Column-constant chain shape with R in the first column.
    ChainS,
    /// Column-constant chain shape with R below the diagonal.
    ChainT,
    /// Uppers one ideal, lowers another.
    TwoIdeals,
    /// Poset-indexed shape: R at related positions, I elsewhere.
    Poset,
    /// Row-constant shape with a full last row.
    SPrime,
    /// [[A, rad(B)], [A, B]] for a subring B of the ambient ring.
    RadFull,
    /// Full matrix ring.
    Full,
}

impl ShapeKind {
    pub fn parse(s: &str) -> Option<ShapeKind> {
        Some(match s {
            "S-thm1" => ShapeKind::SThm1,
            "T-thm1" => ShapeKind::TThm1,
            "S-thm2" => ShapeKind::SThm2,
            "T-thm2" => ShapeKind::TThm2,
            "B-lemma32" => ShapeKind::BLemma32,
            "B-lemma34" => ShapeKind::BLemma34,
            "exp" => ShapeKind::Exp,
            "expchain" => ShapeKind::ExpChain,
            "chainS" => ShapeKind::ChainS,
            "chainT" => ShapeKind::ChainT,
            "two-ideals" => ShapeKind::TwoIdeals,
            "poset" => ShapeKind::Poset,
            "sprime" => ShapeKind::SPrime,
            "radfull" => ShapeKind::RadFull,
            "full" => ShapeKind::Full,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ShapeKind::SThm1 => "S-thm1",
            ShapeKind::TThm1 => "T-thm1",
            ShapeKind::SThm2 => "S-thm2",
            ShapeKind::TThm2 => "T-thm2",
            ShapeKind::BLemma32 => "B-lemma32",
            ShapeKind::BLemma34 => "B-lemma34",
            ShapeKind::Exp => "exp",
            ShapeKind::ExpChain => "expchain",
            ShapeKind::ChainS => "chainS",
            ShapeKind::ChainT => "chainT",
            ShapeKind::TwoIdeals => "two-ideals",
            ShapeKind::Poset => "poset",
            ShapeKind::SPrime => "sprime",
            ShapeKind::RadFull => "radfull",
            ShapeKind::Full => "full",
        }
    }
}

/// Kind-specific data. All indices are 0-based here; reports use 1-based
/// names matching the usual matrix conventions.
#[derive(Clone)]
pub enum PatternSpec {
    SLike {
        /// Entries strictly below the diagonal (the whole ring for the
        /// integral shape).
        lower: Subgroup,
        /// Upper entries keyed by (i, j), i < j.
        uppers: BTreeMap<(usize, usize), IdealHandle>,
    },
    TLike {
        /// First-column entries below the diagonal.
        first_col: Subgroup,
        /// Diagonal subrings at positions 1..n.
        subrings: Vec<Subgroup>,
        /// Column ideals I_j for columns 1..n.
        cols: Vec<IdealHandle>,
        /// Lower entries keyed by (i, j), 1 <= j < i.
        lowers: BTreeMap<(usize, usize), IdealHandle>,
        /// Whether the first column is the ideal `I` with `I_ij ⊆ I` required.
        bounded_by_first: bool,
    },
    Exp {
        ideal: IdealHandle,
        exps: BTreeMap<(usize, usize), u32>,
    },
    ExpChain {
        ideal: IdealHandle,
        ts: Vec<u32>,
    },
    Chain {
        /// I_j for columns 1..n, with R in the first column; `below_full`
        /// selects the variant with R everywhere below the diagonal.
        ideals: Vec<IdealHandle>,
        below_full: bool,
    },
    TwoIdeals {
        upper: IdealHandle,
        lower: IdealHandle,
    },
    Poset {
        ideal: IdealHandle,
        /// leq[i][j] means a_i <= a_j in the poset.
        leq: Vec<Vec<bool>>,
    },
    SPrime {
        /// Row ideals I_1..I_{n-1}.
        ideals: Vec<IdealHandle>,
    },
    RadFull {
        sub: Subgroup,
        sub_rad: Subgroup,
    },
    Full,
}

#[derive(Clone)]
pub struct MatrixPattern {
    pub ring: RingRef,
    pub n: usize,
    pub kind: ShapeKind,
    pub spec: PatternSpec,
}

impl std::fmt::Debug for MatrixPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixPattern({}, n={}, over {:?})", self.kind.as_str(), self.n, self.ring)
    }
}

/// Outcome of a hypothesis check.
pub struct ConditionReport {
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_parent(ring: &RingRef, ideals: &[&IdealHandle]) -> Result<(), MatError> {
    for i in ideals {
        if i.ring != *ring {
            return Err(MatError::Ring(crate::finring::RingError::ParentMismatch));
        }
    }
    Ok(())
}

impl MatrixPattern {
    pub fn s_shape(
        ring: RingRef,
        n: usize,
        lower: Option<IdealHandle>,
        uppers: BTreeMap<(usize, usize), IdealHandle>,
    ) -> Result<Self, MatError> {
        let refs: Vec<&IdealHandle> = uppers.values().chain(lower.iter()).collect();
        check_parent(&ring, &refs)?;
        for i in 0..n {
            for j in i + 1..n {
                if !uppers.contains_key(&(i, j)) {
                    return Err(MatError::WrongKind(format!(
                        "missing upper entry ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let kind = if lower.is_some() {
            ShapeKind::SThm1
        } else {
            ShapeKind::SThm2
        };
        let lower_sub = match &lower {
            Some(i) => i.basis.clone(),
            None => ring.full_subgroup(),
        };
        Ok(MatrixPattern {
            ring,
            n,
            kind,
            spec: PatternSpec::SLike {
                lower: lower_sub,
                uppers,
            },
        })
    }

    /// The same data as an S-thm2 shape, tagged as the companion source.
    pub fn b_lemma32(
        ring: RingRef,
        n: usize,
        uppers: BTreeMap<(usize, usize), IdealHandle>,
    ) -> Result<Self, MatError> {
        let mut p = MatrixPattern::s_shape(ring, n, None, uppers)?;
        p.kind = ShapeKind::BLemma32;
        Ok(p)
    }

    pub fn t_shape(
        ring: RingRef,
        n: usize,
        lower: Option<IdealHandle>,
        subrings: Vec<Option<Subgroup>>,
        cols: Vec<IdealHandle>,
        lowers: BTreeMap<(usize, usize), IdealHandle>,
        lemma34: bool,
    ) -> Result<Self, MatError> {
        if cols.len() != n - 1 || subrings.len() != n - 1 {
            return Err(MatError::WrongKind(
                "need n-1 column ideals and n-1 diagonal subrings".into(),
            ));
        }
        let refs: Vec<&IdealHandle> = cols.iter().chain(lowers.values()).chain(lower.iter()).collect();
        check_parent(&ring, &refs)?;
        for i in 2..n {
            for j in 1..i {
                if !lowers.contains_key(&(i, j)) {
                    return Err(MatError::WrongKind(format!(
                        "missing lower entry ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let bounded_by_first = lower.is_some();
        let kind = if lemma34 {
            ShapeKind::BLemma34
        } else if bounded_by_first {
            ShapeKind::TThm1
        } else {
            ShapeKind::TThm2
        };
        let first_col = match &lower {
            Some(i) => i.basis.clone(),
            None => ring.full_subgroup(),
        };
        let subrings: Vec<Subgroup> = subrings
            .into_iter()
            .map(|s| s.unwrap_or_else(|| ring.full_subgroup()))
            .collect();
        Ok(MatrixPattern {
            ring,
            n,
            kind,
            spec: PatternSpec::TLike {
                first_col,
                subrings,
                cols,
                lowers,
                bounded_by_first,
            },
        })
    }

    pub fn exp_pattern(
        ring: RingRef,
        n: usize,
        ideal: IdealHandle,
        exps: BTreeMap<(usize, usize), u32>,
    ) -> Result<Self, MatError> {
        check_parent(&ring, &[&ideal])?;
        for i in 0..n {
            for j in i + 1..n {
                if exps.get(&(i, j)).copied().unwrap_or(0) == 0 {
                    return Err(MatError::WrongKind(format!(
                        "exponent t_{{{} {}}} must be a positive integer",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(MatrixPattern {
            ring,
            n,
            kind: ShapeKind::Exp,
            spec: PatternSpec::Exp { ideal, exps },
        })
    }

    pub fn exp_chain(
        ring: RingRef,
        n: usize,
        ideal: IdealHandle,
        ts: Vec<u32>,
    ) -> Result<Self, MatError> {
        check_parent(&ring, &[&ideal])?;
        if ts.len() != n - 1 || ts.iter().any(|&t| t == 0) {
            return Err(MatError::WrongKind(
                "need n-1 positive exponents t_2..t_n".into(),
            ));
        }
        Ok(MatrixPattern {
            ring,
            n,
            kind: ShapeKind::ExpChain,
            spec: PatternSpec::ExpChain { ideal, ts },
        })
    }

    pub fn chain(
        ring: RingRef,
        n: usize,
        ideals: Vec<IdealHandle>,
        below_full: bool,
    ) -> Result<Self, MatError> {
        if ideals.len() != n - 1 {
            return Err(MatError::WrongKind("need n-1 chain ideals I_2..I_n".into()));
        }
        check_parent(&ring, &ideals.iter().collect::<Vec<_>>())?;
        Ok(MatrixPattern {
            ring,
            n,
            kind: if below_full {
                ShapeKind::ChainT
            } else {
                ShapeKind::ChainS
            },
            spec: PatternSpec::Chain { ideals, below_full },
        })
    }

    pub fn two_ideals(
        ring: RingRef,
        n: usize,
        upper: IdealHandle,
        lower: IdealHandle,
    ) -> Result<Self, MatError> {
        check_parent(&ring, &[&upper, &lower])?;
        Ok(MatrixPattern {
            ring,
            n,
            kind: ShapeKind::TwoIdeals,
            spec: PatternSpec::TwoIdeals { upper, lower },
        })
    }

    pub fn sprime(ring: RingRef, n: usize, ideals: Vec<IdealHandle>) -> Result<Self, MatError> {
        if ideals.len() != n - 1 {
            return Err(MatError::WrongKind("need n-1 row ideals I_1..I_{n-1}".into()));
        }
        check_parent(&ring, &ideals.iter().collect::<Vec<_>>())?;
        Ok(MatrixPattern {
            ring,
            n,
            kind: ShapeKind::SPrime,
            spec: PatternSpec::SPrime { ideals },
        })
    }

    pub fn full(ring: RingRef, n: usize) -> Self {
        MatrixPattern {
            ring,
            n,
            kind: ShapeKind::Full,
            spec: PatternSpec::Full,
        }
    }

    pub(crate) fn from_spec(
        ring: RingRef,
        n: usize,
        kind: ShapeKind,
        spec: PatternSpec,
    ) -> Self {
        MatrixPattern { ring, n, kind, spec }
    }

    /// The ambient subgroup at position (i, j).
    pub fn entry(&self, i: usize, j: usize) -> Subgroup {
        let full = || self.ring.full_subgroup();
        match &self.spec {
            PatternSpec::SLike { lower, uppers } => {
                if i == j {
                    full()
                } else if i < j {
                    uppers[&(i, j)].basis.clone()
                } else {
                    lower.clone()
                }
            }
            PatternSpec::TLike {
                first_col,
                subrings,
                cols,
                lowers,
                ..
            } => {
                if i == j {
                    if i == 0 {
                        full()
                    } else {
                        subrings[i - 1].clone()
                    }
                } else if i < j {
                    cols[j - 1].basis.clone()
                } else if j == 0 {
                    first_col.clone()
                } else {
                    lowers[&(i, j)].basis.clone()
                }
            }
            PatternSpec::Exp { ideal, exps } => {
                if i < j {
                    ideal.power(exps[&(i, j)]).expect("same ring").basis
                } else {
                    full()
                }
            }
            PatternSpec::ExpChain { ideal, ts } => {
                if i < j {
                    ideal.power(ts[j - 1]).expect("same ring").basis
                } else {
                    full()
                }
            }
            PatternSpec::Chain { ideals, below_full } => {
                if i == j || j == 0 || (*below_full && i > j) {
                    full()
                } else {
                    ideals[j - 1].basis.clone()
                }
            }
            PatternSpec::TwoIdeals { upper, lower } => {
                if i == j {
                    full()
                } else if i < j {
                    upper.basis.clone()
                } else {
                    lower.basis.clone()
                }
            }
            PatternSpec::Poset { ideal, leq } => {
                if leq[j][i] {
                    full()
                } else {
                    ideal.basis.clone()
                }
            }
            PatternSpec::SPrime { ideals } => {
                if i == self.n - 1 || i == j {
                    full()
                } else {
                    ideals[i].basis.clone()
                }
            }
            PatternSpec::RadFull { sub, sub_rad } => match (i, j) {
                (0, 0) | (1, 0) => full(),
                (0, 1) => sub_rad.clone(),
                (1, 1) => sub.clone(),
                _ => unreachable!("radfull patterns have n = 2"),
            },
            PatternSpec::Full => full(),
        }
    }

    fn component_matrix(&self) -> ComponentMatrix {
        let comps: Vec<Vec<QuotComponent>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| QuotComponent::plain(self.entry(i, j), &self.ring))
                    .collect()
            })
            .collect();
        ComponentMatrix {
            ring: self.ring.clone(),
            n: self.n,
            comps,
        }
    }

    /// Exact verification of the named hypotheses of the declared shape,
    /// plus full multiplicative closure of the entry layout.
    pub fn check_conditions(&self) -> ConditionReport {
        let mut violations = self.named_violations();
        violations.extend(self.component_matrix().violations());
        ConditionReport { violations }
    }

    /// Builders re-verify conditions; a pattern that checks out assembles
    /// into a finite ring with component addressing.
    pub fn build_subring(&self) -> Result<(RingRef, Addressing), MatError> {
        let named = self.named_violations();
        if !named.is_empty() {
            return Err(MatError::ConditionsNotVerified(named));
        }
        self.component_matrix().build()
    }

    fn named_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let r = &self.ring;
        match &self.spec {
            PatternSpec::SLike { lower, uppers } => {
                let n = self.n;
                for (&(i, j), id) in uppers {
                    if self.kind == ShapeKind::SThm1 {
                        if let Some(w) = containment_violation(&id.basis, lower) {
                            out.push(Violation {
                                condition: format!("I_{{{} {}}} ⊆ I", i + 1, j + 1),
                                witness: Some(w),
                            });
                        }
                    }
                    // column containments: entries above shrink
                    for k in 0..i {
                        if let Some(w) = containment_violation(&uppers[&(k, j)].basis, &id.basis) {
                            out.push(Violation {
                                condition: format!("I_{{{} {}}} ⊆ I_{{{} {}}} for k ≤ i", k + 1, j + 1, i + 1, j + 1),
                                witness: Some(w),
                            });
                        }
                    }
                }
                // row containments: entries shrink to the right
                for k in 0..n {
                    for i in k + 1..n {
                        for j in k + 1..i {
                            // j <= i: I_{k i} ⊆ I_{k j}
                            if let Some(w) = containment_violation(&uppers[&(k, i)].basis, &uppers[&(k, j)].basis) {
                                out.push(Violation {
                                    condition: format!(
                                    "I_{{{} {}}} ⊆ I_{{{} {}}} for j ≤ i",
                                    k + 1,
                                    i + 1,
                                    k + 1,
                                    j + 1
                                ),
                                    witness: Some(w),
                                });
                            }
                        }
                    }
                }
                // products
                for i in 0..n {
                    for k in i + 1..n {
                        for j in k + 1..n {
                            if let Some(w) = product_violation(
                                r,
                                &uppers[&(i, k)].basis,
                                &uppers[&(k, j)].basis,
                                &uppers[&(i, j)].basis,
                            ) {
                                out.push(Violation {
                                    condition: format!(
                                        "I_{{{} {}}} I_{{{} {}}} ⊆ I_{{{} {}}} for i<k<j",
                                        i + 1,
                                        k + 1,
                                        k + 1,
                                        j + 1,
                                        i + 1,
                                        j + 1
                                    ),
                                    witness: Some(w),
                                });
                            }
                        }
                    }
                }
            }
            PatternSpec::TLike {
                first_col,
                subrings,
                cols,
                lowers,
                bounded_by_first,
            } => {
                for (c, sr) in subrings.iter().enumerate() {
                    if !sr.contains(&r.one()) {
                        out.push(Violation {
                            condition: format!("R_{} contains the identity", c + 2),
                            witness: Some(r.one()),
                        });
                    }
                    if let Some(w) = product_violation(r, sr, sr, sr) {
                        out.push(Violation {
                            condition: format!("R_{} is closed under multiplication", c + 2),
                            witness: Some(w),
                        });
                    }
                }
                for c in 0..cols.len() {
                    if c + 1 < cols.len() {
                        if let Some(w) = containment_violation(&cols[c + 1].basis, &cols[c].basis) {
                            out.push(Violation {
                                condition: format!("I_{} ⊆ I_{}", c + 3, c + 2),
                                witness: Some(w),
                            });
                        }
                    }
                    if let Some(w) = containment_violation(&cols[c].basis, &subrings[c]) {
                        out.push(Violation {
                            condition: format!("I_{} ⊆ R_{}", c + 2, c + 2),
                            witness: Some(w),
                        });
                    }
                    if let Some(w) = product_violation(r, &cols[c].basis, &subrings[c], &cols[c].basis)
                    {
                        out.push(Violation {
                            condition: format!("I_{} is a right ideal of R_{}", c + 2, c + 2),
                            witness: Some(w),
                        });
                    }
                    if let Some(w) =
                        product_violation(r, &r.full_subgroup(), &cols[c].basis, &cols[c].basis)
                    {
                        out.push(Violation {
                            condition: format!("I_{} is a left ideal of R", c + 2),
                            witness: Some(w),
                        });
                    }
                    if *bounded_by_first {
                        if let Some(w) = containment_violation(&cols[c].basis, first_col) {
                            out.push(Violation {
                                condition: format!("I_{} ⊆ I", c + 2),
                                witness: Some(w),
                            });
                        }
                        if let Some(w) =
                            product_violation(r, &cols[c].basis, &r.full_subgroup(), &cols[c].basis)
                        {
                            out.push(Violation {
                                condition: format!("I_{} is an ideal of R", c + 2),
                                witness: Some(w),
                            });
                        }
                    }
                }
                for (&(i, j), id) in lowers {
                    if let Some(w) = containment_violation(&cols[j - 1].basis, &id.basis) {
                        out.push(Violation {
                            condition: format!("I_{} ⊆ I_{{{} {}}}", j + 1, i + 1, j + 1),
                            witness: Some(w),
                        });
                    }
                    if *bounded_by_first {
                        if let Some(w) = containment_violation(&id.basis, first_col) {
                            out.push(Violation {
                                condition: format!("I_{{{} {}}} ⊆ I", i + 1, j + 1),
                                witness: Some(w),
                            });
                        }
                    }
                }
                // products over the lower triangle: j < k < i
                for (&(i, k), a) in lowers {
                    for (&(k2, j), b) in lowers {
                        if k2 != k {
                            continue;
                        }
                        let target = &lowers[&(i, j)];
                        if let Some(w) = product_violation(r, &a.basis, &b.basis, &target.basis) {
                            out.push(Violation {
                                condition: format!(
                                    "I_{{{} {}}} I_{{{} {}}} ⊆ I_{{{} {}}} for j<k<i",
                                    i + 1,
                                    k + 1,
                                    k + 1,
                                    j + 1,
                                    i + 1,
                                    j + 1
                                ),
                                witness: Some(w),
                            });
                        }
                    }
                }
            }
            PatternSpec::Exp { exps, .. } => {
                let n = self.n;
                for i in 0..n {
                    for j in i + 1..n {
                        let t = exps[&(i, j)];
                        if j + 1 < n && t > exps[&(i, j + 1)] {
                            out.push(Violation {
                                condition: format!(
                                    "t_{{{} {}}} ≤ t_{{{} {}}}",
                                    i + 1,
                                    j + 1,
                                    i + 1,
                                    j + 2
                                ),
                                witness: None,
                            });
                        }
                        if i + 1 < j && exps[&(i + 1, j)] > t {
                            out.push(Violation {
                                condition: format!(
                                    "t_{{{} {}}} ≤ t_{{{} {}}}",
                                    i + 2,
                                    j + 1,
                                    i + 1,
                                    j + 1
                                ),
                                witness: None,
                            });
                        }
                        for k in i + 1..j {
                            if t > exps[&(i, k)] + exps[&(k, j)] {
                                out.push(Violation {
                                    condition: format!(
                                        "t_{{{} {}}} ≤ t_{{{} {}}} + t_{{{} {}}} for i<k<j",
                                        i + 1,
                                        j + 1,
                                        i + 1,
                                        k + 1,
                                        k + 1,
                                        j + 1
                                    ),
                                    witness: None,
                                });
                            }
                        }
                    }
                }
            }
            PatternSpec::ExpChain { ts, .. } => {
                for c in 0..ts.len().saturating_sub(1) {
                    if ts[c] > ts[c + 1] {
                        out.push(Violation {
                            condition: format!("t_{} ≤ t_{}", c + 2, c + 3),
                            witness: None,
                        });
                    }
                }
            }
            PatternSpec::Chain { ideals, .. } => {
                for c in 0..ideals.len().saturating_sub(1) {
                    if let Some(w) = containment_violation(&ideals[c + 1].basis, &ideals[c].basis) {
                        out.push(Violation {
                            condition: format!("I_{} ⊆ I_{}", c + 3, c + 2),
                            witness: Some(w),
                        });
                    }
                }
            }
            PatternSpec::TwoIdeals { .. }
            | PatternSpec::Poset { .. }
            | PatternSpec::SPrime { .. }
            | PatternSpec::RadFull { .. }
            | PatternSpec::Full => {}
        }
        out
    }
}

fn containment_violation(a: &Subgroup, b: &Subgroup) -> Option<Vec<i64>> {
    a.basis().iter().find(|v| !b.contains(v)).cloned()
}

fn product_violation(
    ring: &RingRef,
    a: &Subgroup,
    b: &Subgroup,
    target: &Subgroup,
) -> Option<Vec<i64>> {
    for x in a.basis() {
        for y in b.basis() {
            let p = ring.mul_el(x, y);
            if !target.contains(&p) {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{ideal_closure, FiniteRing, Side};
    use std::sync::Arc;

    fn zmod(m: i64) -> RingRef {
        Arc::new(FiniteRing::zmod(m))
    }

    fn two_by_two_t(ring: &RingRef, ideal: &IdealHandle) -> MatrixPattern {
        // T = [[R, I2], [R, R]], the n = 2 chain/thm2 shape
        MatrixPattern::t_shape(
            ring.clone(),
            2,
            None,
            vec![None],
            vec![ideal.clone()],
            BTreeMap::new(),
            false,
        )
        .unwrap()
    }

    #[test]
    fn t_shape_over_z4_checks_and_builds() {
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let p = two_by_two_t(&r, &i);
        let rep = p.check_conditions();
        assert!(rep.pass(), "violations: {:?}", rep.violations);
        let (ring, _) = p.build_subring().unwrap();
        assert_eq!(ring.order(), 128);
    }

    #[test]
    fn n_equal_one_is_the_ring_itself() {
        let r = zmod(4);
        let p = MatrixPattern::full(r.clone(), 1);
        let (ring, _) = p.build_subring().unwrap();
        assert_eq!(ring.order(), 4);
        assert!(ring.is_commutative());
    }

    #[test]
    fn full_matrix_pattern_is_m2() {
        let r = zmod(2);
        let p = MatrixPattern::full(r.clone(), 2);
        assert!(p.check_conditions().pass());
        let (ring, _) = p.build_subring().unwrap();
        assert_eq!(ring.order(), 16);
    }

    #[test]
    fn exponent_triangle_violation() {
        // over Z/8 with I = 2R: t_12 = 1, t_13 = 3, t_23 = 1 violates
        // t_13 <= t_12 + t_23
        let r = zmod(8);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let mut exps = BTreeMap::new();
        exps.insert((0, 1), 1);
        exps.insert((0, 2), 3);
        exps.insert((1, 2), 1);
        let p = MatrixPattern::exp_pattern(r, 3, i, exps).unwrap();
        let rep = p.check_conditions();
        assert!(!rep.pass());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.condition.contains("t_{1 3} ≤ t_{1 2} + t_{2 3}")));
        assert!(p.build_subring().is_err());
    }

    #[test]
    fn exponent_pattern_valid_case() {
        let r = zmod(8);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let mut exps = BTreeMap::new();
        exps.insert((0, 1), 1);
        exps.insert((0, 2), 2);
        exps.insert((1, 2), 1);
        let p = MatrixPattern::exp_pattern(r, 3, i, exps).unwrap();
        assert!(p.check_conditions().pass());
        let (ring, _) = p.build_subring().unwrap();
        // order: diag 8^3, uppers |2R| = 4, |4R| = 2, |2R| = 4, lowers 8^3
        assert_eq!(ring.order(), 8u128.pow(3) * 4 * 2 * 4 * 8 * 8 * 8);
    }

    #[test]
    fn s_thm1_shape_checks() {
        // S = [[R, I12],[I, R]] over Z/4 with I = I12 = 2R
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let mut uppers = BTreeMap::new();
        uppers.insert((0, 1), i.clone());
        let p = MatrixPattern::s_shape(r, 2, Some(i), uppers).unwrap();
        assert_eq!(p.kind, ShapeKind::SThm1);
        assert!(p.check_conditions().pass());
        let (ring, _) = p.build_subring().unwrap();
        assert_eq!(ring.order(), 4 * 2 * 2 * 4);
    }

    #[test]
    fn s_thm1_upper_not_in_lower_violation() {
        // uppers R but lower ideal 2R: I_12 ⊆ I fails
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let full = crate::finring::IdealHandle::unit_ideal(&r);
        let mut uppers = BTreeMap::new();
        uppers.insert((0, 1), full);
        let p = MatrixPattern::s_shape(r, 2, Some(i), uppers).unwrap();
        let rep = p.check_conditions();
        assert!(!rep.pass());
        assert!(rep.violations.iter().any(|v| v.condition.contains("⊆ I")));
    }

    #[test]
    fn chain_shapes_build() {
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        for below_full in [false, true] {
            let p = MatrixPattern::chain(r.clone(), 3, vec![i.clone(), i.clone()], below_full)
                .unwrap();
            assert!(p.check_conditions().pass());
            let (ring, _) = p.build_subring().unwrap();
            let expected: u128 = if below_full {
                // [[R,I,I],[R,R,I],[R,R,R]]
                4 * 2 * 2 * 4 * 4 * 2 * 4 * 4 * 4
            } else {
                // [[R,I,I],[R,R,I],[R,I,R]]
                4 * 2 * 2 * 4 * 4 * 2 * 4 * 2 * 4
            };
            assert_eq!(ring.order(), expected);
        }
    }

    #[test]
    fn chain_violation_detected() {
        let r = zmod(8);
        let i2 = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let i4 = ideal_closure(&r, &[vec![4]], Side::TwoSided);
        // I_3 = 2R not contained in I_2 = 4R
        let p = MatrixPattern::chain(r, 3, vec![i4, i2], true).unwrap();
        let rep = p.check_conditions();
        assert!(!rep.pass());
    }

    #[test]
    fn sprime_builds() {
        let r = zmod(4);
        let i = ideal_closure(&r, &[vec![2]], Side::TwoSided);
        let p = MatrixPattern::sprime(r, 3, vec![i.clone(), i]).unwrap();
        assert!(p.check_conditions().pass());
        let (ring, _) = p.build_subring().unwrap();
        // rows: [R, I, I], [I, R, I], [R, R, R]
        assert_eq!(ring.order(), 4 * 2 * 2 * 2 * 4 * 2 * 4 * 4 * 4);
    }
}
