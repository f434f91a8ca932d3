//! Formal direct sums of `K_degree(label)` terms with a coefficient mode.

use crate::kdirect::CoeffMode;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The generic degree `*`, standing for every n >= 0.
    Var,
    Const(u32),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Var => write!(f, "*"),
            Degree::Const(n) => write!(f, "{n}"),
        }
    }
}

/// A multiset of ring labels with multiplicities, under one mode.
#[derive(Clone, PartialEq, Eq)]
pub struct KExpr {
    pub degree: Degree,
    pub terms: Vec<(String, u32)>,
    pub mode: CoeffMode,
}

impl KExpr {
    pub fn single(label: impl Into<String>, degree: Degree, mode: CoeffMode) -> Self {
        KExpr {
            degree,
            terms: vec![(label.into(), 1)],
            mode,
        }
        .normalize()
    }

    /// Sorted, multiplicity-merged canonical form.
    pub fn normalize(mut self) -> Self {
        self.terms.retain(|(_, m)| *m > 0);
        self.terms.sort();
        let mut merged: Vec<(String, u32)> = Vec::with_capacity(self.terms.len());
        for (label, m) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((last, lm)) if *last == label => *lm += m,
                _ => merged.push((label, m)),
            }
        }
        self.terms = merged;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, label: impl Into<String>, mult: u32) {
        self.terms.push((label.into(), mult));
        let this = std::mem::replace(
            self,
            KExpr {
                degree: self.degree,
                terms: vec![],
                mode: self.mode,
            },
        );
        *self = this.normalize();
    }

    pub fn multiplicity(&self, label: &str) -> u32 {
        self.terms
            .iter()
            .find(|(l, _)| l == label)
            .map_or(0, |(_, m)| *m)
    }

    pub fn total_terms(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m).sum()
    }
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> = self
                .terms
                .iter()
                .map(|(label, m)| {
                    if *m == 1 {
                        format!("K_{}({})", self.degree, label)
                    } else {
                        format!("{m}\u{b7}K_{}({})", self.degree, label)
                    }
                })
                .collect();
            write!(f, "{}", parts.join(" \u{2295} "))?;
        }
        match self.mode {
            CoeffMode::Integral => Ok(()),
            CoeffMode::Localized(s) => write!(f, " \u{2297} Z[1/{s}]"),
            CoeffMode::ModP(p) => write!(f, " (mod-{p} coefficients)"),
        }
    }
}

impl fmt::Debug for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_and_sorts() {
        let e = KExpr {
            degree: Degree::Var,
            terms: vec![
                ("R".into(), 1),
                ("A".into(), 2),
                ("R".into(), 1),
            ],
            mode: CoeffMode::Integral,
        }
        .normalize();
        assert_eq!(e.terms, vec![("A".into(), 2), ("R".into(), 2)]);
        // idempotent
        assert_eq!(e.clone().normalize(), e);
    }

    #[test]
    fn empty_sum_is_zero() {
        let e = KExpr {
            degree: Degree::Var,
            terms: vec![],
            mode: CoeffMode::Integral,
        }
        .normalize();
        assert!(e.is_zero());
        assert_eq!(format!("{e}"), "0");
    }

    #[test]
    fn display_merges_multiplicity() {
        let mut e = KExpr::single("R", Degree::Var, CoeffMode::Integral);
        e.add_term("R", 1);
        assert_eq!(format!("{e}"), "2\u{b7}K_*(R)");
    }
}
