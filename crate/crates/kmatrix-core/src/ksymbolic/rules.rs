//! The rewrite rules. Each rule encodes exactly one decomposition
//! statement; rules fire only with explicit instance bindings, never by
//! search.

use super::expr::{Degree, KExpr};
use super::SymError;
use crate::kdirect::CoeffMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    /// n-1 quotient summands (the chain-shaped rules).
    NMinus1,
    /// exactly one extra summand.
    One,
    /// pure replacement (derived-equivalence consequences).
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeReq {
    All,
    K0Only,
    K1Only,
    K01,
}

#[derive(Clone, Copy, Debug)]
pub struct KRule {
    pub id: &'static str,
    pub summary: &'static str,
    pub arity: Arity,
    /// Whether the conclusion lives after inverting s.
    pub localized: bool,
    /// Whether the localized conclusion also has a recorded mod-p variant.
    pub modp_variant: bool,
    pub degrees: DegreeReq,
}

static CATALOG: &[KRule] = &[
    KRule { id: "thm1.1s", summary: "S-shape over a Z/p^m-algebra: K(S) = K(R) + sum K(R/I_{j-1 j}), after inverting s", arity: Arity::NMinus1, localized: true, modp_variant: true, degrees: DegreeReq::All },
    KRule { id: "thm1.1t", summary: "T-shape over a Z/p^m-algebra: K(T) = K(R) + sum K(R_j/I_j), after inverting s", arity: Arity::NMinus1, localized: true, modp_variant: true, degrees: DegreeReq::All },
    KRule { id: "thm1.2s", summary: "S-shape with full lower entries: K(S) = K(R) + sum K(R/I_{j-1 j})", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "thm1.2t", summary: "T-shape with full first column: K(T) = K(R) + sum K(R_j/I_j)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "lem4.1", summary: "one-sided triangular 2x2: K = K(R_1) + K(R_2)", arity: Arity::One, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "lem4.2", summary: "triangular pattern with ideal uppers: K(B) = K(R) + sum K(R/I_{j j+1})", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "lem3.2", summary: "companion replacement: K(B) = K(C)", arity: Arity::Zero, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "cor4.3", summary: "power pattern: K(S) = K(R) + sum K(R/I^{t_{j-1 j}})", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "cor4.4", summary: "power chain: K(T) = K(R) + sum K(R/I^{t_j})", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "cor4.4k0", summary: "power chain at degree 0: K_0(T) = K_0(R) + (n-1) K_0(R/I)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::K0Only },
    KRule { id: "lem4.5", summary: "subring diagonal: K(B) = K(R) + sum K(R_j/I_j)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "cor4.6s", summary: "chain columns with first column full: K(S) = K(R) + sum K(R/I_j)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "cor4.6t", summary: "chain columns with full lower part: K(T) = K(R) + sum K(R/I_j)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "cor4.8", summary: "two-ideal square shape with I^2 in J: K(S) = K(R) + (n-1) K(R/I), after inverting s", arity: Arity::NMinus1, localized: true, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "poset", summary: "poset shape: K(B) = K(R) + (n-1) K(R/I), after inverting s", arity: Arity::NMinus1, localized: true, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "sprime", summary: "row-constant shape with full last row: K(S') = K(R) + sum K(R/I_j)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "corner", summary: "corner by an idempotent: K(eBe) = K(eRe) + sum K(eRe/eI_{j j+1}e)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "prop5.1s", summary: "degree 0, integral S-shape: K_0(S) = K_0(R) + sum K_0(R/I_{j-1 j})", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::K0Only },
    KRule { id: "prop5.1t", summary: "degree 0, integral T-shape: K_0(T) = K_0(R) + sum K_0(R_j/I_j)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::K0Only },
    KRule { id: "prop5.3", summary: "idempotent two-ideal shape at degree 1: K_1(B) = K_1(R) + (n-1) K_1(R/I)", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::K1Only },
    KRule { id: "lem5.2", summary: "idempotent-ideal extension at degree 1: K_1(B) = K_1(A)", arity: Arity::Zero, localized: false, modp_variant: false, degrees: DegreeReq::K1Only },
    KRule { id: "bimod5", summary: "bimodule 2x2 shape at degrees 0 and 1: K_i(A) = K_i(R) + K_i(S)", arity: Arity::One, localized: false, modp_variant: false, degrees: DegreeReq::K01 },
    KRule { id: "radfull", summary: "radical-full extension: K(C) = K(A) + K(B/rad B)", arity: Arity::One, localized: false, modp_variant: false, degrees: DegreeReq::All },
    KRule { id: "prop7.2", summary: "GV chain endomorphism ring: K(End) = K(B) + sum K(B/(I_j : I_{j+1}))", arity: Arity::NMinus1, localized: false, modp_variant: false, degrees: DegreeReq::All },
];

pub fn rule_catalog() -> &'static [KRule] {
    CATALOG
}

pub fn find_rule(id: &str) -> Result<&'static KRule, SymError> {
    CATALOG
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| SymError::UnknownRule(id.to_string()))
}

/// Explicit instance bindings for one rule application.
#[derive(Clone, Debug, Default)]
pub struct Binding {
    /// The label being rewritten.
    pub target: String,
    /// The pattern size n (1 gives the identity rewrite for chain rules).
    pub n: u32,
    /// Label of the base summand.
    pub base: String,
    /// Labels of the quotient summands.
    pub quotients: Vec<String>,
    /// The inverted integer for localized rules.
    pub s: Option<u64>,
    /// Recorded side conditions the caller asserts (kept as provenance).
    pub notes: Vec<String>,
}

fn expected_quotients(rule: &KRule, n: u32) -> Result<usize, SymError> {
    Ok(match rule.arity {
        Arity::NMinus1 => {
            if n == 0 {
                return Err(SymError::HypothesisSchemaMismatch(
                    "pattern size n must be at least 1".into(),
                ));
            }
            (n - 1) as usize
        }
        Arity::One => 1,
        Arity::Zero => 0,
    })
}

fn degree_allowed(req: DegreeReq, degree: Degree) -> bool {
    match (req, degree) {
        (DegreeReq::All, _) => true,
        (DegreeReq::K0Only, Degree::Const(0)) => true,
        (DegreeReq::K1Only, Degree::Const(1)) => true,
        (DegreeReq::K01, Degree::Const(d)) => d <= 1,
        _ => false,
    }
}

/// Apply one rule with explicit bindings; the mode is adjusted only as the
/// rule demands (localized rules inject the inverted integer).
pub fn apply_rule(expr: &KExpr, rule_id: &str, binding: &Binding) -> Result<KExpr, SymError> {
    let rule = find_rule(rule_id)?;
    if !degree_allowed(rule.degrees, expr.degree) {
        return Err(SymError::ModeConflict(format!(
            "rule {rule_id} is recorded only for degrees {:?}, expression has degree {}",
            rule.degrees, expr.degree
        )));
    }
    let mult = expr.multiplicity(&binding.target);
    if mult == 0 {
        return Err(SymError::HypothesisSchemaMismatch(format!(
            "target label {} does not occur in the expression",
            binding.target
        )));
    }
    let expected = expected_quotients(rule, binding.n)?;
    if binding.quotients.len() != expected {
        return Err(SymError::HypothesisSchemaMismatch(format!(
            "rule {rule_id} at n = {} needs {} quotient labels, got {}",
            binding.n,
            expected,
            binding.quotients.len()
        )));
    }
    let mode = if rule.localized {
        match expr.mode {
            CoeffMode::Integral => {
                let s = binding.s.ok_or_else(|| {
                    SymError::ModeConflict(format!(
                        "rule {rule_id} concludes after inverting s; provide s in the binding"
                    ))
                })?;
                CoeffMode::Localized(s)
            }
            CoeffMode::Localized(s) => {
                if let Some(bs) = binding.s {
                    if bs != s {
                        return Err(SymError::ModeConflict(format!(
                            "expression already inverts {s}, binding asks for {bs}"
                        )));
                    }
                }
                CoeffMode::Localized(s)
            }
            CoeffMode::ModP(p) => {
                if !rule.modp_variant {
                    return Err(SymError::ModeConflict(format!(
                        "rule {rule_id} has no recorded mod-p variant"
                    )));
                }
                if p % 4 == 2 {
                    return Err(SymError::ModeConflict(format!(
                        "mod-{p} coefficients with p = 2 (mod 4) do not split"
                    )));
                }
                CoeffMode::ModP(p)
            }
        }
    } else {
        expr.mode
    };
    let mut terms: Vec<(String, u32)> = expr
        .terms
        .iter()
        .filter(|(l, _)| l != &binding.target)
        .cloned()
        .collect();
    terms.push((binding.base.clone(), mult));
    for q in &binding.quotients {
        terms.push((q.clone(), mult));
    }
    Ok(KExpr {
        degree: expr.degree,
        terms,
        mode,
    }
    .normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(label: &str) -> KExpr {
        KExpr::single(label, Degree::Var, CoeffMode::Integral)
    }

    #[test]
    fn chain_rule_multiplicity_law() {
        // the chain-shaped rules produce exactly n-1 quotient summands
        for n in 1..6u32 {
            let b = Binding {
                target: "T".into(),
                n,
                base: "R".into(),
                quotients: (2..=n).map(|j| format!("R/I_{j}")).collect(),
                s: None,
                notes: vec![],
            };
            let out = apply_rule(&expr("T"), "cor4.6t", &b).unwrap();
            assert_eq!(out.total_terms(), n, "n = {n}");
            assert_eq!(out.multiplicity("R"), 1);
        }
    }

    #[test]
    fn identity_rewrite_at_n1() {
        let b = Binding {
            target: "T".into(),
            n: 1,
            base: "R".into(),
            quotients: vec![],
            s: None,
            notes: vec![],
        };
        let out = apply_rule(&expr("T"), "cor4.6t", &b).unwrap();
        assert_eq!(out.terms, vec![("R".to_string(), 1)]);
    }

    #[test]
    fn confluence_of_the_two_chain_routes() {
        // S-route and T-route of the same instance rewrite to the same
        // normal form
        let b = |target: &str| Binding {
            target: target.into(),
            n: 3,
            base: "R".into(),
            quotients: vec!["R/I_2".into(), "R/I_3".into()],
            s: None,
            notes: vec![],
        };
        let via_s = apply_rule(&expr("S"), "cor4.6s", &b("S")).unwrap();
        let via_t = apply_rule(&expr("T"), "cor4.6t", &b("T")).unwrap();
        assert_eq!(via_s, via_t);
    }

    #[test]
    fn localized_rule_injects_mode() {
        let b = Binding {
            target: "S".into(),
            n: 2,
            base: "R".into(),
            quotients: vec!["R/I_12".into()],
            s: Some(2),
            notes: vec![],
        };
        let out = apply_rule(&expr("S"), "thm1.1s", &b).unwrap();
        assert_eq!(out.mode, CoeffMode::Localized(2));
        // missing s is refused
        let mut b2 = b.clone();
        b2.s = None;
        assert!(matches!(
            apply_rule(&expr("S"), "thm1.1s", &b2),
            Err(SymError::ModeConflict(_))
        ));
    }

    #[test]
    fn modp_variant_guards() {
        let mut e = expr("S");
        e.mode = CoeffMode::ModP(3);
        let b = Binding {
            target: "S".into(),
            n: 2,
            base: "R".into(),
            quotients: vec!["R/I".into()],
            s: None,
            notes: vec!["base is an algebra with 3 inverted".into()],
        };
        assert!(apply_rule(&e, "thm1.1s", &b).is_ok());
        // p = 2 (mod 4) refused
        let mut e2 = expr("S");
        e2.mode = CoeffMode::ModP(6);
        assert!(matches!(
            apply_rule(&e2, "thm1.1s", &b),
            Err(SymError::ModeConflict(_))
        ));
        // rules without a recorded variant refuse mod-p
        let mut e3 = expr("S");
        e3.mode = CoeffMode::ModP(3);
        assert!(matches!(
            apply_rule(&e3, "cor4.8", &b),
            Err(SymError::ModeConflict(_))
        ));
    }

    #[test]
    fn degree_restricted_rules() {
        // prop5.3 fires only at degree 1
        let b = Binding {
            target: "B".into(),
            n: 2,
            base: "R".into(),
            quotients: vec!["R/I".into()],
            s: None,
            notes: vec![],
        };
        let e_var = KExpr::single("B", Degree::Var, CoeffMode::Integral);
        assert!(apply_rule(&e_var, "prop5.3", &b).is_err());
        let e1 = KExpr::single("B", Degree::Const(1), CoeffMode::Integral);
        assert!(apply_rule(&e1, "prop5.3", &b).is_ok());
    }

    #[test]
    fn every_rule_has_one_statement() {
        // rule ids are unique and each carries a single summary line
        let mut ids: Vec<&str> = rule_catalog().iter().map(|r| r.id).collect();
        let before = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), before);
        assert!(rule_catalog().iter().all(|r| !r.summary.is_empty()));
    }
}
