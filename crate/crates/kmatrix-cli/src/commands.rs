//! Implementations of the CLI subcommands.

use crate::error::CliError;
use crate::instance::{self, Resolved};
use kmatrix_core::finring::json::RingPresentation;
use kmatrix_core::gvtools::{is_gv, GvVerdict};
use kmatrix_core::kdirect::{mv_exactness, verify_decomposition, Caps, CoeffMode, KError};
use kmatrix_core::ksymbolic::{self, FactTable};
use kmatrix_core::matshape::{bimodule_ring, milnor_square_thm1, MilnorSquare, ShapeKind};
use serde_json::{json, Value};

pub fn parse_mode(s: &str) -> Result<CoeffMode, CliError> {
    if s == "integral" {
        return Ok(CoeffMode::Integral);
    }
    if let Some(inner) = s.strip_prefix("Z[1/").and_then(|t| t.strip_suffix(']')) {
        let v: u64 = inner
            .parse()
            .map_err(|_| CliError::Input(format!("bad localization in mode {s}")))?;
        return Ok(CoeffMode::Localized(v));
    }
    if let Some(p) = s.strip_prefix("mod-") {
        let v: u64 = p
            .parse()
            .map_err(|_| CliError::Input(format!("bad modulus in mode {s}")))?;
        return Ok(CoeffMode::ModP(v));
    }
    Err(CliError::Input(format!(
        "unknown mode {s}; use integral, Z[1/s], or mod-p"
    )))
}

pub fn parse_degrees(s: &str) -> Result<Vec<u8>, CliError> {
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<u8>()
                .map_err(|_| CliError::Input(format!("bad degree list {s}")))
        })
        .collect()
}

fn violations_json(violations: &[kmatrix_core::matshape::Violation]) -> Value {
    Value::Array(
        violations
            .iter()
            .map(|v| {
                json!({
                    "condition": v.condition,
                    "witness": v.witness,
                })
            })
            .collect(),
    )
}

/// `check`: exit 0 iff the declared shape's hypotheses hold.
pub fn cmd_check(file: &str) -> Result<(Value, bool), CliError> {
    let resolved = instance::load(file)?;
    let pattern = resolved.pattern()?;
    let report = pattern.check_conditions();
    let pass = report.pass();
    Ok((
        json!({
            "kind": pattern.kind.as_str(),
            "n": pattern.n,
            "pass": pass,
            "violations": violations_json(&report.violations),
        }),
        pass,
    ))
}

/// `build`: emit the constructed ring and the condition report.
pub fn cmd_build(file: &str) -> Result<(Value, bool), CliError> {
    let resolved = instance::load(file)?;
    let pattern = resolved.pattern()?;
    let report = pattern.check_conditions();
    if !report.pass() {
        return Ok((
            json!({
                "kind": pattern.kind.as_str(),
                "pass": false,
                "violations": violations_json(&report.violations),
            }),
            false,
        ));
    }
    let (ring, _) = pattern
        .build_subring()
        .map_err(|e| CliError::Math(e.to_string()))?;
    Ok((
        json!({
            "kind": pattern.kind.as_str(),
            "pass": true,
            "order": ring.order().to_string(),
            "ring": serde_json::to_value(RingPresentation::of(&ring))
                .expect("presentation serializes"),
        }),
        true,
    ))
}

/// `verify`: run one decomposition rule on one instance.
pub fn cmd_verify(
    rule: &str,
    file: &str,
    degrees: &[u8],
    mode: &CoeffMode,
    id: &str,
    caps: &Caps,
) -> Result<(Value, bool), CliError> {
    let resolved = instance::load(file)?;
    let inst = resolved.rule_instance(rule)?;
    let reports = verify_decomposition(rule, &inst, id, degrees, mode, caps).map_err(map_k)?;
    let all = reports.iter().all(|r| r.iso);
    Ok((
        json!({
            "reports": reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("report serializes"))
                .collect::<Vec<_>>(),
            "all_iso": all,
        }),
        all,
    ))
}

fn map_k(e: KError) -> CliError {
    if e.is_cap() {
        CliError::Cap(e.to_string())
    } else {
        match e {
            KError::UnknownRule(r) => CliError::Input(format!("unknown rule {r}")),
            KError::HypothesisFailed(m) => CliError::Math(format!("hypothesis failed: {m}")),
            KError::ModeConflict(m) => CliError::Input(format!("mode conflict: {m}")),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn build_square(resolved: &Resolved) -> Result<MilnorSquare, CliError> {
    if let Some(spec) = &resolved.file.bimodule {
        let inst = resolved.rule_instance("bimod5")?;
        let kmatrix_core::kdirect::RuleInstance::BimoduleShape { r, s, m, n } = inst else {
            unreachable!();
        };
        let built = bimodule_ring(&r, &s, &m, &n).map_err(|e| CliError::Math(e.to_string()))?;
        let _ = spec;
        return Ok(built.square);
    }
    let pattern = resolved.pattern()?;
    if pattern.kind != ShapeKind::SThm1 {
        return Err(CliError::Input(
            "mv needs an S-thm1 pattern or a bimodule block".into(),
        ));
    }
    milnor_square_thm1(&pattern).map_err(|e| CliError::Math(e.to_string()))
}

/// `mv`: construct the Milnor square and check Mayer-Vietoris exactness.
pub fn cmd_mv(file: &str, caps: &Caps) -> Result<(Value, bool), CliError> {
    let resolved = instance::load(file)?;
    let square = build_square(&resolved)?;
    let report = mv_exactness(&square, caps).map_err(map_k)?;
    let pass = report.all_pass();
    Ok((
        json!({
            "milnor": report.milnor_ok,
            "positions": report
                .positions
                .iter()
                .map(|(name, ok, detail)| json!({"position": name, "pass": ok, "detail": detail}))
                .collect::<Vec<_>>(),
            "k1": {
                "R": report.k1_r, "R1": report.k1_r1,
                "R2": report.k1_r2, "R0": report.k1_r0,
            },
            "k0": {
                "R": report.k0_r, "R1": report.k0_r1,
                "R2": report.k0_r2, "R0": report.k0_r0,
            },
            "pass": pass,
        }),
        pass,
    ))
}

/// `gv`: GV certificate for a named ideal.
pub fn cmd_gv(file: &str, ideal: &str) -> Result<(Value, bool), CliError> {
    let resolved = instance::load(file)?;
    let handle = resolved.ideal(ideal)?;
    let cert = is_gv(&handle.ring, handle).map_err(|e| CliError::Math(e.to_string()))?;
    let verified = cert.verify();
    let value = match &cert.verdict {
        GvVerdict::Gv { mu_inverse } => json!({
            "ideal": ideal,
            "verdict": "GV",
            "mu_inverse": mu_inverse,
            "evidence_verified": verified,
        }),
        GvVerdict::NotGv {
            annihilator_witness,
            unreachable_hom,
        } => json!({
            "ideal": ideal,
            "verdict": "not-GV",
            "annihilator_witness": annihilator_witness,
            "unreachable_hom": unreachable_hom.as_ref().map(|m| m.matrix().to_vec()),
            "evidence_verified": verified,
        }),
    };
    if !verified {
        return Err(CliError::Math("certificate failed re-verification".into()));
    }
    Ok((value, true))
}

#[derive(serde::Deserialize)]
struct BindJson {
    target: String,
    n: u32,
    base: String,
    #[serde(default)]
    quotients: Vec<String>,
    #[serde(default)]
    s: Option<u64>,
    #[serde(default)]
    notes: Vec<String>,
}

/// `ksym`: symbolic rewriting and evaluation, or the worked example.
#[allow(clippy::too_many_arguments)]
pub fn cmd_ksym(
    expr_label: Option<&str>,
    apply: &[(String, String)],
    eval: Option<u32>,
    mode: &CoeffMode,
    facts_path: Option<&str>,
    example_p: Option<u64>,
) -> Result<(Value, bool), CliError> {
    let facts = match facts_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read facts {p}: {e}")))?;
            FactTable::from_json(&text).map_err(|e| CliError::Input(e.to_string()))?
        }
        None => FactTable::builtin(),
    };
    if let Some(p) = example_p {
        let rep = ksymbolic::endo_example(p, &facts).map_err(|e| CliError::Input(e.to_string()))?;
        let pass = rep.matches_display;
        return Ok((
            json!({
                "p": p,
                "lines": rep.lines,
                "derivation": rep.chain,
                "k0": rep.k0,
                "k1": rep.k1,
                "matches_display": pass,
            }),
            pass,
        ));
    }
    let label =
        expr_label.ok_or_else(|| CliError::Input("ksym needs --expr or --example".into()))?;
    let mut expr = ksymbolic::KExpr::single(label, ksymbolic::Degree::Var, *mode);
    let mut steps = vec![format!("{expr}")];
    for (rule, bind_json) in apply {
        let bind: BindJson = serde_json::from_str(bind_json)
            .map_err(|e| CliError::Input(format!("malformed binding JSON: {e}")))?;
        let binding = ksymbolic::Binding {
            target: bind.target,
            n: bind.n,
            base: bind.base,
            quotients: bind.quotients,
            s: bind.s,
            notes: bind.notes,
        };
        expr = ksymbolic::apply_rule(&expr, rule, &binding)
            .map_err(|e| CliError::Input(e.to_string()))?;
        steps.push(format!("--{rule}--> {expr}"));
    }
    let mut out = json!({
        "expr": format!("{expr}"),
        "terms": expr.terms,
        "steps": steps,
    });
    if let Some(degree) = eval {
        let rep = ksymbolic::evaluate(&expr, degree, &facts)
            .map_err(|e| CliError::Input(e.to_string()))?;
        out["eval"] = json!({
            "degree": degree,
            "value": rep.outcome.known(),
            "missing": rep.outcome.missing(),
            "provenance": rep.provenance,
        });
    }
    Ok((out, true))
}
