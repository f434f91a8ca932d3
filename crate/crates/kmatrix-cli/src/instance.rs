//! Instance files: named rings, ideals, subrings, patterns, and rule
//! bindings, resolved into core objects.

use crate::error::CliError;
use kmatrix_core::finring::json::{IdealPresentation, RingPresentation};
use kmatrix_core::finring::{FiniteRing, IdealHandle, RingRef, Side, Subgroup};
use kmatrix_core::kdirect::RuleInstance;
use kmatrix_core::matshape::{Bimodule, MatrixPattern};
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Deserialize)]
pub struct InstanceFile {
    #[serde(default)]
    pub rings: BTreeMap<String, Value>,
    #[serde(default)]
    pub ideals: BTreeMap<String, IdealSpec>,
    #[serde(default)]
    pub subrings: BTreeMap<String, SubringSpec>,
    #[serde(default)]
    pub pattern: Option<PatternSpecJson>,
    #[serde(default)]
    pub bimodule: Option<BimoduleSpec>,
    #[serde(default)]
    pub extension: Option<ExtensionSpec>,
    #[serde(default)]
    pub chain: Option<ChainSpec>,
}

#[derive(Deserialize)]
pub struct IdealSpec {
    pub ring: String,
    pub gens: Vec<Vec<i64>>,
    #[serde(default = "two_sided")]
    pub side: Side,
}

fn two_sided() -> Side {
    Side::TwoSided
}

#[derive(Deserialize)]
pub struct SubringSpec {
    pub ring: String,
    pub gens: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
pub struct PatternSpecJson {
    pub kind: String,
    pub n: usize,
    pub ring: String,
    #[serde(default)]
    pub lower: Option<String>,
    #[serde(default)]
    pub uppers: BTreeMap<String, String>,
    #[serde(default)]
    pub subrings: BTreeMap<String, String>,
    #[serde(default)]
    pub cols: BTreeMap<String, String>,
    #[serde(default)]
    pub lowers: BTreeMap<String, String>,
    #[serde(default)]
    pub ideal: Option<String>,
    #[serde(default)]
    pub exps: BTreeMap<String, u32>,
    #[serde(default)]
    pub ts: Vec<u32>,
    #[serde(default)]
    pub ideals: Vec<String>,
    #[serde(default)]
    pub upper: Option<String>,
    #[serde(default)]
    pub relations: Vec<(usize, usize)>,
    #[serde(default)]
    pub e: Option<Vec<i64>>,
}

#[derive(Deserialize)]
pub struct BimoduleSpec {
    pub r: String,
    pub s: String,
    pub m: BimoduleData,
    pub n: BimoduleData,
}

#[derive(Deserialize)]
pub struct BimoduleData {
    pub orders: Vec<i64>,
    pub left_action: Vec<Vec<Vec<i64>>>,
    pub right_action: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
pub struct ExtensionSpec {
    pub big: String,
    pub sub: String,
    #[serde(default)]
    pub ideal: Option<String>,
}

#[derive(Deserialize)]
pub struct ChainSpec {
    pub ring: String,
    pub ideals: Vec<String>,
}

/// Fully resolved instance.
pub struct Resolved {
    pub rings: BTreeMap<String, RingRef>,
    pub ideals: BTreeMap<String, IdealHandle>,
    pub subrings: BTreeMap<String, (RingRef, Subgroup)>,
    pub file: InstanceFile,
}

pub fn load(path: &str) -> Result<Resolved, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let file: InstanceFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!(
            "malformed JSON in {path} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    resolve(file)
}

fn resolve(file: InstanceFile) -> Result<Resolved, CliError> {
    let mut rings: BTreeMap<String, RingRef> = BTreeMap::new();
    // ring declarations may reference each other; resolve with a work loop
    let mut pending: Vec<(String, Value)> = file
        .rings
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let mut progress = true;
    while progress && !pending.is_empty() {
        progress = false;
        let mut next = Vec::new();
        for (name, spec) in pending {
            match build_ring(&spec, &rings)? {
                Some(r) => {
                    rings.insert(name, r);
                    progress = true;
                }
                None => next.push((name, spec)),
            }
        }
        pending = next;
    }
    if let Some((name, _)) = pending.first() {
        return Err(CliError::Input(format!(
            "unresolved ring reference in declaration of {name}"
        )));
    }
    let mut ideals = BTreeMap::new();
    for (name, spec) in &file.ideals {
        let ring = rings
            .get(&spec.ring)
            .ok_or_else(|| CliError::Input(format!("unresolved ring name {}", spec.ring)))?;
        let pres = IdealPresentation {
            gens: spec.gens.clone(),
            side: spec.side,
        };
        let handle = pres
            .build(ring)
            .map_err(|e| CliError::Input(format!("ideal {name}: {e}")))?;
        ideals.insert(name.clone(), handle);
    }
    let mut subrings = BTreeMap::new();
    for (name, spec) in &file.subrings {
        let ring = rings
            .get(&spec.ring)
            .ok_or_else(|| CliError::Input(format!("unresolved ring name {}", spec.ring)))?;
        let sub = subring_closure(ring, &spec.gens);
        subrings.insert(name.clone(), (ring.clone(), sub));
    }
    Ok(Resolved {
        rings,
        ideals,
        subrings,
        file,
    })
}

/// Unital multiplicative closure of a set of generators.
fn subring_closure(ring: &RingRef, gens: &[Vec<i64>]) -> Subgroup {
    let mut all = gens.to_vec();
    all.push(ring.one());
    let mut sub = Subgroup::from_gens(ring.orders(), &all);
    loop {
        let mut grew = false;
        let rows: Vec<Vec<i64>> = sub.basis().to_vec();
        for a in &rows {
            for b in &rows {
                grew |= sub.insert(&ring.mul_el(a, b));
            }
        }
        if !grew {
            break;
        }
    }
    sub
}

fn build_ring(
    spec: &Value,
    known: &BTreeMap<String, RingRef>,
) -> Result<Option<RingRef>, CliError> {
    let obj = spec
        .as_object()
        .ok_or_else(|| CliError::Input("ring declaration must be an object".into()))?;
    if let Some(m) = obj.get("zmod") {
        let m = m
            .as_i64()
            .ok_or_else(|| CliError::Input("zmod takes an integer".into()))?;
        if m < 2 {
            return Err(CliError::Input("zmod needs m >= 2".into()));
        }
        return Ok(Some(Arc::new(FiniteRing::zmod(m))));
    }
    if obj.get("zero").is_some() {
        return Ok(Some(Arc::new(FiniteRing::zero_ring())));
    }
    if let Some(parts) = obj.get("product") {
        let names: Vec<String> = serde_json::from_value(parts.clone())
            .map_err(|e| CliError::Input(format!("product takes ring names: {e}")))?;
        let mut resolved = Vec::new();
        for n in &names {
            match known.get(n) {
                Some(r) => resolved.push(r.clone()),
                None => return Ok(None),
            }
        }
        let mut acc = FiniteRing::zero_ring();
        let mut first = true;
        for r in resolved {
            acc = if first {
                first = false;
                r.as_ref().clone()
            } else {
                FiniteRing::product(&acc, &r)
            };
        }
        return Ok(Some(Arc::new(acc)));
    }
    if let Some(m) = obj.get("matrix") {
        #[derive(Deserialize)]
        struct M {
            over: String,
            n: usize,
        }
        let m: M = serde_json::from_value(m.clone())
            .map_err(|e| CliError::Input(format!("matrix spec: {e}")))?;
        return match known.get(&m.over) {
            Some(r) => Ok(Some(Arc::new(FiniteRing::matrix_ring(r, m.n)))),
            None => Ok(None),
        };
    }
    if let Some(o) = obj.get("opposite") {
        let name: String = serde_json::from_value(o.clone())
            .map_err(|e| CliError::Input(format!("opposite takes a ring name: {e}")))?;
        return match known.get(&name) {
            Some(r) => Ok(Some(Arc::new(r.opposite()))),
            None => Ok(None),
        };
    }
    if obj.contains_key("orders") {
        let pres: RingPresentation = serde_json::from_value(spec.clone())
            .map_err(|e| CliError::Input(format!("ring presentation: {e}")))?;
        let ring = pres
            .build()
            .map_err(|e| CliError::Input(format!("invalid ring presentation: {e}")))?;
        return Ok(Some(Arc::new(ring)));
    }
    Err(CliError::Input(
        "unknown ring constructor; use zmod/product/matrix/opposite/orders".into(),
    ))
}

impl Resolved {
    pub fn ring(&self, name: &str) -> Result<&RingRef, CliError> {
        self.rings
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unresolved ring name {name}")))
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle, CliError> {
        self.ideals
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unresolved ideal name {name}")))
    }

    fn parse_pos(key: &str) -> Result<(usize, usize), CliError> {
        let parts: Vec<&str> = key.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::Input(format!(
                "entry key {key} must be \"i,j\" with 1-based indices"
            )));
        }
        let i: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad index in {key}")))?;
        let j: usize = parts[1]
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad index in {key}")))?;
        if i == 0 || j == 0 {
            return Err(CliError::Input(format!("indices in {key} are 1-based")));
        }
        Ok((i - 1, j - 1))
    }

    /// Build the declared pattern.
    pub fn pattern(&self) -> Result<MatrixPattern, CliError> {
        let spec = self
            .file
            .pattern
            .as_ref()
            .ok_or_else(|| CliError::Input("instance file declares no pattern".into()))?;
        let ring = self.ring(&spec.ring)?.clone();
        let n = spec.n;
        let err = |e: kmatrix_core::matshape::MatError| CliError::Input(e.to_string());
        let pattern = match spec.kind.as_str() {
            "S-thm1" | "S-thm2" | "B-lemma32" => {
                let mut uppers = BTreeMap::new();
                for (k, v) in &spec.uppers {
                    uppers.insert(Self::parse_pos(k)?, self.ideal(v)?.clone());
                }
                let lower = match &spec.lower {
                    Some(l) => Some(self.ideal(l)?.clone()),
                    None => None,
                };
                if spec.kind == "S-thm1" && lower.is_none() {
                    return Err(CliError::Input(
                        "S-thm1 patterns need the lower ideal".into(),
                    ));
                }
                if spec.kind == "B-lemma32" {
                    MatrixPattern::b_lemma32(ring, n, uppers).map_err(err)?
                } else {
                    MatrixPattern::s_shape(ring, n, lower, uppers).map_err(err)?
                }
            }
            "T-thm1" | "T-thm2" | "B-lemma34" => {
                let mut subrings: Vec<Option<Subgroup>> = vec![None; n - 1];
                for (k, v) in &spec.subrings {
                    let c: usize = k
                        .parse()
                        .map_err(|_| CliError::Input(format!("bad diagonal index {k}")))?;
                    if c < 2 || c > n {
                        return Err(CliError::Input(format!(
                            "diagonal index {c} out of range 2..{n}"
                        )));
                    }
                    let (sring, sub) = self
                        .subrings
                        .get(v)
                        .ok_or_else(|| CliError::Input(format!("unresolved subring {v}")))?;
                    if *sring != ring {
                        return Err(CliError::Input(format!(
                            "subring {v} lives over a different ring"
                        )));
                    }
                    subrings[c - 2] = Some(sub.clone());
                }
                let mut cols = Vec::with_capacity(n - 1);
                for c in 2..=n {
                    let name = spec.cols.get(&c.to_string()).ok_or_else(|| {
                        CliError::Input(format!("missing column ideal for column {c}"))
                    })?;
                    cols.push(self.ideal(name)?.clone());
                }
                let mut lowers = BTreeMap::new();
                for (k, v) in &spec.lowers {
                    lowers.insert(Self::parse_pos(k)?, self.ideal(v)?.clone());
                }
                let lower = match &spec.lower {
                    Some(l) => Some(self.ideal(l)?.clone()),
                    None => None,
                };
                if spec.kind == "T-thm1" && lower.is_none() {
                    return Err(CliError::Input(
                        "T-thm1 patterns need the lower ideal".into(),
                    ));
                }
                MatrixPattern::t_shape(
                    ring,
                    n,
                    lower,
                    subrings,
                    cols,
                    lowers,
                    spec.kind == "B-lemma34",
                )
                .map_err(err)?
            }
            "exp" => {
                let ideal = self.named_ideal(&spec.ideal)?;
                let mut exps = BTreeMap::new();
                for (k, v) in &spec.exps {
                    exps.insert(Self::parse_pos(k)?, *v);
                }
                MatrixPattern::exp_pattern(ring, n, ideal, exps).map_err(err)?
            }
            "expchain" => {
                let ideal = self.named_ideal(&spec.ideal)?;
                MatrixPattern::exp_chain(ring, n, ideal, spec.ts.clone()).map_err(err)?
            }
            "chainS" | "chainT" => {
                let ideals = self.ideal_list(&spec.ideals)?;
                MatrixPattern::chain(ring, n, ideals, spec.kind == "chainT").map_err(err)?
            }
            "two-ideals" => {
                let upper = spec
                    .upper
                    .as_ref()
                    .ok_or_else(|| CliError::Input("two-ideals needs \"upper\"".into()))?;
                let lower = spec
                    .lower
                    .as_ref()
                    .ok_or_else(|| CliError::Input("two-ideals needs \"lower\"".into()))?;
                MatrixPattern::two_ideals(
                    ring,
                    n,
                    self.ideal(upper)?.clone(),
                    self.ideal(lower)?.clone(),
                )
                .map_err(err)?
            }
            "sprime" => {
                let ideals = self.ideal_list(&spec.ideals)?;
                MatrixPattern::sprime(ring, n, ideals).map_err(err)?
            }
            "full" => MatrixPattern::full(ring, n),
            "poset" => {
                return Err(CliError::Input(
                    "poset shapes are driven through the poset rule instance".into(),
                ))
            }
            other => {
                return Err(CliError::Input(format!("unknown pattern kind {other}")));
            }
        };
        Ok(pattern)
    }

    fn named_ideal(&self, name: &Option<String>) -> Result<IdealHandle, CliError> {
        let name = name
            .as_ref()
            .ok_or_else(|| CliError::Input("pattern needs an \"ideal\" field".into()))?;
        Ok(self.ideal(name)?.clone())
    }

    fn ideal_list(&self, names: &[String]) -> Result<Vec<IdealHandle>, CliError> {
        names.iter().map(|n| Ok(self.ideal(n)?.clone())).collect()
    }

    /// Resolve the instance into the form a verification rule expects.
    pub fn rule_instance(&self, rule: &str) -> Result<RuleInstance, CliError> {
        match rule {
            "poset" => {
                let spec = self
                    .file
                    .pattern
                    .as_ref()
                    .ok_or_else(|| CliError::Input("poset rule needs a pattern block".into()))?;
                Ok(RuleInstance::PosetShape {
                    ring: self.ring(&spec.ring)?.clone(),
                    ideal: self.named_ideal(&spec.ideal)?,
                    n: spec.n,
                    relations: spec.relations.clone(),
                })
            }
            "bimod5" => {
                let spec = self
                    .file
                    .bimodule
                    .as_ref()
                    .ok_or_else(|| CliError::Input("bimod5 needs a bimodule block".into()))?;
                let r = self.ring(&spec.r)?.clone();
                let s = self.ring(&spec.s)?.clone();
                let mk = |d: &BimoduleData, left: &RingRef, right: &RingRef| {
                    Bimodule::new(
                        left.clone(),
                        right.clone(),
                        d.orders.clone(),
                        d.left_action.clone(),
                        d.right_action.clone(),
                    )
                    .map_err(|e| CliError::Input(e.to_string()))
                };
                Ok(RuleInstance::BimoduleShape {
                    m: mk(&spec.m, &r, &s)?,
                    n: mk(&spec.n, &s, &r)?,
                    r,
                    s,
                })
            }
            "lem5.2" => {
                let spec = self
                    .file
                    .extension
                    .as_ref()
                    .ok_or_else(|| CliError::Input("lem5.2 needs an extension block".into()))?;
                let big = self.ring(&spec.big)?.clone();
                let (sring, sub) = self
                    .subrings
                    .get(&spec.sub)
                    .ok_or_else(|| CliError::Input(format!("unresolved subring {}", spec.sub)))?;
                if *sring != big {
                    return Err(CliError::Input("subring over a different ring".into()));
                }
                let ideal_name = spec
                    .ideal
                    .as_ref()
                    .ok_or_else(|| CliError::Input("lem5.2 needs an ideal".into()))?;
                Ok(RuleInstance::Extension {
                    big,
                    sub: sub.clone(),
                    ideal: self.ideal(ideal_name)?.clone(),
                })
            }
            "radfull" => {
                let spec = self
                    .file
                    .extension
                    .as_ref()
                    .ok_or_else(|| CliError::Input("radfull needs an extension block".into()))?;
                let big = self.ring(&spec.big)?.clone();
                let (sring, sub) = self
                    .subrings
                    .get(&spec.sub)
                    .ok_or_else(|| CliError::Input(format!("unresolved subring {}", spec.sub)))?;
                if *sring != big {
                    return Err(CliError::Input("subring over a different ring".into()));
                }
                Ok(RuleInstance::RadFull {
                    big,
                    sub: sub.clone(),
                })
            }
            "prop7.2" => {
                let spec = self
                    .file
                    .chain
                    .as_ref()
                    .ok_or_else(|| CliError::Input("prop7.2 needs a chain block".into()))?;
                Ok(RuleInstance::GvChain {
                    ring: self.ring(&spec.ring)?.clone(),
                    chain: self.ideal_list(&spec.ideals)?,
                })
            }
            "corner" => {
                let pattern = self.pattern()?;
                let spec = self.file.pattern.as_ref().expect("checked above");
                let e = spec
                    .e
                    .clone()
                    .ok_or_else(|| CliError::Input("corner rule needs the idempotent e".into()))?;
                Ok(RuleInstance::Corner { pattern, e })
            }
            _ => Ok(RuleInstance::Pattern(self.pattern()?)),
        }
    }
}

