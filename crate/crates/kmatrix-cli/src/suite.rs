//! Regression suite runner: independent instances in parallel, with
//! order-stable aggregation and cap-aware degradation.

use crate::commands;
use crate::error::CliError;
use kmatrix_core::kdirect::Caps;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::Path;

#[derive(Deserialize, Clone)]
pub struct ManifestEntry {
    pub id: String,
    pub file: String,
    pub command: CommandSpec,
    #[serde(default = "expect_pass")]
    pub expect: String,
    /// Entries to run instead when the primary hits a resource cap.
    #[serde(default)]
    pub degrade_to: Vec<DegradeEntry>,
}

#[derive(Deserialize, Clone)]
pub struct DegradeEntry {
    pub file: String,
    pub command: CommandSpec,
}

fn expect_pass() -> String {
    "pass".into()
}

#[derive(Deserialize, Clone)]
#[serde(rename_all = "lowercase")]
pub enum CommandSpec {
    Check {},
    Build {},
    Verify {
        rule: String,
        degrees: String,
        #[serde(default = "integral")]
        mode: String,
    },
    Mv {},
    Gv {
        ideal: String,
    },
}

fn integral() -> String {
    "integral".into()
}

#[derive(Deserialize)]
pub struct Manifest {
    pub instances: Vec<ManifestEntry>,
}

enum Outcome {
    Pass,
    Fail(String),
    Degraded(Vec<String>),
    Error(CliError),
}

fn run_command(
    spec: &CommandSpec,
    file: &str,
    id: &str,
    caps: &Caps,
) -> Result<bool, CliError> {
    match spec {
        CommandSpec::Check {} => commands::cmd_check(file).map(|(_, ok)| ok),
        CommandSpec::Build {} => commands::cmd_build(file).map(|(_, ok)| ok),
        CommandSpec::Verify {
            rule,
            degrees,
            mode,
        } => {
            let degrees = commands::parse_degrees(degrees)?;
            let mode = commands::parse_mode(mode)?;
            commands::cmd_verify(rule, file, &degrees, &mode, id, caps).map(|(_, ok)| ok)
        }
        CommandSpec::Mv {} => commands::cmd_mv(file, caps).map(|(_, ok)| ok),
        CommandSpec::Gv { ideal } => commands::cmd_gv(file, ideal).map(|(_, ok)| ok),
    }
}

fn run_entry(entry: &ManifestEntry, base: &Path, caps: &Caps) -> Outcome {
    let file = base.join(&entry.file);
    let file = file.to_string_lossy();
    match run_command(&entry.command, &file, &entry.id, caps) {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail("verification reported a mismatch".into()),
        Err(CliError::Cap(msg)) if !entry.degrade_to.is_empty() => {
            let mut notes = vec![format!("primary run capped: {msg}")];
            for (i, d) in entry.degrade_to.iter().enumerate() {
                let dfile = base.join(&d.file);
                match run_command(&d.command, &dfile.to_string_lossy(), &entry.id, caps) {
                    Ok(true) => notes.push(format!("fallback {i}: pass")),
                    Ok(false) => {
                        return Outcome::Fail(format!("fallback {i} reported a mismatch"))
                    }
                    Err(e) => return Outcome::Error(e),
                }
            }
            Outcome::Degraded(notes)
        }
        Err(e) => Outcome::Error(e),
    }
}

pub fn cmd_suite(manifest_path: &str, caps: &Caps) -> Result<(Value, bool, bool), CliError> {
    let text = std::fs::read_to_string(manifest_path)
        .map_err(|e| CliError::Input(format!("cannot read manifest {manifest_path}: {e}")))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed manifest: {e}")))?;
    let base = Path::new(manifest_path)
        .parent()
        .unwrap_or(Path::new("."))
        .to_path_buf();

    let mut results: Vec<(String, Outcome, String)> = manifest
        .instances
        .par_iter()
        .map(|entry| {
            let outcome = run_entry(entry, &base, caps);
            (entry.id.clone(), outcome, entry.expect.clone())
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));

    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut any_cap_error = false;
    for (id, outcome, expect) in &results {
        let (status, detail): (&str, Value) = match outcome {
            Outcome::Pass => ("pass", Value::Null),
            Outcome::Fail(d) => ("fail", json!(d)),
            Outcome::Degraded(notes) => ("degraded-pass", json!(notes)),
            Outcome::Error(e) => {
                if matches!(e, CliError::Cap(_)) {
                    any_cap_error = true;
                }
                ("error", json!({"kind": e.exit_code(), "message": e.message()}))
            }
        };
        let matched = match (expect.as_str(), status) {
            ("pass", "pass") | ("pass", "degraded-pass") | ("fail", "fail") => true,
            ("error", "error") => true,
            _ => false,
        };
        if !matched {
            all_ok = false;
        }
        rows.push(json!({
            "id": id,
            "status": status,
            "expect": expect,
            "matched": matched,
            "detail": detail,
        }));
    }
    let value = json!({
        "total": rows.len(),
        "all_matched": all_ok,
        "instances": rows,
    });
    Ok((value, all_ok, any_cap_error))
}
