//! Caps and defaults, from (in increasing precedence) built-in defaults,
//! a config file, `KMATRIX_`-prefixed environment variables, and flags.

use crate::error::CliError;
use kmatrix_core::kdirect::Caps;
use serde::Deserialize;

#[derive(Deserialize, Default)]
struct FileConfig {
    unit_cap: Option<u128>,
    pair_budget: Option<u128>,
}

pub fn resolve_caps(
    config_path: Option<&str>,
    unit_cap_flag: Option<u128>,
    pair_budget_flag: Option<u128>,
) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    if let Some(path) = config_path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {path}: {e}")))?;
        let file: FileConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("malformed config {path}: {e}")))?;
        if let Some(v) = file.unit_cap {
            caps.unit_cap = v;
        }
        if let Some(v) = file.pair_budget {
            caps.pair_budget = v;
        }
    }
    let env_cap = |var: &str| -> Result<Option<u128>, CliError> {
        match std::env::var(var) {
            Ok(val) => val
                .parse()
                .map(Some)
                .map_err(|_| CliError::Input(format!("{var} must be an integer"))),
            Err(_) => Ok(None),
        }
    };
    if let Some(v) = env_cap("KMATRIX_UNIT_CAP")? {
        caps.unit_cap = v;
    }
    if let Some(v) = env_cap("KMATRIX_PAIR_BUDGET")? {
        caps.pair_budget = v;
    }
    if let Some(v) = unit_cap_flag {
        caps.unit_cap = v;
    }
    if let Some(v) = pair_budget_flag {
        caps.pair_budget = v;
    }
    Ok(caps)
}

pub fn describe_defaults() -> String {
    let caps = Caps::default();
    format!(
        "defaults:\n  unit_cap = {} (largest ring enumerated for units)\n  pair_budget = {} (largest pair sweep for K1)\n  config file: --config <path>, env: KMATRIX_UNIT_CAP, KMATRIX_PAIR_BUDGET",
        caps.unit_cap, caps.pair_budget
    )
}
