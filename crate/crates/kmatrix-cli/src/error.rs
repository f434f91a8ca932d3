//! CLI errors with pinned exit codes: 0 pass, 1 mathematical failure,
//! 2 input error, 3 resource cap.

use kmatrix_core::kdirect::KError;

#[derive(Debug)]
pub enum CliError {
    /// A verified claim is false.
    Math(String),
    /// Bad input: unparsable files, unresolved names, unknown rules.
    Input(String),
    /// A configured resource cap was hit.
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Math(m) | CliError::Input(m) | CliError::Cap(m) => m,
        }
    }
}

impl From<KError> for CliError {
    fn from(e: KError) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            match e {
                KError::HypothesisFailed(_)
                | KError::ModeConflict(_)
                | KError::UnknownRule(_)
                | KError::SymbolicOnly(_) => CliError::Input(e.to_string()),
                other => CliError::Input(other.to_string()),
            }
        }
    }
}
