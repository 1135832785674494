//! Scenario files, built-in figure scenarios, CSV/JSON output and oracle
//! validation for the `oscnet` command.

pub mod builtins;
pub mod error;
pub mod run;
pub mod scenario;
pub mod validate;

use std::path::Path;

pub use error::{CliError, Result};
pub use run::{run_scenario, RunOptions, RunSummary};
pub use scenario::{parse_scenario, Scenario};
pub use validate::{validate, ValidateOptions, ValidationReport};

/// Resolves a builtin name or reads a scenario file.
pub fn load(spec: &str) -> Result<Scenario> {
    if builtins::NAMES.contains(&spec) {
        return builtins::builtin(spec);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::UnknownBuiltin(spec.into()));
    }
    let src = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario(&src, spec)
}
