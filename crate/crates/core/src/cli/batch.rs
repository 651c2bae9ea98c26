use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::montecarlo::{run_scenario, McSummary, Scenario};

/// A TOML file with one `[[scenario]]` table per scenario.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchConfig {
    pub scenario: Vec<Scenario>,
}

pub fn load_config(path: &Path) -> Result<BatchConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let config: BatchConfig =
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    if config.scenario.is_empty() {
        return Err(Error::Config(format!("{}: no [[scenario]] entries", path.display())));
    }
    for (i, s) in config.scenario.iter().enumerate() {
        s.validate()
            .map_err(|e| Error::Config(format!("{}: scenario #{}: {e}", path.display(), i + 1)))?;
    }
    Ok(config)
}

/// Validates every scenario up front, then runs them in declared order.
pub fn run_mc_batch(config_path: &Path) -> Result<Vec<McSummary>> {
    load_config(config_path)?.scenario.iter().map(run_scenario).collect()
}

/// One compact JSON object per line.
pub fn to_json_lines(rows: &[McSummary]) -> Result<String> {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row)?);
        out.push('\n');
    }
    Ok(out)
}
