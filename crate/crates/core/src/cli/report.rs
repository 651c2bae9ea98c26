use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::MpleFit;
use crate::sample::Sample;
use crate::shapiro_wilk::{sw_test, SwResult};
use crate::sn_gof::{sn_test, SnTestResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Reject,
    FailToReject,
}

impl Verdict {
    pub fn from_p(p_value: f64, alpha: f64) -> Self {
        if p_value < alpha {
            Verdict::Reject
        } else {
            Verdict::FailToReject
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub classical: Option<Verdict>,
    pub modified: Option<Verdict>,
}

/// The modified-test part of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModifiedSummary {
    pub p_value: f64,
    pub w: f64,
    pub fit: MpleFit<f64>,
    pub seed: u64,
    pub replications: usize,
    pub per_replication_p: Vec<f64>,
    pub generator: String,
    /// Signed deviations from the fitted location (first replication).
    pub transformed: Vec<f64>,
}

impl From<SnTestResult<f64>> for ModifiedSummary {
    fn from(r: SnTestResult<f64>) -> Self {
        Self {
            p_value: r.p_value,
            w: r.w,
            fit: r.fit,
            seed: r.seed,
            replications: r.replications,
            per_replication_p: r.per_replication_p,
            generator: r.generator,
            transformed: r.transformed.into_values(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub dataset_id: String,
    pub column: String,
    pub n: usize,
    pub alpha: f64,
    pub classical: Option<SwResult<f64>>,
    pub modified: Option<ModifiedSummary>,
    pub verdicts: Verdicts,
    pub warnings: Vec<String>,
    /// Tests that could not be run, with the reason.
    pub errors: Vec<String>,
}

/// What to analyze and how; everything needed to reproduce a report.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRequest {
    pub dataset_id: String,
    pub column: String,
    pub alpha: f64,
    pub seed: u64,
    pub replications: usize,
}

pub fn validate_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("alpha {alpha} is outside (0, 1)")))
    }
}

/// Runs both tests. A failing test is recorded in `errors`; the call only
/// fails when neither test produced a result.
pub fn analyze(sample: &Sample<f64>, req: &AnalysisRequest) -> Result<AnalysisReport> {
    validate_alpha(req.alpha)?;
    if req.replications == 0 {
        return Err(Error::Config("replications must be at least 1".into()));
    }
    let data = sample.values();
    let mut warnings = Vec::new();
    let mut errors = Vec::new();

    let classical = match sw_test(data) {
        Ok(r) => {
            warnings.extend(r.warnings.iter().map(|w| format!("classical: {w}")));
            Some(r)
        }
        Err(e) => {
            errors.push(format!("classical: {e}"));
            None
        }
    };
    let (modified, modified_err) = match sn_test(data, req.seed, req.replications) {
        Ok(r) => {
            warnings.extend(r.warnings.iter().map(|w| format!("modified: {w}")));
            if r.replications > 1 {
                warnings.push(format!(
                    "modified: p-value is the median over {} sign randomizations",
                    r.replications
                ));
            }
            (Some(ModifiedSummary::from(r)), None)
        }
        Err(e) => {
            errors.push(format!("modified: {e}"));
            (None, Some(e))
        }
    };
    if classical.is_none() {
        if let Some(e) = modified_err {
            return Err(e);
        }
    }

    let verdicts = Verdicts {
        classical: classical.as_ref().map(|r| Verdict::from_p(r.p_value, req.alpha)),
        modified: modified.as_ref().map(|m| Verdict::from_p(m.p_value, req.alpha)),
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        dataset_id: req.dataset_id.clone(),
        column: req.column.clone(),
        n: data.len(),
        alpha: req.alpha,
        classical,
        modified,
        verdicts,
        warnings,
        errors,
    })
}
