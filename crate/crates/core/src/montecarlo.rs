//! Empirical size and power of the classical and skew-normal W tests.

use rand_distr::{Distribution, Exp, Gamma, Normal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::DEFAULT_MIN_N;
use crate::rng::{self, StreamRng};
use crate::shapiro_wilk::{self, sw_test};
use crate::skewnormal::{self, DirectParams};
use crate::sn_gof::sn_test;

/// Data source for a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    SkewNormal { xi: f64, omega: f64, lambda: f64 },
    Normal { mean: f64, sd: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, rate: f64 },
    Uniform { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    ClassicalSw,
    ModifiedSw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generator: Generator,
    pub n: usize,
    pub alpha: f64,
    pub reps: usize,
    pub test: TestKind,
    pub seed: u64,
    /// Sign randomizations per modified test; ignored by the classical test.
    #[serde(default = "one")]
    pub replications: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McSummary {
    pub scenario: Scenario,
    /// rejections / reps
    pub rejection_rate: f64,
    /// Replications with a defined outcome.
    pub reps: usize,
    pub rejections: usize,
    /// Replications whose test could not be computed (e.g. zero variance).
    pub failures: usize,
    /// √(rate (1 − rate) / reps)
    pub std_error: f64,
}

impl Scenario {
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{:?}/{:?}/n={}", self.test, self.generator, self.n))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("scenario '{}': {msg}", self.label())));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha {} is outside (0, 1)", self.alpha));
        }
        if self.reps == 0 {
            return bad("reps must be at least 1".into());
        }
        if self.replications == 0 {
            return bad("replications must be at least 1".into());
        }
        let min_n = match self.test {
            TestKind::ClassicalSw => shapiro_wilk::MIN_N,
            TestKind::ModifiedSw => DEFAULT_MIN_N,
        };
        if !(min_n..=shapiro_wilk::MAX_N).contains(&self.n) {
            return bad(format!(
                "n = {} is outside the supported range {min_n}..={}",
                self.n,
                shapiro_wilk::MAX_N
            ));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        let ok = match self.generator {
            Generator::SkewNormal { xi, omega, lambda } => DirectParams::new(xi, omega, lambda).is_ok(),
            Generator::Normal { mean, sd } => mean.is_finite() && positive(sd),
            Generator::Exponential { rate } => positive(rate),
            Generator::Gamma { shape, rate } => positive(shape) && positive(rate),
            Generator::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
        };
        if !ok {
            return bad(format!("invalid generator parameters {:?}", self.generator));
        }
        Ok(())
    }
}

impl Generator {
    pub fn draw(&self, n: usize, rng: &mut StreamRng) -> Result<Vec<f64>> {
        let invalid = |e: &dyn std::fmt::Display| Error::InvalidParams(format!("{self:?}: {e}"));
        Ok(match *self {
            Generator::SkewNormal { xi, omega, lambda } => {
                skewnormal::sample(n, &DirectParams::new(xi, omega, lambda)?, rng)?
            }
            Generator::Normal { mean, sd } => {
                let d = Normal::new(mean, sd).map_err(|e| invalid(&e))?;
                d.sample_iter(rng).take(n).collect()
            }
            Generator::Exponential { rate } => {
                let d = Exp::new(rate).map_err(|e| invalid(&e))?;
                d.sample_iter(rng).take(n).collect()
            }
            Generator::Gamma { shape, rate } => {
                let d = Gamma::new(shape, 1.0 / rate).map_err(|e| invalid(&e))?;
                d.sample_iter(rng).take(n).collect()
            }
            Generator::Uniform { lo, hi } => {
                let d = Uniform::new(lo, hi).map_err(|e| invalid(&e))?;
                d.sample_iter(rng).take(n).collect()
            }
        })
    }
}

/// p-value of replication `r`: data from stream r of the scenario seed, and
/// for the modified test a sign seed derived from (seed, r).
fn replicate(s: &Scenario, r: usize) -> Result<f64> {
    let data = s.generator.draw(s.n, &mut rng::stream(s.seed, r as u64))?;
    match s.test {
        TestKind::ClassicalSw => Ok(sw_test(&data)?.p_value),
        TestKind::ModifiedSw => Ok(sn_test(&data, rng::derive_seed(s.seed, r as u64), s.replications)?.p_value),
    }
}

pub fn run_scenario(s: &Scenario) -> Result<McSummary> {
    s.validate()?;
    let (rejections, failures) = (0..s.reps)
        .into_par_iter()
        .map(|r| match replicate(s, r) {
            Ok(p) => ((p < s.alpha) as usize, 0),
            Err(_) => (0, 1),
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let reps = s.reps - failures;
    if reps == 0 {
        return Err(Error::Degenerate(format!(
            "scenario '{}': every replication failed",
            s.label()
        )));
    }
    let rate = rejections as f64 / reps as f64;
    Ok(McSummary {
        scenario: s.clone(),
        rejection_rate: rate,
        reps,
        rejections,
        failures,
        std_error: (rate * (1.0 - rate) / reps as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(test: TestKind, generator: Generator, n: usize, reps: usize) -> Scenario {
        Scenario {
            name: None,
            generator,
            n,
            alpha: 0.05,
            reps,
            test,
            seed: 17,
            replications: 1,
        }
    }

    #[test]
    fn validation() {
        let normal = Generator::Normal { mean: 0.0, sd: 1.0 };
        let mut s = scenario(TestKind::ClassicalSw, normal, 20, 10);
        assert!(s.validate().is_ok());
        s.alpha = 1.5;
        assert!(matches!(s.validate(), Err(Error::Config(_))));
        let s = scenario(TestKind::ModifiedSw, normal, 5, 10);
        assert!(s.validate().is_err());
        let s = scenario(TestKind::ClassicalSw, Generator::Uniform { lo: 1.0, hi: 1.0 }, 20, 10);
        assert!(s.validate().is_err());
        let s = scenario(TestKind::ClassicalSw, normal, 20, 0);
        assert!(s.validate().is_err());
    }

    #[test]
    fn summary_is_deterministic_and_consistent() {
        let s = scenario(TestKind::ClassicalSw, Generator::Exponential { rate: 2.0 }, 30, 200);
        let a = run_scenario(&s).unwrap();
        let b = run_scenario(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reps + a.failures, 200);
        let count = a.rejection_rate * a.reps as f64;
        assert!((count - count.round()).abs() < 1e-9);
        let se = (a.rejection_rate * (1.0 - a.rejection_rate) / a.reps as f64).sqrt();
        assert!((a.std_error - se).abs() < 1e-12);
    }

    #[test]
    fn every_generator_draws() {
        let gens = [
            Generator::SkewNormal { xi: 1.0, omega: 2.0, lambda: -3.0 },
            Generator::Normal { mean: 1.0, sd: 2.0 },
            Generator::Exponential { rate: 0.5 },
            Generator::Gamma { shape: 2.0, rate: 3.0 },
            Generator::Uniform { lo: -1.0, hi: 4.0 },
        ];
        for g in gens {
            let x = g.draw(100, &mut rng::stream(1, 0)).unwrap();
            assert_eq!(x.len(), 100);
            assert!(x.iter().all(|v| v.is_finite()));
        }
    }
}
