//! Shapiro–Wilk test for skew-normality.
//!
//! If X ~ SN(ξ, ω, λ) then |X − ξ| is half-normal whatever λ is, so giving
//! each |Xᵢ − ξ̂| an independent random sign produces approximately N(0, ω²)
//! data, which the classical W test then checks. ξ̂ comes from the joint
//! penalized-likelihood fit of all three parameters.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{mple_fit_with, MpleFit, MpleOptions};
use crate::rng;
use crate::sample::{check_finite, Sample};
use crate::scalar::Real;
use crate::shapiro_wilk::sw_test;

/// Share of observations exactly equal to ξ̂ above which a warning is attached.
const LOCATION_TIE_WARNING_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct SnTestResult<T = f64> {
    /// Median of `per_replication_p`.
    pub p_value: T,
    /// W of the first replication.
    pub w: T,
    pub fit: MpleFit<T>,
    /// Signed deviations Y from the first replication.
    pub transformed: Sample<T>,
    pub seed: u64,
    pub replications: usize,
    pub per_replication_p: Vec<T>,
    pub generator: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// n independent fair signs.
pub fn sample_signs<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<i8>> {
    if n == 0 {
        return Err(Error::Argument("number of signs must be at least 1".into()));
    }
    Ok((0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect())
}

/// Yᵢ = Uᵢ · |Xᵢ − ξ̂|
pub fn transform<T: Real>(data: &[T], xi_hat: T, signs: &[i8]) -> Result<Sample<T>> {
    if data.len() != signs.len() {
        return Err(Error::Argument(format!(
            "{} observations but {} signs",
            data.len(),
            signs.len()
        )));
    }
    if !xi_hat.is_finite() {
        return Err(Error::Domain(format!("location estimate {xi_hat} is not finite")));
    }
    if let Some(s) = signs.iter().find(|s| !matches!(s, 1 | -1)) {
        return Err(Error::Argument(format!("sign {s} is not ±1")));
    }
    let y = data
        .iter()
        .zip(signs)
        .map(|(&x, &u)| {
            let d = (x - xi_hat).abs();
            if u < 0 {
                -d
            } else {
                d
            }
        })
        .collect();
    Sample::new(y)
}

/// Runs the test with the default estimator settings.
pub fn sn_test<T: Real>(data: &[T], seed: u64, replications: usize) -> Result<SnTestResult<T>> {
    sn_test_with(data, seed, replications, &MpleOptions::default())
}

/// Fit once, then for each replication r draw signs from stream r of `seed`,
/// transform and run the W test. The reported p-value is the median over
/// replications; with one replication it is exactly that replication's p.
pub fn sn_test_with<T: Real>(
    data: &[T],
    seed: u64,
    replications: usize,
    opts: &MpleOptions<T>,
) -> Result<SnTestResult<T>> {
    if replications == 0 {
        return Err(Error::Argument("replications must be at least 1".into()));
    }
    check_finite(data)?;
    let fit = mple_fit_with(data, opts)?;
    let xi_hat = fit.dp.xi;

    let mut warnings = Vec::new();
    if !fit.converged {
        warnings.push(format!(
            "penalized likelihood optimizer stopped after {} iterations without converging",
            fit.iterations
        ));
    }
    let at_location = data.iter().filter(|&&x| x == xi_hat).count();
    if at_location as f64 > LOCATION_TIE_WARNING_FRACTION * data.len() as f64 {
        warnings.push(format!(
            "{at_location} of {} observations equal the location estimate and transform to 0",
            data.len()
        ));
    }

    let mut per_replication_p = Vec::with_capacity(replications);
    let mut first = None;
    for r in 0..replications {
        let mut rng = rng::stream(seed, r as u64);
        let signs = sample_signs(data.len(), &mut rng)?;
        let y = transform(data, xi_hat, &signs)?;
        let sw = sw_test(y.values())?;
        per_replication_p.push(sw.p_value);
        if first.is_none() {
            for w in &sw.warnings {
                warnings.push(format!("transformed data: {w}"));
            }
            first = Some((sw.w, y));
        }
    }
    let (w, transformed) = first.expect("at least one replication");

    Ok(SnTestResult {
        p_value: median(&per_replication_p),
        w,
        fit,
        transformed: transformed.with_source("signed absolute deviations from the fitted location"),
        seed,
        replications,
        per_replication_p,
        generator: rng::GENERATOR_ID.to_string(),
        warnings,
    })
}

fn median<T: Real>(values: &[T]) -> T {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("p-values are finite"));
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / T::lit(2.0)
    }
}
