//! Maximum penalized likelihood for the skew-normal family.
//!
//! The slant penalty Q(λ) = c₁ log(1 + c₂λ²) keeps λ̂ finite on samples where
//! the plain likelihood is maximized at |λ| = ∞. The optimizer works on
//! standardized data in the unconstrained coordinates (ξ, log ω, λ) and
//! starts from the method-of-moments centred parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{NelderMead, Tolerance};
use crate::sample::{check_finite, moments};
use crate::scalar::Real;
use crate::skewnormal::{cp_to_dp, dp_to_cp, log_likelihood, log_likelihood_unchecked, CentralParams, DirectParams};

pub const PENALTY_C1: f64 = 0.87591;
pub const PENALTY_C2: f64 = 0.85625;

/// Fewest observations `mple_fit` accepts by default.
pub const DEFAULT_MIN_N: usize = 8;

/// Starting skewness is clamped to this magnitude before conversion.
const START_SKEWNESS_CLAMP: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MpleFit<T = f64> {
    pub dp: DirectParams<T>,
    pub cp: CentralParams<T>,
    pub penalized_loglik: T,
    pub loglik: T,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct MpleOptions<T = f64> {
    pub tol: Tolerance<T>,
    pub min_n: usize,
}

impl<T: Real> Default for MpleOptions<T> {
    fn default() -> Self {
        Self {
            tol: default_tolerance(),
            min_n: DEFAULT_MIN_N,
        }
    }
}

/// Relative simplex diameter 1e-8, at most 500 iterations per coordinate.
pub fn default_tolerance<T: Real>() -> Tolerance<T> {
    Tolerance::new(T::lit(1e-10), T::lit(1e-8), 1500).expect("valid default tolerance")
}

/// Q(λ) = c₁ log(1 + c₂λ²)
pub fn penalty<T: Real>(lambda: T) -> T {
    T::lit(PENALTY_C1) * (T::lit(PENALTY_C2) * lambda * lambda).ln_1p()
}

/// ℓ(θ) − Q(λ)
pub fn penalized_loglik<T: Real>(data: &[T], p: &DirectParams<T>) -> Result<T> {
    Ok(log_likelihood(data, p)? - penalty(p.lambda))
}

pub fn mple_fit<T: Real>(data: &[T], tol: &Tolerance<T>) -> Result<MpleFit<T>> {
    mple_fit_with(
        data,
        &MpleOptions {
            tol: *tol,
            min_n: DEFAULT_MIN_N,
        },
    )
}

pub fn mple_fit_with<T: Real>(data: &[T], opts: &MpleOptions<T>) -> Result<MpleFit<T>> {
    check_finite(data)?;
    if data.len() < opts.min_n {
        return Err(Error::SampleTooSmall {
            n: data.len(),
            min: opts.min_n,
        });
    }
    let (mean, sd, skew) = moments(data);
    if !(sd > T::zero()) || data.iter().all(|&x| x == data[0]) {
        return Err(Error::Degenerate("sample has zero variance".into()));
    }

    let z: Vec<T> = data.iter().map(|&x| (x - mean) / sd).collect();
    let clamp = T::lit(START_SKEWNESS_CLAMP);
    let start_dp = cp_to_dp(&CentralParams::new(T::zero(), T::one(), skew.max(-clamp).min(clamp))?)?;
    let start = [start_dp.xi, start_dp.omega.ln(), start_dp.lambda];

    let objective = |theta: &[T]| {
        let p = DirectParams {
            xi: theta[0],
            omega: theta[1].exp(),
            lambda: theta[2],
        };
        if !(p.omega > T::zero() && p.omega.is_finite()) {
            return T::nan();
        }
        -(log_likelihood_unchecked(&z, &p) - penalty(p.lambda))
    };
    let step = vec![T::lit(0.1), T::lit(0.1), (T::lit(0.2) * start[2].abs()).max(T::lit(0.25))];
    let min = NelderMead::new(opts.tol)
        .with_initial_step(step)
        .minimize(objective, &start)?;

    let to_data_scale = |xi: T, log_omega: T, lambda: T| DirectParams {
        xi: mean + sd * xi,
        omega: sd * log_omega.exp(),
        lambda,
    };
    let mut dp = to_data_scale(min.argmin[0], min.argmin[1], min.argmin[2]);
    dp.validate()?;
    let mut loglik = log_likelihood_unchecked(data, &dp);

    // Rescaling can cost an ulp; never report a point worse than the start.
    let start_data = to_data_scale(start[0], start[1], start[2]);
    let start_loglik = log_likelihood_unchecked(data, &start_data);
    if start_loglik - penalty(start_data.lambda) > loglik - penalty(dp.lambda) {
        dp = start_data;
        loglik = start_loglik;
    }

    Ok(MpleFit {
        dp,
        cp: dp_to_cp(&dp)?,
        penalized_loglik: loglik - penalty(dp.lambda),
        loglik,
        converged: min.converged,
        iterations: min.iterations,
    })
}
