//! The skew-normal family SN(ξ, ω, λ) with density
//! (2/ω) φ((x−ξ)/ω) Φ(λ(x−ξ)/ω).

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{log_phi, norm_cdf, norm_pdf, owens_t_unchecked};
use crate::sample::check_finite;
use crate::scalar::Real;

/// Supremum of |γ₁| over the family, approached as |λ| → ∞.
pub const MAX_SKEWNESS: f64 = 0.99527172778;

/// Margin below [`MAX_SKEWNESS`] at which `cp_to_dp` starts rejecting.
const SKEWNESS_MARGIN: f64 = 1e-8;

/// Direct parameters: location ξ, scale ω > 0, slant λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectParams<T = f64> {
    pub xi: T,
    pub omega: T,
    pub lambda: T,
}

/// Centred parameters: mean, standard deviation and skewness γ₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralParams<T = f64> {
    pub mean: T,
    pub sd: T,
    pub gamma1: T,
}

impl<T: Real> DirectParams<T> {
    pub fn new(xi: T, omega: T, lambda: T) -> Result<Self> {
        let p = Self { xi, omega, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.xi.is_finite() && self.omega.is_finite() && self.lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite parameter in {self:?}")));
        }
        if self.omega <= T::zero() {
            return Err(Error::InvalidParams(format!("scale must be positive, got {}", self.omega)));
        }
        Ok(())
    }

    /// δ = λ / √(1 + λ²)
    fn delta(&self) -> T {
        self.lambda / (T::one() + self.lambda * self.lambda).sqrt()
    }
}

impl<T: Real> CentralParams<T> {
    pub fn new(mean: T, sd: T, gamma1: T) -> Result<Self> {
        let c = Self { mean, sd, gamma1 };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mean.is_finite() && self.sd.is_finite() && self.gamma1.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite parameter in {self:?}")));
        }
        if self.sd <= T::zero() {
            return Err(Error::InvalidParams(format!("sd must be positive, got {}", self.sd)));
        }
        if self.gamma1.abs() >= T::lit(MAX_SKEWNESS - SKEWNESS_MARGIN) {
            return Err(Error::InadmissibleSkewness {
                gamma1: self.gamma1.to_f64_lossy(),
                bound: MAX_SKEWNESS,
            });
        }
        Ok(())
    }
}

pub fn pdf<T: Real>(x: T, p: &DirectParams<T>) -> Result<T> {
    p.validate()?;
    check_finite(&[x])?;
    let z = (x - p.xi) / p.omega;
    Ok(T::lit(2.0) / p.omega * norm_pdf(z) * norm_cdf(p.lambda * z))
}

/// Distribution function via F(z) = Φ(z) − 2 T(z, λ) on z = (x − ξ)/ω.
pub fn cdf<T: Real>(x: T, p: &DirectParams<T>) -> Result<T> {
    p.validate()?;
    check_finite(&[x])?;
    let z = (x - p.xi) / p.omega;
    let f = norm_cdf(z) - T::lit(2.0) * owens_t_unchecked(z, p.lambda);
    Ok(f.max(T::zero()).min(T::one()))
}

/// Draws `n` variates as ξ + ω(δ|Z₀| + √(1−δ²) Z₁).
pub fn sample<T: Real, R: Rng + ?Sized>(n: usize, p: &DirectParams<T>, rng: &mut R) -> Result<Vec<T>> {
    p.validate()?;
    if n == 0 {
        return Err(Error::Argument("sample size must be at least 1".into()));
    }
    let delta = p.delta();
    let ortho = (T::one() - delta * delta).sqrt();
    Ok((0..n)
        .map(|_| {
            let z0: f64 = rng.sample(StandardNormal);
            let z1: f64 = rng.sample(StandardNormal);
            let z = delta * T::lit(z0.abs()) + ortho * T::lit(z1);
            p.xi + p.omega * z
        })
        .collect())
}

/// Mean and standard deviation of the standardized variable, μ_z = bδ and
/// σ_z = √(1 − μ_z²), with b = √(2/π).
fn standardized_moments<T: Real>(delta: T) -> (T, T) {
    let mu = T::FRAC_2_SQRT_PI() * T::FRAC_1_SQRT_2() * delta;
    (mu, (T::one() - mu * mu).sqrt())
}

pub fn dp_to_cp<T: Real>(p: &DirectParams<T>) -> Result<CentralParams<T>> {
    p.validate()?;
    let (mu, sigma) = standardized_moments(p.delta());
    let ratio = mu / sigma;
    let four_minus_pi = T::lit(4.0) - T::PI();
    Ok(CentralParams {
        mean: p.xi + p.omega * mu,
        sd: p.omega * sigma,
        gamma1: T::lit(0.5) * four_minus_pi * ratio * ratio * ratio,
    })
}

pub fn cp_to_dp<T: Real>(c: &CentralParams<T>) -> Result<DirectParams<T>> {
    c.validate()?;
    let four_minus_pi = T::lit(4.0) - T::PI();
    // μ_z / σ_z recovered from γ₁, then μ_z, δ and λ in turn.
    let r = (T::lit(2.0) * c.gamma1 / four_minus_pi).cbrt();
    let mu = r / (T::one() + r * r).sqrt();
    let delta = mu / (T::FRAC_2_SQRT_PI() * T::FRAC_1_SQRT_2());
    let lambda = delta / (T::one() - delta * delta).sqrt();
    let omega = c.sd / (T::one() - mu * mu).sqrt();
    DirectParams::new(c.mean - omega * mu, omega, lambda)
}

pub fn log_likelihood<T: Real>(data: &[T], p: &DirectParams<T>) -> Result<T> {
    p.validate()?;
    if data.is_empty() {
        return Err(Error::Argument("log-likelihood of an empty sample".into()));
    }
    check_finite(data)?;
    Ok(log_likelihood_unchecked(data, p))
}

/// Σ log pdf without validation; the hot path of the estimator.
pub(crate) fn log_likelihood_unchecked<T: Real>(data: &[T], p: &DirectParams<T>) -> T {
    let inv_omega = p.omega.recip();
    let mut acc = T::zero();
    for &x in data {
        let z = (x - p.xi) * inv_omega;
        acc += log_phi(p.lambda * z) - T::lit(0.5) * z * z;
    }
    let n = T::from_usize(data.len()).unwrap();
    // log(2/ω) + log φ's normalizing constant, per observation
    acc + n * (T::LN_2() - p.omega.ln() - T::lit(0.5) * T::TAU().ln())
}
