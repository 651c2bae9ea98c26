//! Skew-normal goodness of fit.
//!
//! * [`numerics`]: normal distribution functions, Owen's T, Nelder–Mead.
//! * [`skewnormal`]: the SN(ξ, ω, λ) family (ω a scale): density, distribution
//!   function, sampling, direct ↔ centred parameters.
//! * [`estimation`]: maximum penalized likelihood fits.
//! * [`shapiro_wilk`]: the classical W test.
//! * [`sn_gof`]: the sign-randomized W test for skew-normality.
//! * [`montecarlo`]: size and power studies.
//! * [`cli`]: CSV ingestion, JSON reports, SVG plots.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the reports and the CLI use.

pub mod cli;
pub mod error;
pub mod estimation;
pub mod montecarlo;
pub mod numerics;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod shapiro_wilk;
pub mod skewnormal;
pub mod sn_gof;

pub use error::{Error, Result};
pub use scalar::Real;

pub type DirectParams = skewnormal::DirectParams<f64>;
pub type CentralParams = skewnormal::CentralParams<f64>;
pub type MpleFit = estimation::MpleFit<f64>;
pub type SwResult = shapiro_wilk::SwResult<f64>;
pub type SnTestResult = sn_gof::SnTestResult<f64>;
pub type Sample = sample::Sample<f64>;
pub type Tolerance = numerics::Tolerance<f64>;

pub type DirectParams32 = skewnormal::DirectParams<f32>;
pub type CentralParams32 = skewnormal::CentralParams<f32>;
pub type MpleFit32 = estimation::MpleFit<f32>;
pub type SwResult32 = shapiro_wilk::SwResult<f32>;
pub type Sample32 = sample::Sample<f32>;
pub type Tolerance32 = numerics::Tolerance<f32>;
