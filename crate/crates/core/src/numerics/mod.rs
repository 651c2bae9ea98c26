//! Special functions and the derivative-free minimizer used by the
//! distribution, estimation and testing modules.

mod nelder_mead;
mod normal;
mod owens_t;

pub use nelder_mead::{minimize, Minimum, NelderMead};
pub use normal::{std_normal_cdf, std_normal_log_cdf, std_normal_pdf, std_normal_quantile};
pub use owens_t::owens_t;

pub(crate) use normal::{log_phi, norm_cdf, norm_pdf, norm_quantile, norm_sf};
pub(crate) use owens_t::owens_t_unchecked;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Stopping rule for iterative routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance<T = f64> {
    abs_tol: T,
    rel_tol: T,
    max_iters: usize,
}

impl<T: Real> Tolerance<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_iters: usize) -> Result<Self> {
        if !(abs_tol >= T::zero() && rel_tol >= T::zero()) || !abs_tol.is_finite() || !rel_tol.is_finite() {
            return Err(Error::Argument(format!(
                "tolerances must be finite and nonnegative (abs {abs_tol}, rel {rel_tol})"
            )));
        }
        if abs_tol == T::zero() && rel_tol == T::zero() {
            return Err(Error::Argument("abs_tol and rel_tol are both zero".into()));
        }
        if max_iters == 0 {
            return Err(Error::Argument("max_iters must be at least 1".into()));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_iters,
        })
    }

    pub fn abs_tol(&self) -> T {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> T {
        self.rel_tol
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }

    /// `abs_tol + rel_tol * scale`
    pub(crate) fn threshold(&self, scale: T) -> T {
        self.abs_tol + self.rel_tol * scale
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-10),
            rel_tol: T::lit(1e-8),
            max_iters: 1000,
        }
    }
}
