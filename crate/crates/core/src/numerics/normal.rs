use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_finite<T: Real>(what: &str, z: T) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what}: argument {z} is not finite")))
    }
}

/// Standard normal density φ(z).
pub fn std_normal_pdf<T: Real>(z: T) -> Result<T> {
    check_finite("std_normal_pdf", z)?;
    Ok(norm_pdf(z))
}

/// Standard normal distribution function Φ(z).
pub fn std_normal_cdf<T: Real>(z: T) -> Result<T> {
    check_finite("std_normal_cdf", z)?;
    Ok(norm_cdf(z))
}

/// log Φ(z), accurate far into the lower tail where Φ itself underflows.
pub fn std_normal_log_cdf<T: Real>(z: T) -> Result<T> {
    check_finite("std_normal_log_cdf", z)?;
    Ok(log_phi(z))
}

/// Inverse of Φ on the open unit interval.
pub fn std_normal_quantile<T: Real>(p: T) -> Result<T> {
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::Domain(format!(
            "std_normal_quantile: probability {p} is outside (0, 1)"
        )));
    }
    Ok(norm_quantile(p))
}

#[inline]
pub(crate) fn norm_pdf<T: Real>(z: T) -> T {
    T::FRAC_1_SQRT_2() * T::FRAC_2_SQRT_PI() * T::lit(0.5) * (-T::lit(0.5) * z * z).exp()
}

#[inline]
pub(crate) fn norm_cdf<T: Real>(z: T) -> T {
    T::lit(0.5) * (-z * T::FRAC_1_SQRT_2()).erfc()
}

/// Upper tail 1 − Φ(z) without cancellation.
#[inline]
pub(crate) fn norm_sf<T: Real>(z: T) -> T {
    T::lit(0.5) * (z * T::FRAC_1_SQRT_2()).erfc()
}

pub(crate) fn log_phi<T: Real>(z: T) -> T {
    if z >= T::zero() {
        return (-norm_sf(z)).ln_1p();
    }
    // erfc underflows past |x| ≈ 26.5 (f64) or ≈ 9.2 (f32).
    let asymptotic_below = if T::epsilon() < T::lit(1e-10) {
        T::lit(-37.0)
    } else {
        T::lit(-13.0)
    };
    if z > asymptotic_below {
        return norm_cdf(z).ln();
    }
    // Mills-ratio expansion: Φ(z) ~ φ(z)/|z| · (1 − 1/z² + 3/z⁴ − 15/z⁶ + 105/z⁸)
    let r = (z * z).recip();
    let series = T::one() - r * (T::one() - r * (T::lit(3.0) - r * (T::lit(15.0) - r * T::lit(105.0))));
    -T::lit(0.5) * z * z - (-z).ln() - T::lit(0.5) * (T::TAU()).ln() + series.ln()
}

// Rational initial guess (Acklam), refined with Halley steps on Φ.
const A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];

fn horner<T: Real>(coeffs: &[f64], x: T) -> T {
    coeffs.iter().fold(T::zero(), |acc, &c| acc * x + T::lit(c))
}

pub(crate) fn norm_quantile<T: Real>(p: T) -> T {
    let half = T::lit(0.5);
    if p == half {
        return T::zero();
    }
    if p > half {
        // 1 − p is exact here, so the result is exactly antisymmetric.
        return -norm_quantile(T::one() - p);
    }
    let mut x = if p < T::lit(0.02425) {
        let q = (-T::lit(2.0) * p.ln()).sqrt();
        horner(&C, q) / (horner(&D, q) * q + T::one())
    } else {
        let q = p - half;
        let r = q * q;
        horner(&A, r) * q / (horner(&B, r) * r + T::one())
    };
    for _ in 0..3 {
        let err = norm_cdf(x) - p;
        let dens = norm_pdf(x);
        if dens == T::zero() {
            break;
        }
        let u = err / dens;
        let step = u / (T::one() + half * x * u);
        x -= step;
        if step.abs() <= T::epsilon() * x.abs() {
            break;
        }
    }
    x
}
