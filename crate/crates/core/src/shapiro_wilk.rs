//! Shapiro–Wilk W test with Royston's coefficient and significance
//! approximations (valid for 3 ≤ n ≤ 5000).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{norm_quantile, norm_sf};
use crate::scalar::Real;

pub const MIN_N: usize = 3;
pub const MAX_N: usize = 5000;

/// Share of tied observations above which a warning is attached.
const TIE_WARNING_FRACTION: f64 = 0.25;

/// p-value reported when ln(1 − W) falls outside the small-n approximation.
const P_FLOOR: f64 = 1e-19;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwResult<T = f64> {
    pub w: T,
    pub p_value: T,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

// Polynomials in ascending powers.
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];

fn poly<T: Real>(c: &[f64], x: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &ci| acc * x + T::lit(ci))
}

fn check_size(n: usize) -> Result<()> {
    if (MIN_N..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedSize {
            n,
            min: MIN_N,
            max: MAX_N,
        })
    }
}

/// The n weights applied to the ascending order statistics.
pub fn sw_coefficients<T: Real>(n: usize) -> Result<Vec<T>> {
    check_size(n)?;
    Ok(cached_coefficients(n).iter().map(|&a| T::lit(a)).collect())
}

fn cached_coefficients(n: usize) -> Arc<[f64]> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<[f64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(a) = cache.read().expect("coefficient cache poisoned").get(&n) {
        return a.clone();
    }
    let a: Arc<[f64]> = royston_coefficients(n).into();
    cache
        .write()
        .expect("coefficient cache poisoned")
        .entry(n)
        .or_insert(a)
        .clone()
}

fn royston_coefficients(n: usize) -> Vec<f64> {
    let half = n / 2;
    let mut upper = vec![0.0; half];
    if n == 3 {
        upper[0] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        let an = n as f64;
        // Expected normal order statistics, largest first.
        let m: Vec<f64> = (0..half)
            .map(|i| -norm_quantile((i as f64 + 1.0 - 0.375) / (an + 0.25)))
            .collect();
        let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
        let ssumm2 = summ2.sqrt();
        let rsn = 1.0 / an.sqrt();
        let a1 = m[0] / ssumm2 + poly(&C1, rsn);
        let (corrected, fac) = if n > 5 {
            let a2 = m[1] / ssumm2 + poly(&C2, rsn);
            let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
                / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
                .sqrt();
            upper[1] = a2;
            (2, fac)
        } else {
            let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
            (1, fac)
        };
        upper[0] = a1;
        for i in corrected..half {
            upper[i] = m[i] / fac;
        }
    }
    let mut a = vec![0.0; n];
    for (i, &u) in upper.iter().enumerate() {
        a[n - 1 - i] = u;
        a[i] = -u;
    }
    a
}

/// Sorted copy of the data; rejects NaN and infinities before sorting.
fn sorted<T: Real>(data: &[T]) -> Result<Vec<T>> {
    if let Some(i) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("observation {} is not finite", i + 1)));
    }
    let mut x = data.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).expect("finite values compare"));
    Ok(x)
}

/// W and 1 − W, the latter without cancellation.
fn statistic_sorted<T: Real>(x: &[T]) -> Result<(T, T)> {
    let n = x.len();
    check_size(n)?;
    let range = x[n - 1] - x[0];
    if !(range > T::zero()) {
        return Err(Error::Degenerate("sample has zero variance".into()));
    }
    let a = cached_coefficients(n);
    let pivot = x[n / 2];
    let scaled: Vec<T> = x.iter().map(|&v| (v - pivot) / range).collect();
    let mean = scaled.iter().copied().sum::<T>() / T::from_usize(n).unwrap();
    let (mut ssa, mut ssx, mut sax) = (T::zero(), T::zero(), T::zero());
    for (&ai, &xi) in a.iter().zip(&scaled) {
        let ai = T::lit(ai);
        let d = xi - mean;
        ssa += ai * ai;
        ssx += d * d;
        sax += ai * d;
    }
    if !(ssx > T::zero()) {
        return Err(Error::Degenerate("sample has zero variance".into()));
    }
    let root = (ssa * ssx).sqrt();
    let sax = sax.abs().min(root);
    let one_minus_w = (root - sax) * (root + sax) / (ssa * ssx);
    Ok((T::one() - one_minus_w, one_minus_w))
}

pub fn sw_statistic<T: Real>(data: &[T]) -> Result<T> {
    Ok(statistic_sorted(&sorted(data)?)?.0)
}

/// Royston's normalizing transformation of W for sample size `n`.
pub fn sw_p_value<T: Real>(w: T, n: usize) -> Result<T> {
    check_size(n)?;
    if !(w > T::zero() && w <= T::one()) {
        return Err(Error::Domain(format!("W = {w} is outside (0, 1]")));
    }
    Ok(p_value(w, T::one() - w, n))
}

fn p_value<T: Real>(w: T, one_minus_w: T, n: usize) -> T {
    let lit = T::lit;
    let an = T::from_usize(n).unwrap();
    if n == 3 {
        // Exact null distribution for n = 3.
        let w = w.max(lit(0.75));
        let p = lit(6.0) / T::PI() * (w.sqrt().asin() - T::PI() / lit(3.0));
        return p.max(T::zero()).min(T::one());
    }
    let y = one_minus_w.ln();
    if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return lit(P_FLOOR);
        }
        let y = -(gamma - y).ln();
        let m = poly(&C3, an);
        let s = poly(&C4, an).exp();
        return norm_sf((y - m) / s);
    }
    let ln_n = an.ln();
    let m = poly(&C5, ln_n);
    let s = poly(&C6, ln_n).exp();
    norm_sf((y - m) / s)
}

pub fn sw_test<T: Real>(data: &[T]) -> Result<SwResult<T>> {
    let x = sorted(data)?;
    let (w, one_minus_w) = statistic_sorted(&x)?;
    let n = x.len();

    let mut warnings = Vec::new();
    let tied = (0..n)
        .filter(|&i| (i > 0 && x[i] == x[i - 1]) || (i + 1 < n && x[i] == x[i + 1]))
        .count();
    if tied as f64 > TIE_WARNING_FRACTION * n as f64 {
        warnings.push(format!(
            "{tied} of {n} observations are tied; the W approximation assumes continuous data"
        ));
    }

    Ok(SwResult {
        w,
        p_value: p_value(w, one_minus_w, n),
        n,
        warnings,
    })
}
