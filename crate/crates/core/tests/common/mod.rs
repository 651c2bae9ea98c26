//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's numerics: the quadrature is a plain
//! adaptive Gauss–Kronrod (7, 15) rule and the densities are written out from
//! their definitions.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Deserialize;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: (f64, f64), tol: f64, depth: u32) -> f64 {
    let (value, err) = whole;
    // The error estimate cannot drop below rounding noise in the sums.
    let floor = 50.0 * f64::EPSILON * value.abs();
    if err <= tol.max(floor) || depth == 0 || (b - a).abs() < 1e-14 * a.abs().max(1.0) {
        return value;
    }
    let m = 0.5 * (a + b);
    let left = gk15(f, a, m);
    let right = gk15(f, m, b);
    adapt(f, a, m, left, 0.5 * tol, depth - 1) + adapt(f, m, b, right, 0.5 * tol, depth - 1)
}

/// ∫ₐᵇ f to roughly `tol` absolute.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let whole = gk15(&f, a, b);
    adapt(&f, a, b, whole, tol, 40)
}

/// ∫ₐ^∞ f, via x = a + t / (1 − t).
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
    )
}

/// ∫₋∞ᵇ f.
pub fn integrate_from_neg_inf<F: Fn(f64) -> f64>(f: F, b: f64, tol: f64) -> f64 {
    integrate_to_inf(|x| f(-x), -b, tol)
}

pub fn phi(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Φ(z) by quadrature of the density; the smaller tail is integrated so the
/// result keeps absolute accuracy near 0 and 1.
pub fn normal_cdf(z: f64) -> f64 {
    let tail = |t: f64| integrate(phi, t, t + 40.0, 1e-17);
    if z <= 0.0 {
        tail(-z)
    } else {
        1.0 - tail(z)
    }
}

/// T(h, a) = (1/2π) ∫₀ᵃ exp(−h²(1 + x²)/2) / (1 + x²) dx.
pub fn owens_t(h: f64, a: f64) -> f64 {
    integrate(
        |x| {
            let q = 1.0 + x * x;
            (-0.5 * h * h * q).exp() / q
        },
        0.0,
        a,
        1e-17,
    ) / (2.0 * PI)
}

/// Skew-normal density written out from the definition, with Φ by quadrature.
pub fn sn_pdf(x: f64, xi: f64, omega: f64, lambda: f64) -> f64 {
    let z = (x - xi) / omega;
    2.0 / omega * phi(z) * normal_cdf(lambda * z)
}

/// Sample moments with the n − 1 variance divisor.
pub fn mean_sd(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

#[derive(Debug, Deserialize)]
pub struct SwCase {
    pub seed: u64,
    pub kind: String,
    pub n: usize,
    pub values: Vec<f64>,
    pub w: f64,
    pub p: f64,
}

#[derive(Debug, Deserialize)]
pub struct MpleOracleFit {
    pub xi: f64,
    pub omega: f64,
    pub lambda: f64,
    pub penalized_loglik: f64,
}

#[derive(Debug, Deserialize)]
pub struct MpleCase {
    pub name: String,
    #[serde(rename = "true")]
    pub truth: [f64; 3],
    pub values: Vec<f64>,
    pub fit: MpleOracleFit,
}

#[derive(Debug, Deserialize)]
pub struct Oracles {
    pub sw_datasets: Vec<SwCase>,
    pub sw_coefficients_n10: Vec<f64>,
    pub sw_coefficients_n532: Vec<f64>,
    pub mple: Vec<MpleCase>,
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn oracles() -> Oracles {
    let text = std::fs::read_to_string(fixture("oracles.json")).expect("oracle fixtures");
    serde_json::from_str(&text).expect("oracle fixtures parse")
}

pub fn mple_case<'a>(o: &'a Oracles, name: &str) -> &'a MpleCase {
    o.mple.iter().find(|c| c.name == name).expect("mple oracle case")
}
