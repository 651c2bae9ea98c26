//! Standalone SVG 1.1 histograms and normal Q-Q plots.
//!
//! Output is byte-deterministic: coordinates are printed with fixed
//! precision and nothing depends on time or environment. Bars and points
//! carry `data-*` attributes with their values in data units.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::numerics::{norm_pdf, norm_quantile};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 52.0;
const CURVE_POINTS: usize = 241;

pub const DEFAULT_BINS: usize = 30;

/// Linear map from a data interval onto a pixel interval.
#[derive(Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn x_axis(lo: f64, hi: f64) -> Axis {
    Axis { lo, hi, px_lo: LEFT, px_hi: WIDTH - RIGHT }
}

fn y_axis(lo: f64, hi: f64) -> Axis {
    Axis { lo, hi, px_lo: HEIGHT - BOTTOM, px_hi: TOP }
}

fn header(title: &str) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn frame(s: &mut String, x: Axis, y: Axis, x_label: &str, y_label: &str) {
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        s,
        "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\"><line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\"/><line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\"/></g>"
    );
    s.push_str("<g class=\"ticks\">\n");
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = x.lo + t * (x.hi - x.lo);
        let px = x.map(xv);
        let _ = writeln!(
            s,
            "<line x1=\"{px:.3}\" y1=\"{y0}\" x2=\"{px:.3}\" y2=\"{:.3}\" stroke=\"black\"/><text x=\"{px:.3}\" y=\"{:.3}\" text-anchor=\"middle\">{}</text>",
            y0 + 5.0,
            y0 + 18.0,
            tick_label(xv)
        );
        let yv = y.lo + t * (y.hi - y.lo);
        let py = y.map(yv);
        let _ = writeln!(
            s,
            "<line x1=\"{:.3}\" y1=\"{py:.3}\" x2=\"{x0}\" y2=\"{py:.3}\" stroke=\"black\"/><text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"end\">{}</text>",
            x0 - 5.0,
            x0 - 7.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"middle\">{}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{:.3}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.3})\">{}</text>",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn tick_label(v: f64) -> String {
    let v = if v.abs() < 1e-12 { 0.0 } else { v };
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

/// Density histogram with `bins` equal-width bins spanning [min, max],
/// optionally overlaid with the N(mean, sd) density.
pub fn render_histogram(values: &[f64], fitted: Option<(f64, f64)>, bins: usize, title: &str) -> Result<String> {
    if values.is_empty() {
        return Err(Error::EmptyData("histogram of an empty sample".into()));
    }
    if bins == 0 {
        return Err(Error::Argument("histogram needs at least one bin".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("histogram data must be finite".into()));
    }
    if let Some((mean, sd)) = fitted {
        if !mean.is_finite() || !(sd > 0.0 && sd.is_finite()) {
            return Err(Error::Argument(format!("invalid overlay normal ({mean}, {sd})")));
        }
    }
    let n = values.len() as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // A constant sample gets one unit-width bar around the value.
    let (lo, hi, bins) = if max > min { (min, max, bins) } else { (min - 0.5, min + 0.5, 1) };
    let width = (hi - lo) / bins as f64;

    let mut counts = vec![0usize; bins];
    for &v in values {
        let k = (((v - lo) / width).floor() as usize).min(bins - 1);
        counts[k] += 1;
    }
    let densities: Vec<f64> = counts.iter().map(|&c| c as f64 / (n * width)).collect();

    let curve: Vec<(f64, f64)> = fitted
        .map(|(mean, sd)| {
            (0..CURVE_POINTS)
                .map(|i| {
                    let x = lo + (hi - lo) * i as f64 / (CURVE_POINTS - 1) as f64;
                    (x, norm_pdf((x - mean) / sd) / sd)
                })
                .collect()
        })
        .unwrap_or_default();

    let top = densities
        .iter()
        .copied()
        .chain(curve.iter().map(|p| p.1))
        .fold(0.0, f64::max)
        * 1.05;
    let (xa, ya) = (x_axis(lo, hi), y_axis(0.0, top));

    let mut s = header(title);
    frame(&mut s, xa, ya, "value", "density");
    let _ = writeln!(
        s,
        "<g class=\"bars\" data-bins=\"{bins}\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\">"
    );
    for (k, &d) in densities.iter().enumerate() {
        let x0 = lo + k as f64 * width;
        let x1 = if k + 1 == bins { hi } else { x0 + width };
        let (px0, px1) = (xa.map(x0), xa.map(x1));
        let (py_top, py_base) = (ya.map(d), ya.map(0.0));
        let _ = writeln!(
            s,
            "<rect class=\"bar\" x=\"{px0:.3}\" y=\"{py_top:.3}\" width=\"{:.3}\" height=\"{:.3}\" data-x0=\"{x0:e}\" data-x1=\"{x1:e}\" data-count=\"{}\" data-density=\"{d:e}\"/>",
            px1 - px0,
            py_base - py_top,
            counts[k]
        );
    }
    s.push_str("</g>\n");
    if !curve.is_empty() {
        let (mean, sd) = fitted.expect("curve implies a fit");
        let mut pts = String::new();
        for (i, &(x, y)) in curve.iter().enumerate() {
            if i > 0 {
                pts.push(' ');
            }
            let _ = write!(pts, "{:.3},{:.3}", xa.map(x), ya.map(y));
        }
        let _ = writeln!(
            s,
            "<polyline class=\"fit\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" data-mean=\"{mean:e}\" data-sd=\"{sd:e}\" points=\"{pts}\"/>"
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Blom plotting position (i − 3/8)/(n + 1/4) for 1-based rank `i`.
pub fn plotting_position(i: usize, n: usize) -> f64 {
    (i as f64 - 0.375) / (n as f64 + 0.25)
}

/// Sample quantile consistent with Blom positions: linear interpolation of
/// the order statistics at those positions (Hyndman–Fan type 9).
fn blom_quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n as f64 + 0.25) * p + 0.375;
    let j = h.floor();
    if j < 1.0 {
        return sorted[0];
    }
    if j >= n as f64 {
        return sorted[n - 1];
    }
    let j = j as usize;
    sorted[j - 1] + (h - j as f64) * (sorted[j] - sorted[j - 1])
}

/// Reference line through the lower and upper quartile pairs:
/// (intercept, slope).
pub fn quartile_line(sorted: &[f64]) -> (f64, f64) {
    let (z1, z3) = (norm_quantile(0.25), norm_quantile(0.75));
    let (q1, q3) = (blom_quantile(sorted, 0.25), blom_quantile(sorted, 0.75));
    let slope = (q3 - q1) / (z3 - z1);
    (q1 - slope * z1, slope)
}

/// Normal Q-Q plot: sorted sample against Φ⁻¹ at Blom plotting positions.
pub fn render_qq(values: &[f64], title: &str) -> Result<String> {
    let n = values.len();
    if n < 3 {
        return Err(Error::SampleTooSmall { n, min: 3 });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("Q-Q data must be finite".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let theoretical: Vec<f64> = (1..=n).map(|i| norm_quantile(plotting_position(i, n))).collect();
    let (intercept, slope) = quartile_line(&sorted);

    let pad = |lo: f64, hi: f64| {
        let span = if hi > lo { hi - lo } else { 1.0 };
        (lo - 0.05 * span, hi + 0.05 * span)
    };
    let (tx0, tx1) = pad(theoretical[0], theoretical[n - 1]);
    let (sy0, sy1) = pad(sorted[0], sorted[n - 1]);
    let (xa, ya) = (x_axis(tx0, tx1), y_axis(sy0, sy1));

    let mut s = header(title);
    frame(&mut s, xa, ya, "theoretical normal quantile", "sample quantile");
    let _ = writeln!(
        s,
        "<defs><clipPath id=\"plot-area\"><rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{:.3}\" height=\"{:.3}\"/></clipPath></defs>",
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );
    let _ = writeln!(
        s,
        "<line class=\"reference\" clip-path=\"url(#plot-area)\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#d62728\" stroke-width=\"1.5\" data-intercept=\"{intercept:e}\" data-slope=\"{slope:e}\"/>",
        xa.map(tx0),
        ya.map(intercept + slope * tx0),
        xa.map(tx1),
        ya.map(intercept + slope * tx1)
    );
    s.push_str("<g class=\"points\" fill=\"#3182bd\">\n");
    for (q, y) in theoretical.iter().zip(&sorted) {
        let _ = writeln!(
            s,
            "<circle class=\"point\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"2.5\" data-theoretical=\"{q:e}\" data-sample=\"{y:e}\"/>",
            xa.map(*q),
            ya.map(*y)
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
