//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line each and exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test --release --test acceptance`.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sngof::estimation::{default_tolerance, mple_fit, penalty, PENALTY_C1, PENALTY_C2};
use sngof::montecarlo::{run_scenario, Generator, Scenario, TestKind};
use sngof::numerics::{owens_t, std_normal_cdf};
use sngof::shapiro_wilk::{sw_statistic, sw_test};
use sngof::skewnormal::{cdf, cp_to_dp, dp_to_cp, pdf, sample};
use sngof::{rng, CentralParams, DirectParams};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn special_functions() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_phi = 0.0f64;
    for _ in 0..1000 {
        let z = rng.random_range(-9.0..9.0);
        let err = (std_normal_cdf(z).unwrap() - common::normal_cdf(z)).abs();
        worst_phi = worst_phi.max(err);
    }
    let mut worst_t = 0.0f64;
    for _ in 0..1000 {
        let h = rng.random_range(-5.0..5.0);
        let a = rng.random_range(-10.0..10.0);
        let err = (owens_t(h, a).unwrap() - common::owens_t(h, a)).abs();
        worst_t = worst_t.max(err);
    }
    let elapsed = start.elapsed();
    outcome(
        worst_phi <= 1e-12 && worst_t <= 1e-12 && within(elapsed, 5),
        format!("max |ΔΦ| = {worst_phi:.2e}, max |ΔT| = {worst_t:.2e}, {elapsed:.2?}"),
    )
}

/// ∫₋∞ˣ pdf, split at ξ where the density changes fastest.
fn pdf_mass_below(x: f64, p: &DirectParams) -> f64 {
    let f = |t: f64| pdf(t, p).unwrap();
    let tol = 1e-14;
    if x <= p.xi {
        common::integrate_from_neg_inf(f, x, tol)
    } else {
        common::integrate_from_neg_inf(f, p.xi, tol) + common::integrate(f, p.xi, x, tol)
    }
}

fn distribution() -> Outcome {
    let start = Instant::now();
    let mut worst_mass = 0.0f64;
    let mut worst_cdf = 0.0f64;
    for lambda in [-10.0, -2.0, 0.0, 2.0, 10.0] {
        for omega in [0.5, 1.0, 5.0] {
            let p = DirectParams::new(1.5, omega, lambda).unwrap();
            let f = |t: f64| pdf(t, &p).unwrap();
            let mass =
                common::integrate_from_neg_inf(f, p.xi, 1e-14) + common::integrate_to_inf(f, p.xi, 1e-14);
            worst_mass = worst_mass.max((mass - 1.0).abs());
            for k in -12..=12 {
                let x = p.xi + omega * k as f64 * 0.5;
                let err = (cdf(x, &p).unwrap() - pdf_mass_below(x, &p)).abs();
                worst_cdf = worst_cdf.max(err);
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst_mass <= 1e-8 && worst_cdf <= 1e-10 && within(elapsed, 30),
        format!("max |∫pdf − 1| = {worst_mass:.2e}, max |cdf − ∫pdf| = {worst_cdf:.2e}, {elapsed:.2?}"),
    )
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst_cp = 0.0f64;
    let mut worst_dp = 0.0f64;
    for _ in 0..1000 {
        let c = CentralParams::new(
            rng.random_range(-100.0..100.0),
            rng.random_range(0.1..50.0),
            rng.random_range(-0.99..0.99),
        )
        .unwrap();
        let back = dp_to_cp(&cp_to_dp(&c).unwrap()).unwrap();
        worst_cp = worst_cp
            .max((back.mean - c.mean).abs())
            .max((back.sd - c.sd).abs())
            .max((back.gamma1 - c.gamma1).abs());

        let d = cp_to_dp(&c).unwrap();
        let again = cp_to_dp(&dp_to_cp(&d).unwrap()).unwrap();
        worst_dp = worst_dp
            .max((again.xi - d.xi).abs())
            .max((again.omega - d.omega).abs())
            .max((again.lambda - d.lambda).abs());
    }
    outcome(
        worst_cp <= 1e-10 && worst_dp <= 1e-10,
        format!("max cp→dp→cp error {worst_cp:.2e}, max dp→cp→dp error {worst_dp:.2e}"),
    )
}

fn sw_oracle() -> Outcome {
    let oracles = common::oracles();
    let mut worst_w = 0.0f64;
    let mut worst_p = 0.0f64;
    let mut mismatches = 0;
    for case in &oracles.sw_datasets {
        let r = sw_test(&case.values).unwrap();
        let dw = (r.w - case.w).abs();
        let dp = (r.p_value - case.p).abs();
        worst_w = worst_w.max(dw);
        worst_p = worst_p.max(dp / case.p.max(f64::MIN_POSITIVE));
        if dw > 1e-6 || dp > 1e-6 + 1e-4 * case.p {
            mismatches += 1;
        }
    }
    let w3 = sw_statistic(&[1.0, 2.0, 3.0]).unwrap();
    outcome(
        oracles.sw_datasets.len() == 50 && mismatches == 0 && w3 == 1.0,
        format!(
            "{} datasets, {mismatches} outside tolerance, max |ΔW| = {worst_w:.2e}, max rel Δp = {worst_p:.2e}, W(1,2,3) = {w3}",
            oracles.sw_datasets.len()
        ),
    )
}

fn classical_size() -> Outcome {
    let start = Instant::now();
    let s = Scenario {
        name: Some("classical size".into()),
        generator: Generator::Normal { mean: 0.0, sd: 1.0 },
        n: 100,
        alpha: 0.05,
        reps: 5000,
        test: TestKind::ClassicalSw,
        seed: 505,
        replications: 1,
    };
    let m = run_scenario(&s).unwrap();
    let elapsed = start.elapsed();
    outcome(
        m.failures == 0 && (0.040..=0.060).contains(&m.rejection_rate) && within(elapsed, 60),
        format!("rejection rate {:.4}, {elapsed:.2?}", m.rejection_rate),
    )
}

fn modified_size() -> Outcome {
    let start = Instant::now();
    let mut rates = Vec::new();
    let mut pass = true;
    for (i, lambda) in [0.0, 2.0, 5.0, 10.0].into_iter().enumerate() {
        for (j, n) in [50, 200, 800].into_iter().enumerate() {
            let s = Scenario {
                name: None,
                generator: Generator::SkewNormal { xi: 0.0, omega: 1.0, lambda },
                n,
                alpha: 0.05,
                reps: 5000,
                test: TestKind::ModifiedSw,
                seed: 6000 + 10 * i as u64 + j as u64,
                replications: 1,
            };
            let m = run_scenario(&s).unwrap();
            pass &= m.failures == 0 && (0.035..=0.065).contains(&m.rejection_rate);
            rates.push(format!("λ={lambda} n={n}: {:.4}", m.rejection_rate));
        }
    }
    let elapsed = start.elapsed();
    outcome(pass && within(elapsed, 15 * 60), format!("{}; {elapsed:.2?}", rates.join(", ")))
}

fn qualitative_comparison() -> Outcome {
    let start = Instant::now();
    let scenario = |test| Scenario {
        name: None,
        generator: Generator::SkewNormal { xi: 60.0, omega: 12.0, lambda: 4.0 },
        n: 532,
        alpha: 0.05,
        reps: 500,
        test,
        seed: 707,
        replications: 1,
    };
    let classical = run_scenario(&scenario(TestKind::ClassicalSw)).unwrap();
    let modified = run_scenario(&scenario(TestKind::ModifiedSw)).unwrap();
    let elapsed = start.elapsed();
    let kept = 1.0 - modified.rejection_rate;
    outcome(
        classical.failures == 0
            && modified.failures == 0
            && classical.rejection_rate > 0.60
            && kept > 0.90
            && within(elapsed, 5 * 60),
        format!(
            "classical rejects {:.3}, modified fails to reject {kept:.3}, {elapsed:.2?}",
            classical.rejection_rate
        ),
    )
}

fn mple_recovery() -> Outcome {
    let truth = DirectParams::new(10.0, 5.0, 3.0).unwrap();
    let tol = default_tolerance();
    let (mut e_xi, mut e_omega, mut e_lambda) = (Vec::new(), Vec::new(), Vec::new());
    for r in 0..100 {
        let data = sample(2000, &truth, &mut rng::stream(808, r)).unwrap();
        let fit = mple_fit(&data, &tol).unwrap();
        e_xi.push((fit.dp.xi - truth.xi).abs());
        e_omega.push((fit.dp.omega - truth.omega).abs());
        e_lambda.push((fit.dp.lambda - truth.lambda).abs());
    }
    let (m_xi, m_omega, m_lambda) =
        (common::median(&mut e_xi), common::median(&mut e_omega), common::median(&mut e_lambda));
    outcome(
        m_xi < 0.3 && m_omega < 0.25 && m_lambda < 0.8,
        format!("median abs errors ξ {m_xi:.4}, ω {m_omega:.4}, λ {m_lambda:.4}"),
    )
}

/// c₁ log(1 + c₂λ²) with the rounding of 1 + c₂λ² corrected to first order.
fn penalty_oracle(lambda: f64) -> f64 {
    let x = 0.85625 * lambda * lambda;
    let u = 1.0 + x;
    let log1p = if u == 1.0 { x } else { u.ln() + (x - (u - 1.0)) / u };
    0.87591 * log1p
}

fn penalty_exact() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let lambda = match i % 3 {
            0 => rng.random_range(-1.0..1.0),
            1 => rng.random_range(-50.0..50.0),
            _ => rng.random_range(-1e-4..1e-4),
        };
        let want = penalty_oracle(lambda);
        let got = penalty(lambda);
        if want != 0.0 {
            worst = worst.max(((got - want) / want).abs());
        }
    }
    let constants = PENALTY_C1 == 0.87591 && PENALTY_C2 == 0.85625;
    let zero = penalty(0.0f64) == 0.0;
    outcome(
        constants && zero && worst <= 4.0 * f64::EPSILON,
        format!("max relative deviation {worst:.2e} (≤ 4 ulp), Q(0) = {}", penalty(0.0f64)),
    )
}

fn sngof(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sngof")).args(args).output().expect("run sngof")
}

fn without_version(path: &Path) -> Value {
    let mut v: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("tool_version");
    v
}

fn end_to_end() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let csv = common::fixture("marks.csv");
    let csv = csv.to_str().unwrap();
    let first = dir.path().join("first.json");
    let ok = sngof(&["test", csv, "--column", "marks", "--seed", "1010", "--out", first.to_str().unwrap()])
        .status
        .success();
    if !ok {
        return outcome(false, "first `test` run failed".into());
    }
    let recorded = without_version(&first);
    let seed = recorded["modified"]["seed"].as_u64().unwrap().to_string();
    let alpha = recorded["alpha"].as_f64().unwrap().to_string();
    let reps = recorded["modified"]["replications"].as_u64().unwrap().to_string();
    let second = dir.path().join("second.json");
    let ok = sngof(&[
        "test",
        csv,
        "--column",
        recorded["column"].as_str().unwrap(),
        "--seed",
        &seed,
        "--alpha",
        &alpha,
        "--replications",
        &reps,
        "--out",
        second.to_str().unwrap(),
    ])
    .status
    .success();
    let same_report = ok && without_version(&second) == recorded;

    let mut same_svgs = true;
    let report = first.to_str().unwrap();
    let plots: [&[&str]; 4] = [
        &["--csv", csv, "--column", "marks", "--kind", "histogram"],
        &["--csv", csv, "--column", "marks", "--kind", "qq"],
        &["--report", report, "--kind", "histogram"],
        &["--report", report, "--kind", "qq"],
    ];
    for (i, plot) in plots.iter().enumerate() {
        let mut bytes = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("plot{i}-{run}.svg"));
            let mut args = vec!["plot"];
            args.extend_from_slice(plot);
            args.extend_from_slice(&["--out", out.to_str().unwrap()]);
            same_svgs &= sngof(&args).status.success();
            bytes.push(std::fs::read(&out).unwrap_or_default());
        }
        same_svgs &= !bytes[0].is_empty() && bytes[0] == bytes[1];
    }
    outcome(
        same_report && same_svgs,
        format!("report identical on rerun: {same_report}, 4 SVGs byte-identical: {same_svgs}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("special-function accuracy", special_functions),
        ("distribution correctness", distribution),
        ("parameterization round-trip", round_trip),
        ("Shapiro-Wilk oracle equivalence", sw_oracle),
        ("classical-test size", classical_size),
        ("modified-test size under the null", modified_size),
        ("classical rejects, modified keeps SN(60, 12, 4)", qualitative_comparison),
        ("MPLE recovery", mple_recovery),
        ("penalty exactness", penalty_exact),
        ("end-to-end determinism", end_to_end),
    ];
    // `cargo test --test acceptance -- 6 8` runs only criteria 6 and 8.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name} ({})", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {failed} criterion(s) failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
