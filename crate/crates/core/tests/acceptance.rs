//! Acceptance gate: one pass/fail line per criterion. Runs without the
//! libtest harness so the lines always reach the output.

use std::process::ExitCode;

use bohr::families::{Family, Which};
use bohr::harness::{demos, run_all, run_suite, Expect, RunOptions, SuiteId, TheoremReport};
use bohr::radii::{self, default_grid, infimum_over_family, RadiusId, RadiusSetting, Target};
use bohr::series::{self, TruncatedSeries};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pinned tolerances.
const RADIUS_TOL: f64 = 1e-9;
const A_TILDE_PAPER: f64 = 0.361103;
const A_TILDE_TOL: f64 = 1e-6;
const MARGIN_TOL: f64 = 1e-9;
const SHARPNESS_GAP: f64 = 2e-2;
const VIOLATION_OFFSET: f64 = 0.01;
const COEFF_TOL: f64 = 1e-12;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let ids = [RadiusId::Classical, RadiusId::Derivative, RadiusId::OddMajorization, RadiusId::OddDerivative, RadiusId::ATilde];
    let mut worst: f64 = 0.0;
    for id in ids {
        let r = radii::resolve(&RadiusSetting::new(id)).expect("parameter-free radius");
        worst = worst.max(r.discrepancy);
    }
    // Independent values.
    let expected = [
        (RadiusId::Classical, 1.0 / 3.0),
        (RadiusId::Derivative, 1.0 - (2.0f64 / 3.0).sqrt()),
        (RadiusId::OddMajorization, 3f64.sqrt().recip()),
        (RadiusId::OddDerivative, ((4.0 - 13f64.sqrt()) / 3.0).sqrt()),
    ];
    let mut closed_ok = true;
    for (id, v) in expected {
        closed_ok &= (radii::resolve(&RadiusSetting::new(id)).unwrap().closed_form - v).abs() <= RADIUS_TOL;
    }
    let at = radii::a_tilde();
    let quartic = at.powi(4) + 2.0 * at * at + 2.0 * at - 1.0;
    let passed = worst <= RADIUS_TOL && closed_ok && (at - A_TILDE_PAPER).abs() <= A_TILDE_TOL && quartic.abs() < 1e-12;
    outcome(passed, format!("max |closed - bisected| = {worst:.2e}; a_tilde = {at:.9}"))
}

fn verdicts(reports: &[TheoremReport]) -> Vec<(SuiteId, bool)> {
    reports.iter().map(|r| (r.suite_id, r.passed())).collect()
}

fn criterion_2() -> Outcome {
    let args = ["bohr", "verify", "--suite", "all", "--seed", "42", "--order", "256", "--samples", "100", "--output", "csv"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = bohr::cli::run(args, &mut out, &mut err);
    let base = RunOptions { seed: 42, order: 256, samples: 100, radius_offset: 0.0 };
    let reports = run_all(&base).expect("suites run");
    let min_margin = reports.iter().map(|r| r.min_positive_margin()).fold(f64::INFINITY, f64::min);
    let v256 = verdicts(&reports);
    let mut same = true;
    for order in [64, 1024] {
        let other = run_all(&RunOptions { order, ..base }).expect("suites run");
        same &= verdicts(&other) == v256;
    }
    let all_pass = v256.iter().all(|(_, p)| *p);
    outcome(
        code == 0 && all_pass && min_margin >= -MARGIN_TOL && same,
        format!("exit {code}; {} suites pass: {all_pass}; min margin {min_margin:.2e}; orders 64/1024 agree: {same}", v256.len()),
    )
}

fn criterion_3() -> Outcome {
    let mut passed = true;
    let mut gaps = Vec::new();
    for target in [Target::Derivative, Target::OddDerivative, Target::LemmaB, Target::OddMajorization] {
        let inf = infimum_over_family(target, &default_grid()).expect("scan");
        let limit = target.limit().expect("limit");
        let last = inf.table.last().expect("rows").1;
        let gap = last - limit;
        passed &= inf.strictly_decreasing && inf.above_limit && gap < SHARPNESS_GAP && gap > 0.0;
        // Violation at (a = 0.999, radius + 0.01), from both the closed form
        // and the series lower bound.
        let r = limit + VIOLATION_OFFSET;
        let which = match target {
            Target::Derivative | Target::OddDerivative => Which::Derivative,
            _ => Which::Function,
        };
        let family = target.family(0.999);
        let closed = family.closed_majorant(which).unwrap().eval(r).unwrap();
        let s = family.generate(256).unwrap();
        let s = if which == Which::Derivative { s.derivative() } else { s };
        let lower = s.majorant(r).unwrap().lower;
        passed &= closed > target.bound(r) && lower > target.bound(r);
        gaps.push(format!("{target} gap {gap:.3e}"));
    }
    // The suites record the same exhibits.
    let opts = RunOptions { samples: 1, ..RunOptions::default() };
    for suite in [SuiteId::Derivative, SuiteId::OddDerivative, SuiteId::LemmaB, SuiteId::OddMajorization] {
        let rep = run_suite(suite, &opts).unwrap();
        passed &= rep.checks.iter().any(|c| c.expect == Expect::Violated && c.passed);
        passed &= rep.sharpness_table.iter().all(|t| t.passed);
    }
    outcome(passed, gaps.join("; "))
}

fn criterion_4() -> Outcome {
    let remark = demos::run_demo("remark-f0", 256).unwrap();
    let mut passed = remark.confirmed;
    let mut detail = Vec::new();
    for r in [0.1, 0.3] {
        let d = remark.values[&format!("difference({r})")];
        passed &= d > 0.0 && (d - 2.0 * r).abs() <= COEFF_TOL;
        detail.push(format!("M_g'-M_f'({r}) = {d}"));
    }
    let lu = demos::run_demo("local-univalence", 256).unwrap();
    let alpha1 = lu.values["alpha1"];
    passed &= lu.confirmed
        && alpha1 == 0.5
        && lu.values["forced_g_prime_at_alpha1"] == 0.0
        && lu.values["f_prime_at_alpha1"] == 0.0
        && alpha1 != lu.values["forced_root_0"]
        && alpha1 != lu.values["forced_root_1"];
    detail.push(format!(
        "local-univalence: forced g'({alpha1}) = 0, actual {}",
        lu.values["g_prime_at_alpha1"]
    ));
    outcome(passed, detail.join("; "))
}

fn criterion_5() -> Outcome {
    let opts = RunOptions { samples: 50, ..RunOptions::default() };
    let rep = run_suite(SuiteId::Bombieri, &opts).unwrap();
    let checks: Vec<_> = rep.checks.iter().filter(|c| c.description.starts_with("M_f(r) - |a0| <=")).collect();
    let min = checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
    // 50 samples per modulus, four radii up to |a0| each.
    let count_ok = checks.len() == 50 * 3 * 4;
    outcome(
        count_ok && checks.iter().all(|c| c.passed) && min >= -MARGIN_TOL && rep.passed(),
        format!("{} bound checks, min margin {min:.2e}, suite verdict {:?}", checks.len(), rep.verdict),
    )
}

fn criterion_6() -> Outcome {
    let alpha = 3f64.sqrt() / 2.0;
    let beta = (1.0 - alpha * alpha).sqrt();
    let delta = alpha / (1.0 + beta);
    let rs = radii::resolve(&RadiusSetting::new(RadiusId::SphericalRs).with("alpha", alpha)).unwrap();
    let k = Family::KAlpha { alpha };
    let m_closed = k.closed_majorant(Which::Function).unwrap().eval(0.5).unwrap();
    let m_series = k.generate(256).unwrap().majorant(0.5).unwrap();
    let spherical = (rs.closed_form - 0.5).abs() <= RADIUS_TOL
        && rs.discrepancy <= RADIUS_TOL
        && (m_closed - delta).abs() <= RADIUS_TOL
        && (m_series.upper - delta).abs() <= RADIUS_TOL;
    let ka = Family::KAConvex { a: 0.5 };
    let rc = radii::resolve(&RadiusSetting::new(RadiusId::ConvexRc).with("R2", 4.0 / 3.0).with("delta", 2.0 / 3.0)).unwrap();
    let mk = ka.closed_majorant(Which::Function).unwrap().eval(0.5).unwrap();
    let mk_series = ka.generate(256).unwrap().majorant(0.5).unwrap();
    let convex = (mk - 2.0 / 3.0).abs() <= RADIUS_TOL
        && (mk_series.upper - 2.0 / 3.0).abs() <= RADIUS_TOL
        && (rc.closed_form - 0.5).abs() <= RADIUS_TOL;
    let mut equiv = true;
    let mut points = 0;
    for j in 1..1000 {
        let alpha = j as f64 / 1000.0;
        let beta = (1.0 - alpha * alpha).sqrt();
        equiv &= (1.0 / (1.0 + 2.0 * beta) <= beta) == (alpha <= 3f64.sqrt() / 2.0);
        points += 1;
    }
    for i in 1..=40 {
        let delta = i as f64 / 40.0;
        for j in 0..=60 {
            let r2 = delta * (0.7 + j as f64 * 0.05);
            if ((r2 - 2.0 * delta) / delta).abs() < 1e-9 {
                continue;
            }
            let rc = r2 / (3.0 * r2 - 2.0 * delta);
            let a = (r2 - delta) / r2;
            equiv &= (rc <= a) == (r2 >= 2.0 * delta);
            points += 1;
        }
    }
    outcome(
        spherical && convex && equiv,
        format!("|M_k_alpha(1/2) - delta| = {:.1e}; |M_k_1/2(1/2) - 2/3| = {:.1e}; equivalences on {points} points: {equiv}", (m_closed - delta).abs(), (mk - 2.0 / 3.0).abs()),
    )
}

fn naive_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let order = 48;
    let c = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    for _ in 0..200 {
        let da = rng.gen_range(0..=6);
        let db = rng.gen_range(1..=6);
        let a: Vec<_> = (0..=da).map(|_| c(&mut rng)).collect();
        let mut b: Vec<_> = (0..=db).map(|_| c(&mut rng)).collect();
        b[0] = Complex64::new(0.0, 0.0);
        let (f, g) = (TruncatedSeries::polynomial(&a, order), TruncatedSeries::polynomial(&b, order));
        let prod = series::mul(&f, &g);
        let want = naive_mul(&a, &b);
        let comp = series::compose(&f, &g).unwrap();
        let mut want_c = vec![Complex64::new(0.0, 0.0); 1];
        let mut power = vec![Complex64::new(1.0, 0.0)];
        for coef in &a {
            want_c.resize(want_c.len().max(power.len()), Complex64::new(0.0, 0.0));
            for (k, p) in power.iter().enumerate() {
                want_c[k] += coef * p;
            }
            power = naive_mul(&power, &b);
        }
        for n in 0..=order {
            let get = |v: &[Complex64]| v.get(n).copied().unwrap_or_default();
            worst = worst.max((prod.coeff(n) - get(&want)).norm());
            worst = worst.max((comp.coeff(n) - get(&want_c)).norm());
        }
    }
    // Closed majorants against truncated sums, 20 (param, r) pairs per family.
    let mut within = true;
    let mut pairs = 0;
    for kind in 0..5 {
        for _ in 0..20 {
            let p = rng.gen_range(0.0..0.95);
            let family = match kind {
                0 => Family::MobiusFa { a: p },
                1 => Family::XiA { a: p },
                2 => Family::GA { a: p },
                3 => Family::KAlpha { alpha: 1.0 - p },
                _ => Family::KAConvex { a: p },
            };
            let r = rng.gen_range(0.0..0.9);
            let closed = family.closed_majorant(Which::Function).unwrap().eval(r).unwrap();
            let s = family.generate(256).unwrap();
            let m = s.majorant(r).unwrap();
            let tail = s.tail().unwrap().bound(r).unwrap();
            within &= (closed - m.lower).abs() <= tail + 1e-12 * closed.max(1.0);
            pairs += 1;
        }
    }
    outcome(worst <= COEFF_TOL && within, format!("200 instances, worst coefficient error {worst:.1e}; {pairs} majorant pairs within tail: {within}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("radius agreement", criterion_1),
        ("theorem suites", criterion_2),
        ("sharpness convergence", criterion_3),
        ("counterexamples", criterion_4),
        ("bombieri bound", criterion_5),
        ("applications", criterion_6),
        ("oracle equivalences", criterion_7),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = f();
        all &= o.passed;
        println!(
            "criterion {} ({name}): {} [{:.1}s] {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
