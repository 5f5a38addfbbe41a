//! Verification suites: inequality checks up to a claimed radius, sharpness
//! scans over extremal families, and documented counterexamples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::MajorantValue;

pub mod demos;
mod suites;
pub mod witness;

/// Slack allowed on every positive check.
pub const TOL: f64 = 1e-9;
/// Sub-radius grid, as fractions of the claimed radius.
pub const FRACTIONS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
/// Offset above the claimed radius for violation exhibits.
pub const VIOLATION_OFFSET: f64 = 0.01;
/// Offset used by the odd suites, whose thresholds sit closer together.
pub const ODD_VIOLATION_OFFSET: f64 = 0.005;
/// Largest allowed gap between the last scanned threshold and its limit.
pub const SHARPNESS_GAP: f64 = 2e-2;
/// Smallest order accepted by [`run_suite`].
pub const MIN_ORDER: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SuiteId {
    #[serde(rename = "classical")]
    Classical,
    #[serde(rename = "lemma-B")]
    LemmaB,
    #[serde(rename = "derivative")]
    Derivative,
    #[serde(rename = "derivative-compare")]
    DerivativeCompare,
    #[serde(rename = "odd-majorization")]
    OddMajorization,
    #[serde(rename = "odd-derivative")]
    OddDerivative,
    #[serde(rename = "lemma-1")]
    Lemma1,
    #[serde(rename = "bombieri")]
    Bombieri,
    #[serde(rename = "spherical")]
    Spherical,
    #[serde(rename = "bounded-convex")]
    BoundedConvex,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::Classical,
        SuiteId::LemmaB,
        SuiteId::Derivative,
        SuiteId::DerivativeCompare,
        SuiteId::OddMajorization,
        SuiteId::OddDerivative,
        SuiteId::Lemma1,
        SuiteId::Bombieri,
        SuiteId::Spherical,
        SuiteId::BoundedConvex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Classical => "classical",
            SuiteId::LemmaB => "lemma-B",
            SuiteId::Derivative => "derivative",
            SuiteId::DerivativeCompare => "derivative-compare",
            SuiteId::OddMajorization => "odd-majorization",
            SuiteId::OddDerivative => "odd-derivative",
            SuiteId::Lemma1 => "lemma-1",
            SuiteId::Bombieri => "bombieri",
            SuiteId::Spherical => "spherical",
            SuiteId::BoundedConvex => "bounded-convex",
        }
    }

    fn index(self) -> u64 {
        SuiteId::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-");
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| Error::Unknown { kind: "suite", name: s.to_string() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub seed: u64,
    pub order: usize,
    pub samples: usize,
    /// Added to every claimed radius before the positive checks run. Zero
    /// in normal use; a positive value must make a suite fail.
    pub radius_offset: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 42, order: 256, samples: 100, radius_offset: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// `lhs <= rhs` must hold: `lhs.upper <= rhs.lower + TOL`.
    Holds,
    /// `lhs > rhs` must be exhibited: `lhs.lower > rhs.upper`.
    Violated,
}

/// One inequality `lhs <= rhs` evaluated with enclosures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub r: f64,
    pub expect: Expect,
    pub lhs: MajorantValue,
    pub rhs: MajorantValue,
    /// `rhs.lower - lhs.upper` for [`Expect::Holds`], `lhs.lower - rhs.upper`
    /// for [`Expect::Violated`]; the check passes when this is large enough.
    pub margin: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(
        description: impl Into<String>,
        r: f64,
        expect: Expect,
        lhs: MajorantValue,
        rhs: MajorantValue,
    ) -> Self {
        let (margin, passed) = match expect {
            Expect::Holds => {
                let m = rhs.lower - lhs.upper;
                (m, m >= -TOL)
            }
            Expect::Violated => {
                let m = lhs.lower - rhs.upper;
                (m, m > 0.0)
            }
        };
        // NaN margins fail.
        let passed = passed && !margin.is_nan();
        Check { description: description.into(), r, expect, lhs, rhs, margin, passed }
    }

    pub fn holds(description: impl Into<String>, r: f64, lhs: MajorantValue, rhs: MajorantValue) -> Self {
        Check::new(description, r, Expect::Holds, lhs, rhs)
    }

    pub fn violated(description: impl Into<String>, r: f64, lhs: MajorantValue, rhs: MajorantValue) -> Self {
        Check::new(description, r, Expect::Violated, lhs, rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpnessMode {
    /// Thresholds strictly decrease toward the claimed radius.
    Convergent,
    /// Every threshold equals its closed-form radius.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub param: f64,
    pub threshold: f64,
    /// Closed-form value the threshold must match in exact mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessTable {
    pub description: String,
    pub mode: SharpnessMode,
    pub rows: Vec<SharpnessRow>,
    /// Claimed radius (convergent mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    pub passed: bool,
    pub detail: String,
}

impl SharpnessTable {
    /// Judge a convergent table. `limit_holds` evaluates the limiting
    /// inequality directly and must hold at the limit and fail just above it.
    pub fn convergent(
        description: impl Into<String>,
        rows: Vec<(f64, f64)>,
        limit: f64,
        limit_holds: impl Fn(f64) -> bool,
    ) -> Self {
        let decreasing = rows.windows(2).all(|w| w[1].1 < w[0].1);
        let above = rows.iter().all(|&(_, t)| t > limit);
        let gap = rows.last().map_or(f64::INFINITY, |&(_, t)| t - limit);
        let certified = limit_holds(limit * (1.0 - 1e-12)) && !limit_holds(limit + 1e-9);
        let passed = !rows.is_empty() && decreasing && above && gap < SHARPNESS_GAP && certified;
        let detail = format!(
            "strictly decreasing: {decreasing}; above limit: {above}; final gap {gap:.3e} (< {SHARPNESS_GAP:e}); limit inequality certified: {certified}"
        );
        SharpnessTable {
            description: description.into(),
            mode: SharpnessMode::Convergent,
            rows: rows.into_iter().map(|(param, threshold)| SharpnessRow { param, threshold, expected: None }).collect(),
            limit: Some(limit),
            passed,
            detail,
        }
    }

    /// Judge an exact table: each threshold within `TOL` of its closed form.
    pub fn exact(description: impl Into<String>, rows: Vec<(f64, f64, f64)>) -> Self {
        let worst = rows.iter().map(|&(_, t, e)| (t - e).abs()).fold(0.0, f64::max);
        let passed = !rows.is_empty() && worst <= TOL;
        SharpnessTable {
            description: description.into(),
            mode: SharpnessMode::Exact,
            rows: rows
                .into_iter()
                .map(|(param, threshold, e)| SharpnessRow { param, threshold, expected: Some(e) })
                .collect(),
            limit: None,
            passed,
            detail: format!("largest deviation from closed form {worst:.3e} (<= {TOL:e})"),
        }
    }
}

/// A documented counterexample with the quantities that witness it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub name: String,
    pub description: String,
    pub values: BTreeMap<String, f64>,
    pub confirmed: bool,
}

/// A yes/no fact checked alongside the inequalities (hypothesis
/// equivalences, parity identities).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fact {
    pub description: String,
    pub passed: bool,
}

impl Fact {
    pub fn new(description: impl Into<String>, passed: bool) -> Self {
        Fact { description: description.into(), passed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub suite_id: SuiteId,
    pub verdict: Verdict,
    /// Claimed radius before any injected offset; absent when the radius
    /// depends on a parameter of the sampled functions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub radius_offset: f64,
    pub seed: u64,
    pub order: usize,
    pub samples: usize,
    pub checks: Vec<Check>,
    pub sharpness_table: Vec<SharpnessTable>,
    pub counterexamples: Vec<Counterexample>,
    pub facts: Vec<Fact>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Smallest margin over the positive checks.
    pub fn min_positive_margin(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.expect == Expect::Holds)
            .map(|c| c.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(self.checks.iter().filter(|c| !c.passed).map(|c| {
            format!("check failed: {} at r = {} (margin {:e})", c.description, c.r, c.margin)
        }));
        out.extend(
            self.sharpness_table
                .iter()
                .filter(|t| !t.passed)
                .map(|t| format!("sharpness failed: {} ({})", t.description, t.detail)),
        );
        out.extend(
            self.counterexamples
                .iter()
                .filter(|c| !c.confirmed)
                .map(|c| format!("counterexample not confirmed: {}", c.name)),
        );
        out.extend(self.facts.iter().filter(|f| !f.passed).map(|f| format!("fact failed: {}", f.description)));
        out
    }
}

/// Accumulates the pieces of a report.
#[derive(Default)]
pub(crate) struct Builder {
    pub checks: Vec<Check>,
    pub tables: Vec<SharpnessTable>,
    pub counterexamples: Vec<Counterexample>,
    pub facts: Vec<Fact>,
}

impl Builder {
    fn finish(self, suite_id: SuiteId, radius: Option<f64>, opts: &RunOptions) -> TheoremReport {
        let ok = self.checks.iter().all(|c| c.passed)
            && self.tables.iter().all(|t| t.passed)
            && self.counterexamples.iter().all(|c| c.confirmed)
            && self.facts.iter().all(|f| f.passed);
        TheoremReport {
            suite_id,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            radius,
            radius_offset: opts.radius_offset,
            seed: opts.seed,
            order: opts.order,
            samples: opts.samples,
            checks: self.checks,
            sharpness_table: self.tables,
            counterexamples: self.counterexamples,
            facts: self.facts,
        }
    }
}

/// Per-sample seeds for one suite: an independent ChaCha stream per suite.
pub(crate) fn sample_seeds(seed: u64, suite: SuiteId, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.index() + 1);
    (0..count).map(|_| rng.gen()).collect()
}

/// Evaluate `f` over the samples in parallel, keeping sample order.
pub(crate) fn per_sample<T: Send>(
    seeds: &[u64],
    f: impl Fn(usize, u64) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    seeds.par_iter().enumerate().map(|(i, &s)| f(i, s)).collect()
}

fn validate(opts: &RunOptions) -> Result<()> {
    if opts.samples == 0 {
        return Err(Error::Precondition("samples must be at least 1".into()));
    }
    if opts.order < MIN_ORDER {
        return Err(Error::Precondition(format!("order must be at least {MIN_ORDER}")));
    }
    if !opts.radius_offset.is_finite() {
        return Err(Error::Precondition("radius offset must be finite".into()));
    }
    Ok(())
}

pub fn run_suite(suite: SuiteId, opts: &RunOptions) -> Result<TheoremReport> {
    validate(opts)?;
    let mut b = Builder::default();
    let radius = suites::run(suite, opts, &mut b)?;
    Ok(b.finish(suite, radius, opts))
}

/// All suites in their fixed order.
pub fn run_all(opts: &RunOptions) -> Result<Vec<TheoremReport>> {
    validate(opts)?;
    SuiteId::ALL.par_iter().map(|s| run_suite(*s, opts)).collect()
}
