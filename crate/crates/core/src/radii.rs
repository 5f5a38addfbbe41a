//! Closed-form radii and their independent re-derivation by bisection.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::families::{Family, Which};

/// Bisection tolerance on the radius.
pub const BISECT_TOL: f64 = 1e-12;
/// Upper end of the default bracket `[0, 1 - 1e-6]`.
pub const BRACKET_HI: f64 = 1.0 - 1e-6;
pub const MAX_ITERATIONS: usize = 200;
/// Default horizon for the coefficient-ratio radius.
pub const DEFAULT_HORIZON: usize = 256;
/// Relative slack on boundary hypotheses, so that decimal inputs such as
/// `R2 = 1.3333333, delta = 0.6666667` count as lying on the boundary.
pub const HYPOTHESIS_REL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RadiusId {
    #[serde(rename = "classical")]
    Classical,
    #[serde(rename = "lemma_B")]
    LemmaB,
    #[serde(rename = "derivative")]
    Derivative,
    #[serde(rename = "odd_majorization")]
    OddMajorization,
    #[serde(rename = "odd_derivative")]
    OddDerivative,
    #[serde(rename = "lemma1_ratio")]
    Lemma1Ratio,
    #[serde(rename = "bombieri_radius")]
    BombieriRadius,
    #[serde(rename = "r_a0")]
    RA0,
    #[serde(rename = "a_tilde")]
    ATilde,
    #[serde(rename = "spherical_rs")]
    SphericalRs,
    #[serde(rename = "convex_rc")]
    ConvexRc,
}

impl RadiusId {
    pub const ALL: [RadiusId; 11] = [
        RadiusId::Classical,
        RadiusId::LemmaB,
        RadiusId::Derivative,
        RadiusId::OddMajorization,
        RadiusId::OddDerivative,
        RadiusId::Lemma1Ratio,
        RadiusId::BombieriRadius,
        RadiusId::RA0,
        RadiusId::ATilde,
        RadiusId::SphericalRs,
        RadiusId::ConvexRc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RadiusId::Classical => "classical",
            RadiusId::LemmaB => "lemma_B",
            RadiusId::Derivative => "derivative",
            RadiusId::OddMajorization => "odd_majorization",
            RadiusId::OddDerivative => "odd_derivative",
            RadiusId::Lemma1Ratio => "lemma1_ratio",
            RadiusId::BombieriRadius => "bombieri_radius",
            RadiusId::RA0 => "r_a0",
            RadiusId::ATilde => "a_tilde",
            RadiusId::SphericalRs => "spherical_rs",
            RadiusId::ConvexRc => "convex_rc",
        }
    }
}

impl fmt::Display for RadiusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RadiusId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RadiusId::ALL
            .into_iter()
            .find(|id| id.name() == s || id.name().eq_ignore_ascii_case(&s.replace('-', "_")))
            .ok_or_else(|| Error::Unknown { kind: "radius setting", name: s.to_string() })
    }
}

/// A radius together with the parameters it depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusSetting {
    pub id: RadiusId,
    /// Named real parameters: `a0`, `alpha`, `R2`, `delta`, `m`, `horizon`.
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    /// Coefficient list for `lemma1_ratio`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coeffs: Vec<Complex64>,
}

impl RadiusSetting {
    pub fn new(id: RadiusId) -> Self {
        RadiusSetting { id, params: BTreeMap::new(), coeffs: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_coeffs(mut self, coeffs: Vec<Complex64>) -> Self {
        self.coeffs = coeffs;
        self
    }

    fn param(&self, key: &str) -> Result<f64> {
        let v = self
            .params
            .get(key)
            .copied()
            .ok_or_else(|| Error::Parse(format!("setting `{}` needs parameter `{key}`", self.id)))?;
        if !v.is_finite() {
            return Err(domain(format!("parameter `{key}` must be finite")));
        }
        Ok(v)
    }

    fn index_param(&self, key: &str, default: usize) -> Result<usize> {
        match self.params.get(key) {
            None => Ok(default),
            Some(&v) if v >= 0.0 && v.fract() == 0.0 && v < 1e9 => Ok(v as usize),
            Some(v) => Err(domain(format!("parameter `{key}` must be a nonnegative integer, got {v}"))),
        }
    }

    /// Check the hypotheses of the setting, naming the violated one.
    pub fn validate(&self) -> Result<()> {
        match self.id {
            RadiusId::RA0 => {
                let x = self.param("a0")?;
                let at = a_tilde();
                if !(x >= at - 1e-12 && x <= 1.0) {
                    return Err(domain(format!("requires a_tilde = {at:.15} <= |a0| <= 1, got {x}")));
                }
            }
            RadiusId::BombieriRadius => {
                let x = self.param("a0")?;
                if !(x > 0.0 && x < 1.0) {
                    return Err(domain(format!("requires 0 < |a0| < 1, got {x}")));
                }
            }
            RadiusId::SphericalRs => {
                let alpha = self.param("alpha")?;
                if !(alpha > 0.0 && alpha <= 3f64.sqrt() / 2.0) {
                    return Err(domain(format!("requires 0 < alpha <= sqrt(3)/2, got {alpha}")));
                }
            }
            RadiusId::ConvexRc => {
                let (r2, delta) = (self.param("R2")?, self.param("delta")?);
                if !(delta > 0.0) {
                    return Err(domain(format!("requires delta > 0, got {delta}")));
                }
                if !(r2 >= 2.0 * delta * (1.0 - HYPOTHESIS_REL_TOL)) {
                    return Err(domain(format!("requires R2 >= 2 delta, got R2 = {r2}, delta = {delta}")));
                }
            }
            RadiusId::Lemma1Ratio => {
                if self.coeffs.is_empty() {
                    return Err(Error::Parse("lemma1_ratio needs a coefficient list".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Closed-form value next to the bisected value of the same radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub setting: RadiusSetting,
    pub closed_form: f64,
    pub bisected: f64,
    pub discrepancy: f64,
    pub iterations: usize,
}

/// `x^4 + 2x^2 + 2x - 1`.
pub fn psi1(x: f64) -> f64 {
    x.powi(4) + 2.0 * x * x + 2.0 * x - 1.0
}

/// The root in `(0, 1)` of `x^4 + 2x^2 + 2x - 1` by Ferrari's method.
///
/// The resolvent cubic `2m^3 + 4m^2 + 4m - 1 = 0` is solved by Cardano
/// (shift `m = t - 2/3` gives `t^3 + (2/3) t - 67/54 = 0`), after which the
/// quartic splits into `x^2 -+ sqrt(2m) x + (1 + m +- 1/sqrt(2m))`.
pub fn a_tilde() -> f64 {
    let (p, q): (f64, f64) = (2.0 / 3.0, -67.0 / 54.0);
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let t = (-q / 2.0 + disc).cbrt() + (-q / 2.0 - disc).cbrt();
    let m = t - 2.0 / 3.0;
    let k = (2.0 * m).sqrt();
    let mut roots = Vec::new();
    for sign in [1.0f64, -1.0] {
        // x^2 + 1 + m = sign (k x - 1/k)
        let b = -sign * k;
        let c = 1.0 + m + sign / k;
        let d = b * b - 4.0 * c;
        if d >= 0.0 {
            let sq = d.sqrt();
            roots.push((-b + sq) / 2.0);
            roots.push((-b - sq) / 2.0);
        }
    }
    roots
        .into_iter()
        .find(|x| *x > 0.0 && *x < 1.0)
        .expect("the quartic has exactly one root in (0, 1)")
}

/// `(sqrt((1+x)^2 + x^2) - (1+x)) / x^2`.
pub fn r_a0(x: f64) -> f64 {
    (((1.0 + x).powi(2) + x * x).sqrt() - (1.0 + x)) / (x * x)
}

pub fn r0_derivative() -> f64 {
    1.0 - (2.0f64 / 3.0).sqrt()
}

pub fn r0_odd_derivative() -> f64 {
    ((4.0 - 13f64.sqrt()) / 3.0).sqrt()
}

/// `r (1 - |a0|^2) / (1 - |a0| r)` for `0 <= r <= |a0|`.
pub fn bombieri_bound(a0_mod: f64, r: f64) -> Result<f64> {
    if !(a0_mod > 0.0 && a0_mod < 1.0) {
        return Err(domain(format!("requires 0 < |a0| < 1, got {a0_mod}")));
    }
    if !(0.0..=a0_mod).contains(&r) {
        return Err(domain(format!("requires 0 <= r <= |a0| = {a0_mod}, got r = {r}")));
    }
    Ok(r * (1.0 - a0_mod * a0_mod) / (1.0 - a0_mod * r))
}

/// Smallest coefficient ratio over the horizon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRadius {
    pub radius: f64,
    /// Index `n` attaining `min |a_{n+1} / a_n|`.
    pub argmin: usize,
    /// Whether the minimizer lies strictly before the last ratio examined.
    pub interior: bool,
}

/// `min_{n0 <= n < horizon} |a_{n+1} / a_n|` with `n0 = max(m, 1)` (a
/// constant term never enters the ratio).
pub fn lemma1_radius(coeffs: &[Complex64], m: usize, horizon: usize) -> Result<RatioRadius> {
    let first = m.max(1);
    let last = horizon.min(coeffs.len().saturating_sub(1));
    if last <= first {
        return Err(domain(format!(
            "need coefficients beyond index {first} (have {} coefficients, horizon {horizon})",
            coeffs.len()
        )));
    }
    let mut best = RatioRadius { radius: f64::INFINITY, argmin: first, interior: false };
    for n in first..last {
        if coeffs[n] == Complex64::new(0.0, 0.0) {
            return Err(domain(format!("coefficient a_{n} vanishes")));
        }
        let ratio = (coeffs[n + 1] / coeffs[n]).norm();
        if ratio < best.radius {
            best.radius = ratio;
            best.argmin = n;
        }
    }
    if coeffs[last] == Complex64::new(0.0, 0.0) {
        return Err(domain(format!("coefficient a_{last} vanishes")));
    }
    best.interior = best.argmin + 1 < last;
    Ok(best)
}

/// Largest point of `[lo, hi]` where the monotone predicate holds, to within
/// `tol`. Returns the point and the number of halvings.
pub fn bisect_root(
    pred: impl Fn(f64) -> bool,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, usize)> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(domain(format!("bisection needs lo < hi and tol > 0 (lo={lo}, hi={hi}, tol={tol})")));
    }
    if !pred(lo) || pred(hi) {
        return Err(Error::Bracket { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok((0.5 * (lo + hi), iterations))
}

/// Defining predicate of each radius; `r` passes iff `r <= radius`.
fn defining_predicate(setting: &RadiusSetting) -> Result<Box<dyn Fn(f64) -> bool>> {
    Ok(match setting.id {
        RadiusId::Classical | RadiusId::LemmaB => Box::new(|r| 2.0 * r / (1.0 - r) <= 1.0),
        RadiusId::Derivative => Box::new(|r| 2.0 * (1.0 / (1.0 - r).powi(2) - 1.0) <= 1.0),
        RadiusId::OddMajorization => Box::new(|r| 2.0 * r * r / (1.0 - r * r) <= 1.0),
        RadiusId::OddDerivative => Box::new(|r| {
            let x = r * r;
            2.0 * ((1.0 + x) / (1.0 - x).powi(2) - 1.0) <= 1.0
        }),
        RadiusId::ATilde => Box::new(|x| psi1(x) <= 0.0),
        RadiusId::RA0 => {
            let x = setting.param("a0")?;
            Box::new(move |r| x * x * r * r + 2.0 * (1.0 + x) * r - 1.0 <= 0.0)
        }
        RadiusId::SphericalRs => {
            let alpha = setting.param("alpha")?;
            let beta = (1.0 - alpha * alpha).sqrt();
            Box::new(move |r| r / (1.0 - beta * r) <= 1.0 / (1.0 + beta))
        }
        RadiusId::ConvexRc => {
            let (r2, delta) = (setting.param("R2")?, setting.param("delta")?);
            let a = (r2 - delta) / r2;
            let b = (2.0 * r2 - delta) * delta / r2;
            Box::new(move |r| b * r / (1.0 - a * r) <= delta)
        }
        RadiusId::BombieriRadius => {
            let a0 = setting.param("a0")?;
            let coeffs: Vec<_> = Family::MobiusFa { a: a0 }.generate(32)?.coeffs().to_vec();
            Box::new(move |r| {
                (1..32).all(|n| r * coeffs[n].norm() <= coeffs[n + 1].norm())
            })
        }
        RadiusId::Lemma1Ratio => {
            let m = setting.index_param("m", 0)?;
            let horizon = setting.index_param("horizon", DEFAULT_HORIZON)?;
            let coeffs = setting.coeffs.clone();
            let last = horizon.min(coeffs.len().saturating_sub(1));
            Box::new(move |r| {
                (m.max(1)..last).all(|n| r * coeffs[n].norm() <= coeffs[n + 1].norm())
            })
        }
    })
}

pub fn closed_form(setting: &RadiusSetting) -> Result<f64> {
    setting.validate()?;
    Ok(match setting.id {
        RadiusId::Classical | RadiusId::LemmaB => 1.0 / 3.0,
        RadiusId::Derivative => r0_derivative(),
        RadiusId::OddMajorization => 1.0 / 3f64.sqrt(),
        RadiusId::OddDerivative => r0_odd_derivative(),
        RadiusId::ATilde => a_tilde(),
        RadiusId::RA0 => r_a0(setting.param("a0")?),
        RadiusId::SphericalRs => {
            let alpha = setting.param("alpha")?;
            1.0 / (1.0 + 2.0 * (1.0 - alpha * alpha).sqrt())
        }
        RadiusId::ConvexRc => {
            let (r2, delta) = (setting.param("R2")?, setting.param("delta")?);
            r2 / (3.0 * r2 - 2.0 * delta)
        }
        RadiusId::BombieriRadius => setting.param("a0")?,
        RadiusId::Lemma1Ratio => {
            let m = setting.index_param("m", 0)?;
            let horizon = setting.index_param("horizon", DEFAULT_HORIZON)?;
            lemma1_radius(&setting.coeffs, m, horizon)?.radius
        }
    })
}

/// Both evaluation paths for one radius.
pub fn resolve(setting: &RadiusSetting) -> Result<RadiusResult> {
    let closed = closed_form(setting)?;
    let pred = defining_predicate(setting)?;
    let (bisected, iterations) = if pred(BRACKET_HI) {
        // A ratio radius at or above the bracket end (for example a constant
        // ratio of 1) is reported as the bracket end.
        (BRACKET_HI, 0)
    } else {
        bisect_root(pred, 0.0, BRACKET_HI, BISECT_TOL)?
    };
    Ok(RadiusResult {
        setting: setting.clone(),
        closed_form: closed,
        bisected,
        discrepancy: (closed - bisected).abs(),
        iterations,
    })
}

/// Inequality whose family threshold is scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `M_{f_a}(r) <= 1` for the Möbius family.
    Classical,
    /// `M_{xi_a'}(r) <= 1`.
    Derivative,
    /// `M_{g_a'}(r) <= 1`.
    OddDerivative,
    /// `M_{xi_a}(r) <= r`.
    #[serde(rename = "lemma_B")]
    LemmaB,
    /// `M_{g_a}(r) <= r`.
    OddMajorization,
    /// `M_{f_a'}(r) <= 1`.
    IntroMobius,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Classical,
        Target::Derivative,
        Target::OddDerivative,
        Target::LemmaB,
        Target::OddMajorization,
        Target::IntroMobius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Classical => "classical",
            Target::Derivative => "derivative",
            Target::OddDerivative => "odd_derivative",
            Target::LemmaB => "lemma_B",
            Target::OddMajorization => "odd_majorization",
            Target::IntroMobius => "intro_mobius",
        }
    }

    /// The family whose members realize the threshold.
    pub fn family(self, a: f64) -> Family {
        match self {
            Target::Classical | Target::IntroMobius => Family::MobiusFa { a },
            Target::Derivative | Target::LemmaB => Family::XiA { a },
            Target::OddDerivative | Target::OddMajorization => Family::GA { a },
        }
    }

    pub fn family_name(self) -> &'static str {
        self.family(0.0).name()
    }

    fn which(self) -> Which {
        match self {
            Target::Derivative | Target::OddDerivative | Target::IntroMobius => Which::Derivative,
            _ => Which::Function,
        }
    }

    /// Right-hand side of the inequality at radius `r`.
    pub fn bound(self, r: f64) -> f64 {
        match self {
            Target::LemmaB | Target::OddMajorization => r,
            _ => 1.0,
        }
    }

    /// Claimed radius, the limit of the thresholds as `a -> 1-`.
    pub fn limit(self) -> Option<f64> {
        match self {
            Target::Classical | Target::LemmaB => Some(1.0 / 3.0),
            Target::Derivative => Some(r0_derivative()),
            Target::OddDerivative => Some(r0_odd_derivative()),
            Target::OddMajorization => Some(1.0 / 3f64.sqrt()),
            Target::IntroMobius => None,
        }
    }

    /// The limiting inequality as `a -> 1-`, evaluated directly.
    pub fn limit_predicate(self, r: f64) -> Option<bool> {
        let setting = match self {
            Target::Classical | Target::LemmaB => RadiusId::LemmaB,
            Target::Derivative => RadiusId::Derivative,
            Target::OddDerivative => RadiusId::OddDerivative,
            Target::OddMajorization => RadiusId::OddMajorization,
            Target::IntroMobius => return None,
        };
        let pred = defining_predicate(&RadiusSetting::new(setting)).ok()?;
        Some(pred(r))
    }

    /// Threshold in closed form, where one is known.
    pub fn closed_threshold(self, a: f64) -> Option<f64> {
        match self {
            Target::Classical | Target::LemmaB => Some(1.0 / (1.0 + 2.0 * a)),
            Target::OddMajorization => Some(1.0 / (1.0 + 2.0 * a).sqrt()),
            Target::IntroMobius if a > 0.0 => Some(a / (1.0 + (1.0 - a * a).sqrt())),
            _ => None,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Target::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| Error::Unknown { kind: "target", name: s.to_string() })
    }
}

/// Largest `r` at which the family member with parameter `a` satisfies the
/// target inequality, found by bisection on its closed majorant. When the
/// inequality holds on the whole bracket the value 1 is returned.
pub fn family_threshold(a: f64, target: Target) -> Result<f64> {
    let family = target.family(a);
    let m = family.closed_majorant(target.which())?;
    let pred = |r: f64| m.eval(r).map(|v| v <= target.bound(r)).unwrap_or(false);
    if pred(BRACKET_HI) {
        return Ok(1.0);
    }
    Ok(bisect_root(pred, 0.0, BRACKET_HI, BISECT_TOL)?.0)
}

/// Thresholds over a parameter grid next to the claimed limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Infimum {
    pub target: Target,
    pub table: Vec<(f64, f64)>,
    pub min: f64,
    pub argmin: f64,
    pub limit: Option<f64>,
    /// The minimum sits at the largest parameter.
    pub attained_at_largest: bool,
    /// Every threshold lies strictly above the limit.
    pub above_limit: bool,
    /// Thresholds strictly decrease as the parameter grows.
    pub strictly_decreasing: bool,
}

pub fn infimum_over_family(target: Target, grid: &[f64]) -> Result<Infimum> {
    if grid.is_empty() {
        return Err(domain("parameter grid is empty"));
    }
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let table = grid
        .iter()
        .map(|&a| family_threshold(a, target).map(|t| (a, t)))
        .collect::<Result<Vec<_>>>()?;
    let (argmin, min) = table.iter().copied().fold((f64::NAN, f64::INFINITY), |best, (a, t)| {
        if t <= best.1 {
            (a, t)
        } else {
            best
        }
    });
    let limit = target.limit();
    Ok(Infimum {
        target,
        min,
        argmin,
        attained_at_largest: argmin == *grid.last().expect("nonempty"),
        above_limit: limit.is_none_or(|l| table.iter().all(|&(_, t)| t > l)),
        strictly_decreasing: table.windows(2).all(|w| w[1].1 < w[0].1),
        limit,
        table,
    })
}

/// The default sharpness grid `{0, 0.1, ..., 0.9, 0.99, 0.999}`.
pub fn default_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
    g.extend([0.99, 0.999]);
    g
}
