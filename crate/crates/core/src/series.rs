//! Truncated power series on the unit disk.
//!
//! A [`TruncatedSeries`] stores the Taylor coefficients `a_0..=a_N` of an
//! analytic function together with an optional [`TailBound`] that certifies
//! `|a_n| <= c * rho^n` for every `n >= start`. Every arithmetic operation
//! propagates that certificate, so [`majorant_eval`] can return a two-sided
//! enclosure `lower <= M_f(r) <= upper` of the majorant series
//! `M_f(r) = sum |a_n| r^n` rather than a bare truncated sum.
//!
//! A missing tail means the coefficient list is taken as exact. Arithmetic
//! treats it as a zero tail and only attaches a certificate when the result
//! has coefficients beyond the kept order.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Geometric coefficient bound `|a_n| <= c * rho^n` for `n >= start`.
///
/// `rho` may exceed one: such a bound is still usable for `r < 1 / rho`.
/// The derivative of a series bounded only through its supremum ends up
/// with a ratio slightly above one, for instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    pub c: f64,
    pub rho: f64,
    pub start: usize,
}

impl TailBound {
    pub fn new(c: f64, rho: f64, start: usize) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(domain(format!("tail constant must be finite and nonnegative, got {c}")));
        }
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(domain(format!("tail ratio must be finite and nonnegative, got {rho}")));
        }
        if start > i32::MAX as usize {
            return Err(domain("tail start index too large"));
        }
        Ok(TailBound { c, rho, start })
    }

    /// The certificate of a series with no coefficients at or beyond `start`.
    pub fn zero(start: usize) -> Self {
        TailBound { c: 0.0, rho: 0.0, start }
    }

    /// Tail of a function with `sup_{|z|<1} |f(z)| <= sup`: Cauchy's estimate
    /// gives `|a_n| <= sup` for every `n`.
    pub fn bounded_function(sup: f64, start: usize) -> Self {
        TailBound { c: sup, rho: 1.0, start }
    }

    /// Tail of a sequence with `|a_n| <= lead * ratio^(n - lead_index)` for
    /// `n >= lead_index`, covering indices from `start` on.
    pub fn geometric(lead: f64, ratio: f64, lead_index: usize, start: usize) -> Self {
        if lead == 0.0 || (ratio == 0.0 && start > lead_index) {
            return TailBound::zero(start);
        }
        // A larger ratio keeps the bound valid and avoids overflow in c.
        let ratio = ratio.max(1e-50);
        TailBound { c: lead / ratio.powi(lead_index as i32), rho: ratio, start }
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0.0
    }

    /// Whether the bound is usable at radius `r`.
    pub fn covers(&self, r: f64) -> bool {
        self.is_zero() || self.rho * r < 1.0
    }

    /// `c (rho r)^start / (1 - rho r)`, an upper bound for `sum_{n>=start} |a_n| r^n`.
    pub fn bound(&self, r: f64) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let x = self.rho * r;
        if x >= 1.0 {
            return Err(domain(format!(
                "tail bound with ratio {} does not converge at r = {r}",
                self.rho
            )));
        }
        Ok(self.c * x.powi(self.start as i32) / (1.0 - x))
    }

    /// Bound on the coefficients `(n+1) a_{n+1}` of the derivative.
    pub fn differentiated(&self) -> TailBound {
        let start = self.start.max(1) - 1;
        if self.is_zero() {
            return TailBound::zero(start);
        }
        // sup_{m >= start} (m+1) q^m = 1 for this choice of q.
        let q = if start >= 2 { ((start + 1) as f64).powf(-1.0 / start as f64) } else { 0.5 };
        TailBound { c: self.c * self.rho, rho: self.rho / q, start }
    }

    /// Bound at `r`, or infinity where the bound does not converge.
    pub fn bound_or_inf(&self, r: f64) -> f64 {
        self.bound(r).unwrap_or(f64::INFINITY)
    }

    /// Constant of the same bound re-expressed with a ratio `rho >= self.rho`.
    fn constant_at_ratio(&self, rho: f64) -> f64 {
        if self.is_zero() {
            0.0
        } else if rho == self.rho {
            self.c
        } else {
            self.c * (self.rho / rho).powi(self.start as i32)
        }
    }

    /// A single bound dominating both inputs on the union of their ranges.
    fn merge(self, other: TailBound) -> TailBound {
        if self.is_zero() {
            return TailBound { start: self.start.min(other.start), ..other };
        }
        if other.is_zero() {
            return TailBound { start: self.start.min(other.start), ..self };
        }
        let rho = self.rho.max(other.rho);
        TailBound {
            c: self.constant_at_ratio(rho) + other.constant_at_ratio(rho),
            rho,
            start: self.start.min(other.start),
        }
    }
}

fn merge_tails(a: Option<TailBound>, b: Option<TailBound>) -> Option<TailBound> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.merge(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Smallest ratio `rho <= 1` with `|b_n| <= rho^n` over a block of explicit
/// coefficients (block entry `i` is the coefficient of index `first + i`).
fn block_ratio(block: &[Complex64], first: usize) -> f64 {
    block
        .iter()
        .enumerate()
        .filter(|(_, b)| b.norm() > 0.0)
        .map(|(i, b)| b.norm().powf(1.0 / (first + i) as f64))
        .fold(0.0, f64::max)
        .min(1.0)
}

fn block_constant(block: &[Complex64], first: usize, rho: f64) -> f64 {
    block
        .iter()
        .enumerate()
        .filter(|(_, b)| b.norm() > 0.0)
        .map(|(i, b)| b.norm() / rho.powi((first + i) as i32))
        .fold(0.0, f64::max)
}

/// Certificate for a finite block of explicit coefficients.
fn block_tail(block: &[Complex64], first: usize) -> Option<TailBound> {
    let rho = block_ratio(block, first);
    if rho == 0.0 {
        return None;
    }
    Some(TailBound { c: block_constant(block, first, rho), rho, start: first })
}

/// Two-sided enclosure of a majorant value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorantValue {
    pub lower: f64,
    pub upper: f64,
}

impl MajorantValue {
    pub fn exact(value: f64) -> Self {
        MajorantValue { lower: value, upper: value }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Taylor coefficients `a_0..=a_N` plus an optional tail certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesFile", into = "SeriesFile")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    tail: Option<TailBound>,
}

/// On-disk layout: `{"coeffs": [[re, im], ...], "tail": {...} | null}`.
#[derive(Serialize, Deserialize)]
struct SeriesFile {
    coeffs: Vec<[f64; 2]>,
    tail: Option<TailBound>,
}

impl TryFrom<SeriesFile> for TruncatedSeries {
    type Error = Error;

    fn try_from(file: SeriesFile) -> Result<Self> {
        if file.coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Parse("coefficients must be finite".into()));
        }
        let coeffs = file.coeffs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        let tail = match file.tail {
            Some(t) => Some(TailBound::new(t.c, t.rho, t.start)?),
            None => None,
        };
        TruncatedSeries::new(coeffs, tail)
    }
}

impl From<TruncatedSeries> for SeriesFile {
    fn from(s: TruncatedSeries) -> Self {
        SeriesFile { coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(), tail: s.tail }
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>, tail: Option<TailBound>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain("a truncated series needs at least one coefficient"));
        }
        Ok(TruncatedSeries { coeffs, tail })
    }

    /// Exact polynomial with real coefficients, padded or truncated to `order`.
    pub fn from_real(coeffs: &[f64], order: usize) -> Self {
        let c: Vec<_> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::polynomial(&c, order)
    }

    /// Exact polynomial padded or truncated to `order`; truncation moves the
    /// dropped coefficients into the tail.
    pub fn polynomial(coeffs: &[Complex64], order: usize) -> Self {
        let mut c = coeffs.to_vec();
        if c.len() <= order {
            c.resize(order + 1, ZERO);
            TruncatedSeries { coeffs: c, tail: None }
        } else if c.is_empty() {
            Self::zero(order)
        } else {
            TruncatedSeries { coeffs: c, tail: None }.truncate(order)
        }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![ZERO; order + 1], tail: None }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// `coeff * z^power`.
    pub fn monomial(power: usize, coeff: Complex64, order: usize) -> Self {
        let mut c = vec![ZERO; power.max(order) + 1];
        c[power] = coeff;
        Self::polynomial(&c, order)
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, ONE, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`; zero beyond the stored order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn tail(&self) -> Option<&TailBound> {
        self.tail.as_ref()
    }

    pub fn with_tail(mut self, tail: Option<TailBound>) -> Self {
        self.tail = tail;
        self
    }

    /// Replace the tail by `candidate` when it gives the smaller bound at `r`.
    pub fn tightened(mut self, candidate: TailBound, r: f64) -> Self {
        let current = self.tail.map_or(0.0, |t| t.bound_or_inf(r));
        if candidate.bound_or_inf(r) < current {
            self.tail = Some(candidate);
        }
        self
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    fn has_nonzero_tail(&self) -> bool {
        self.tail.is_some_and(|t| !t.is_zero())
    }

    /// Keep orders `0..=order`, folding dropped coefficients into the tail.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        let dropped = &self.coeffs[order + 1..];
        let tail = merge_tails(block_tail(dropped, order + 1), self.tail);
        TruncatedSeries { coeffs: self.coeffs[..=order].to_vec(), tail }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let k = factor.norm();
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            tail: self.tail.map(|t| TailBound { c: t.c * k, ..t }),
        }
    }

    /// Value of the explicit polynomial part at `z` (Horner).
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Value at `z` together with a radius enclosing the true function value.
    pub fn evaluate_enclosure(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let radius = match &self.tail {
            Some(t) => t.bound(z.norm())?,
            None => 0.0,
        };
        Ok((self.evaluate(z), radius))
    }

    /// `sum_{n<=N} |a_n| s^n` for any `s >= 0`, ignoring the tail.
    pub fn explicit_majorant(&self, s: f64) -> f64 {
        let mut power = 1.0;
        let mut sum = 0.0;
        for c in &self.coeffs {
            sum += c.norm() * power;
            power *= s;
        }
        sum
    }

    /// Upper majorant at any radius where the tail converges, `inf` elsewhere.
    fn upper_majorant(&self, s: f64) -> f64 {
        self.explicit_majorant(s) + self.tail.map_or(0.0, |t| t.bound_or_inf(s))
    }

    /// Smallest `gamma <= 1` with `|a_n| <= |a|_max * gamma^n`-style control used
    /// to keep auxiliary evaluation radii below `1 / gamma`.
    fn coefficient_ratio(&self) -> f64 {
        if self.coeffs.len() < 2 {
            return 0.0;
        }
        block_ratio(&self.coeffs[1..], 1)
    }

    fn tail_ratio(&self) -> f64 {
        self.tail.filter(|t| !t.is_zero()).map_or(0.0, |t| t.rho)
    }

    pub fn majorant(&self, r: f64) -> Result<MajorantValue> {
        majorant_eval(self, r)
    }

    pub fn derivative(&self) -> Self {
        derivative(self)
    }

    pub fn odd_part(&self) -> Self {
        odd_part(self)
    }

    pub fn even_part(&self) -> Self {
        even_part(self)
    }
}

/// Enclosure of `M_f(r)`: the truncated sum (ascending index order) and the
/// truncated sum plus the tail bound.
pub fn majorant_eval(f: &TruncatedSeries, r: f64) -> Result<MajorantValue> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("majorant radius must lie in [0, 1), got {r}")));
    }
    let lower = f.explicit_majorant(r);
    let tail = match &f.tail {
        Some(t) => t.bound(r)?,
        None => 0.0,
    };
    Ok(MajorantValue { lower, upper: lower + tail })
}

pub fn add(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    let n = f.order().min(g.order());
    let (f, g) = (f.truncate(n), g.truncate(n));
    TruncatedSeries {
        coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a + b).collect(),
        tail: merge_tails(f.tail, g.tail),
    }
}

pub fn sub(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    add(f, &g.scale(-ONE))
}

/// Cauchy product of two coefficient slices, kept up to index `max_index`.
fn convolve(a: &[Complex64], b: &[Complex64], max_index: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; max_index + 1];
    for (i, x) in a.iter().enumerate().take(max_index + 1) {
        if *x == ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(max_index + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn safety_factor(order: usize) -> f64 {
    1.0 + 1.0 / ((order + 1) as f64).sqrt()
}

pub fn mul(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    let n = f.order().min(g.order());
    let (f, g) = (f.truncate(n), g.truncate(n));
    let full = convolve(&f.coeffs, &g.coeffs, 2 * n);
    let coeffs = full[..=n].to_vec();
    let block = &full[n + 1..];

    let rho_tails = f.tail_ratio().max(g.tail_ratio());
    let rho_block = block_ratio(block, n + 1);
    if rho_tails == 0.0 && rho_block == 0.0 {
        let tail = merge_tails(f.tail, g.tail).map(|_| TailBound::zero(n + 1));
        return TruncatedSeries { coeffs, tail };
    }
    // Coefficients past n come from the explicit block plus the cross terms
    // F*Tg + Tf*G + Tf*Tg, bounded on |z| = s through their majorants.
    let rho = (rho_tails * safety_factor(n))
        .max(rho_block)
        .max(f.coefficient_ratio())
        .max(g.coefficient_ratio());
    let s = 1.0 / rho;
    let tf = f.tail.map_or(0.0, |t| t.bound_or_inf(s));
    let tg = g.tail.map_or(0.0, |t| t.bound_or_inf(s));
    let mut cross = 0.0;
    if tg > 0.0 {
        cross += f.explicit_majorant(s) * tg;
    }
    if tf > 0.0 {
        cross += tf * g.explicit_majorant(s);
    }
    if tf > 0.0 && tg > 0.0 {
        cross += tf * tg;
    }
    let c = cross + block_constant(block, n + 1, rho);
    TruncatedSeries { coeffs, tail: Some(TailBound { c, rho, start: n + 1 }) }
}

/// Largest `s` in `(0, cap]` with `feasible(s)`, assuming feasibility is
/// monotone and holds near zero.
fn largest_feasible(cap: f64, feasible: impl Fn(f64) -> bool) -> f64 {
    if feasible(cap) {
        return cap;
    }
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn radius_cap(ratios: &[f64], order: usize) -> f64 {
    let q = 1.0 / safety_factor(order);
    ratios
        .iter()
        .filter(|&&r| r > 0.0)
        .map(|r| q / r)
        .fold(1e6, f64::min)
}

/// Quotient `f / g`; requires `g(0) != 0`.
pub fn div(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let g0 = g.coeff(0);
    if g0 == ZERO {
        return Err(Error::Precondition("divisor must have a nonzero constant term".into()));
    }
    let n = f.order().min(g.order());
    let (f, g) = (f.truncate(n), g.truncate(n));
    let mut q = vec![ZERO; n + 1];
    for k in 0..=n {
        let mut acc = f.coeffs[k];
        for j in 1..=k {
            acc -= g.coeffs[j] * q[k - j];
        }
        q[k] = acc / g0;
    }
    let exact = !f.has_nonzero_tail() && !g.has_nonzero_tail() && g.degree() == Some(0);
    if exact {
        let tail = merge_tails(f.tail, g.tail).map(|_| TailBound::zero(n + 1));
        return Ok(TruncatedSeries { coeffs: q, tail });
    }
    // On |z| <= s we keep |g| >= |g0| (1 - keep), so
    // |(f/g)_n| <= M_f(s) / (|g0| (1 - keep) s^n).
    let g0_abs = g0.norm();
    let keep = 1.0 / safety_factor(n);
    let cap = radius_cap(
        &[f.tail_ratio(), g.tail_ratio(), f.coefficient_ratio(), g.coefficient_ratio()],
        n,
    );
    let s = largest_feasible(cap, |s| g.upper_majorant(s) - g0_abs <= keep * g0_abs);
    let floor = g0_abs - (g.upper_majorant(s) - g0_abs);
    let c = f.upper_majorant(s) / floor;
    Ok(TruncatedSeries { coeffs: q, tail: Some(TailBound { c, rho: 1.0 / s, start: n + 1 }) })
}

/// `f(phi(z))`; requires `phi(0) = 0`. Inputs are first truncated to their
/// common order, which is also the order of the result.
pub fn compose(f: &TruncatedSeries, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    if phi.coeff(0) != ZERO {
        return Err(Error::Precondition(
            "inner series of a composition must vanish at the origin".into(),
        ));
    }
    let n = f.order().min(phi.order());
    let (f, phi) = (f.truncate(n), phi.truncate(n));
    let deg_f = f.degree().unwrap_or(0);
    let deg_phi = phi.degree().unwrap_or(0);

    let coeffs = if phi.coeffs.iter().filter(|c| **c != ZERO).count() == 1 {
        // phi = c z^k: reindex.
        let c = phi.coeffs[deg_phi];
        let mut out = vec![ZERO; n + 1];
        let mut power = ONE;
        for j in 0..=deg_f {
            if j * deg_phi > n {
                break;
            }
            out[j * deg_phi] += f.coeffs[j] * power;
            power *= c;
        }
        out
    } else {
        let mut acc = vec![ZERO; n + 1];
        acc[0] = f.coeffs[deg_f];
        for k in (0..deg_f).rev() {
            acc = convolve(&acc, &phi.coeffs, n);
            acc[0] += f.coeffs[k];
        }
        acc
    };

    let exact = !f.has_nonzero_tail() && !phi.has_nonzero_tail() && deg_f * deg_phi <= n;
    if exact {
        let tail = merge_tails(f.tail, phi.tail).map(|_| TailBound::zero(n + 1));
        return Ok(TruncatedSeries { coeffs, tail });
    }
    // M_{f o phi}(s) <= M_f(M_phi(s)); pick s so both majorants converge.
    let q = 1.0 / safety_factor(n);
    let rho_f = f.tail_ratio();
    let gamma_f = f.coefficient_ratio();
    let outer_cap = [rho_f / q, gamma_f]
        .iter()
        .filter(|&&r| r > 0.0)
        .map(|r| 1.0 / r)
        .fold(f64::INFINITY, f64::min);
    let cap = radius_cap(&[phi.tail_ratio(), phi.coefficient_ratio()], n);
    let s = largest_feasible(cap, |s| phi.upper_majorant(s) <= outer_cap);
    let c = f.upper_majorant(phi.upper_majorant(s));
    Ok(TruncatedSeries { coeffs, tail: Some(TailBound { c, rho: 1.0 / s, start: n + 1 }) })
}

/// Term-by-term derivative; the result has order `N - 1` (order 0 stays 0).
///
/// The tail ratio grows by the factor `(S+1)^(1/S)` (S the new tail start) so
/// that the constant absorbs the linear factor `n` without changing.
pub fn derivative(f: &TruncatedSeries) -> TruncatedSeries {
    let coeffs: Vec<_> = if f.order() == 0 {
        vec![ZERO]
    } else {
        f.coeffs.iter().enumerate().skip(1).map(|(n, c)| c * n as f64).collect()
    };
    TruncatedSeries { coeffs, tail: f.tail.map(|t| t.differentiated()) }
}

fn parity_filter(f: &TruncatedSeries, keep_odd: bool) -> TruncatedSeries {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| if (n % 2 == 1) == keep_odd { *c } else { ZERO })
        .collect();
    TruncatedSeries { coeffs, tail: f.tail }
}

/// `(f(z) - f(-z)) / 2`.
pub fn odd_part(f: &TruncatedSeries) -> TruncatedSeries {
    parity_filter(f, true)
}

/// `(f(z) + f(-z)) / 2`.
pub fn even_part(f: &TruncatedSeries) -> TruncatedSeries {
    parity_filter(f, false)
}

/// `f(z) / z`; requires `f(0) = 0`.
pub fn shift_div_z(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.coeff(0) != ZERO {
        return Err(Error::Precondition("f(z)/z needs a vanishing constant term".into()));
    }
    let coeffs = if f.order() == 0 { vec![ZERO] } else { f.coeffs[1..].to_vec() };
    let tail = f.tail.map(|t| TailBound { c: t.c * t.rho, rho: t.rho, start: t.start.max(1) - 1 });
    Ok(TruncatedSeries { coeffs, tail })
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(-ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: &TruncatedSeries, b: &[Complex64], tol: f64) -> bool {
        (0..=a.order().max(b.len().saturating_sub(1)))
            .all(|n| (a.coeff(n) - b.get(n).copied().unwrap_or(ZERO)).norm() <= tol)
    }

    fn xi(a: f64, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[1] = c(-a);
        for n in 2..=order {
            coeffs[n] = c((1.0 - a * a) * a.powi(n as i32 - 2));
        }
        TruncatedSeries::new(coeffs, Some(TailBound::geometric(1.0 - a * a, a, 2, order + 1)))
            .unwrap()
    }

    #[test]
    fn zero_series_majorant() {
        let m = majorant_eval(&TruncatedSeries::zero(10), 0.5).unwrap();
        assert_eq!((m.lower, m.upper), (0.0, 0.0));
    }

    #[test]
    fn majorant_rejects_radius_outside_disk() {
        let f = TruncatedSeries::identity(4);
        assert!(matches!(majorant_eval(&f, 1.0), Err(Error::Domain(_))));
        assert!(matches!(majorant_eval(&f, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn majorant_rejects_divergent_tail() {
        let f = TruncatedSeries::identity(4).with_tail(Some(TailBound::new(1.0, 2.0, 5).unwrap()));
        assert!(majorant_eval(&f, 0.4).is_ok());
        assert!(matches!(majorant_eval(&f, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn xi_half_attains_identity_majorant_at_half() {
        // M_xi(r) = a r + (1 - a^2) r^2 / (1 - a r) = r at r = 1/(1+2a).
        let m = majorant_eval(&xi(0.5, 256), 0.5).unwrap();
        assert!((m.upper - 0.5).abs() < 1e-12, "{m:?}");
        assert!(m.lower <= 0.5 && m.upper >= 0.5 - 1e-15);
    }

    #[test]
    fn add_examples() {
        let f = TruncatedSeries::from_real(&[1.0, -2.0], 1);
        let g = TruncatedSeries::from_real(&[0.0, 3.0], 1);
        let h = &f + &g;
        assert!(close(&h, &[c(1.0), c(1.0)], 0.0));
        let mh = h.majorant(0.5).unwrap().lower;
        assert_eq!(mh, 1.5);
        assert!(mh <= f.majorant(0.5).unwrap().lower + g.majorant(0.5).unwrap().lower);
        assert!(close(&(&f + &(-&f)), &[ZERO, ZERO], 0.0));
        assert_eq!(&f + &TruncatedSeries::zero(1), f);
    }

    #[test]
    fn add_truncates_to_common_order_and_keeps_dropped_mass() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0, 1.0, 1.0], 3);
        let g = TruncatedSeries::from_real(&[1.0], 0);
        let h = &f + &g;
        assert_eq!(h.order(), 0);
        let m = h.majorant(0.5).unwrap();
        assert_eq!(m.lower, 2.0);
        assert!(m.upper >= 2.0 + 0.5 + 0.25 + 0.125);
    }

    #[test]
    fn mul_examples() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0], 4);
        let one = TruncatedSeries::constant(ONE, 4);
        assert_eq!((&f * &one).coeffs(), f.coeffs());
        let z = TruncatedSeries::identity(4);
        assert!(close(&(&z * &z), &[ZERO, ZERO, ONE], 0.0));
        assert!(close(&(&f * &z), &[ZERO, ONE, ONE], 0.0));
    }

    #[test]
    fn mul_tail_covers_true_product() {
        // (1/(1-0.5z))^2 = sum (n+1) 0.5^n z^n.
        let order = 20;
        let geo = TruncatedSeries::new(
            (0..=order).map(|n| c(0.5f64.powi(n as i32))).collect(),
            Some(TailBound::geometric(1.0, 0.5, 0, order + 1)),
        )
        .unwrap();
        let sq = &geo * &geo;
        for r in [0.1f64, 0.5, 0.9, 0.99] {
            let exact = 1.0 / (1.0 - 0.5 * r).powi(2);
            let m = sq.majorant(r).unwrap();
            assert!(m.lower <= exact + 1e-12 && exact <= m.upper + 1e-12, "r={r} {m:?}");
        }
    }

    #[test]
    fn compose_examples() {
        let f = TruncatedSeries::from_real(&[0.3, -1.0, 2.0, 0.5], 8);
        let z = TruncatedSeries::identity(8);
        assert!(close(&compose(&f, &z).unwrap(), f.coeffs(), 1e-15));

        let z2 = TruncatedSeries::monomial(2, ONE, 8);
        let z4 = compose(&z2, &z2).unwrap();
        assert!(close(&z4, &[ZERO, ZERO, ZERO, ZERO, ONE], 0.0));

        let alpha = 0.1;
        let sq = TruncatedSeries::from_real(&[alpha * alpha, -2.0 * alpha, 1.0], 8);
        let g = compose(&sq, &z2).unwrap();
        assert!(close(&g, &[c(0.01), ZERO, c(-0.2), ZERO, ONE], 1e-15));
        assert!(g.tail().is_none());
    }

    #[test]
    fn compose_requires_vanishing_inner_constant() {
        let f = TruncatedSeries::identity(3);
        let phi = TruncatedSeries::from_real(&[0.1, 1.0], 3);
        assert!(matches!(compose(&f, &phi), Err(Error::Precondition(_))));
    }

    #[test]
    fn compose_tail_covers_true_coefficients() {
        // 1/(1-u) composed with u = z/2 at low order.
        let order = 6;
        let geo = TruncatedSeries::new(
            vec![ONE; order + 1],
            Some(TailBound::geometric(1.0, 0.25, 0, order + 1)),
        )
        .unwrap();
        let half = TruncatedSeries::monomial(1, c(0.5), order);
        let h = compose(&geo, &half).unwrap();
        for r in [0.2f64, 0.6] {
            let exact: f64 = (0..2000).map(|n| 0.5f64.powi(n) * r.powi(n)).sum();
            let m = h.majorant(r).unwrap();
            assert!(m.upper >= exact - 1e-12, "{m:?} vs {exact}");
        }
    }

    #[test]
    fn div_inverts_mul() {
        let order = 30;
        let f = xi(0.4, order);
        let g = TruncatedSeries::from_real(&[1.0, -0.3], order);
        let q = div(&mul(&f, &g), &g).unwrap();
        assert!(close(&q, f.coeffs(), 1e-14));
        assert!(matches!(div(&f, &f), Err(Error::Precondition(_))));
    }

    #[test]
    fn div_tail_covers_true_quotient() {
        // 1 / (1 - 0.6 z) has coefficients 0.6^n.
        let order = 10;
        let one = TruncatedSeries::constant(ONE, order);
        let den = TruncatedSeries::from_real(&[1.0, -0.6], order);
        let q = div(&one, &den).unwrap();
        for r in [0.3, 0.9] {
            let exact = 1.0 / (1.0 - 0.6 * r);
            let m = q.majorant(r).unwrap();
            assert!(m.lower <= exact && exact <= m.upper, "{m:?} {exact}");
        }
    }

    #[test]
    fn derivative_examples() {
        let k = TruncatedSeries::constant(c(3.0), 5);
        assert!(derivative(&k).coeffs().iter().all(|c| *c == ZERO));

        let g = TruncatedSeries::from_real(&[0.0, 1.0, 1.0], 2);
        let dg = derivative(&g);
        assert!(close(&dg, &[ONE, c(2.0)], 0.0));
        for r in [0.1, 0.5, 0.9] {
            assert!(dg.majorant(r).unwrap().lower > 1.0);
        }
    }

    #[test]
    fn derivative_of_xi_matches_closed_majorant() {
        let a: f64 = 0.5;
        let d = derivative(&xi(a, 256));
        for r in [0.1, 0.2, 0.5, 0.8] {
            let closed = a + (1.0 - a * a) * (r / (1.0 - a * r) + r / (1.0 - a * r).powi(2));
            let m = d.majorant(r).unwrap();
            assert!(m.lower <= closed * (1.0 + 1e-12) && closed <= m.upper * (1.0 + 1e-12));
            assert!((m.lower - closed).abs() <= 1e-9 * closed, "r={r}");
        }
    }

    #[test]
    fn derivative_tail_dominates_scaled_coefficients() {
        // (m+1) rho^(m+1) <= c' rho'^m for m >= start after differentiation.
        for start in [1usize, 2, 3, 10, 257] {
            let t = TailBound::new(1.0, 0.9, start).unwrap();
            let f = TruncatedSeries::zero(start.saturating_sub(1)).with_tail(Some(t));
            let d = *derivative(&f).tail().unwrap();
            for m in d.start..d.start + 2000 {
                let lhs = (m + 1) as f64 * 0.9f64.powi(m as i32 + 1);
                let rhs = d.c * d.rho.powi(m as i32);
                assert!(lhs <= rhs * (1.0 + 1e-12), "start {start} m {m}");
            }
        }
    }

    #[test]
    fn parity_split() {
        let z2 = TruncatedSeries::monomial(2, ONE, 4);
        assert!(odd_part(&z2).coeffs().iter().all(|c| *c == ZERO));
        let p = TruncatedSeries::from_real(&[1.0, 1.0, 1.0], 2);
        assert!(close(&even_part(&p), &[ONE, ZERO, ONE], 0.0));
    }

    #[test]
    fn shift_div_z_examples() {
        let z = TruncatedSeries::identity(3);
        assert!(close(&shift_div_z(&z).unwrap(), &[ONE], 0.0));
        let p = TruncatedSeries::from_real(&[0.0, 0.0, 1.0, 2.0], 3);
        assert!(close(&shift_div_z(&p).unwrap(), &[ZERO, ONE, c(2.0)], 0.0));
        let q = TruncatedSeries::from_real(&[1.0, 1.0], 3);
        assert!(matches!(shift_div_z(&q), Err(Error::Precondition(_))));
    }

    #[test]
    fn truncate_folds_dropped_coefficients_into_tail() {
        let f = TruncatedSeries::from_real(&[1.0, 0.5, 0.25, 0.125], 3);
        let t = f.truncate(1);
        let m = t.majorant(0.9).unwrap();
        let full = f.majorant(0.9).unwrap().lower;
        assert!(m.upper >= full);
        assert_eq!(m.lower, 1.0 + 0.45);
    }

    #[test]
    fn file_format_round_trips() {
        let f = xi(0.3, 12);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.starts_with("{\"coeffs\":[["));
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn file_format_rejects_bad_documents() {
        assert!(serde_json::from_str::<TruncatedSeries>(r#"{"coeffs": [], "tail": null}"#).is_err());
        assert!(serde_json::from_str::<TruncatedSeries>(
            r#"{"coeffs": [[1, 0]], "tail": {"c": -1, "rho": 0.5, "start": 1}}"#
        )
        .is_err());
        let ok: TruncatedSeries =
            serde_json::from_str(r#"{"coeffs": [[1, 0], [0.5, 0]], "tail": null}"#).unwrap();
        assert_eq!(ok.order(), 1);
    }
}
