//! Extremal function families on the unit disk and random Schwarz witnesses.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::series::{self, TailBound, TruncatedSeries};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest modulus allowed for a Blaschke zero.
pub const MAX_ZERO_MODULUS: f64 = 0.9;
/// Largest number of Blaschke factors in a sampled witness.
pub const MAX_WITNESS_DEGREE: usize = 6;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(p + q u) / (1 + s u)` as a function of `u`.
///
/// Covers disk automorphisms, the Koebe-type maps `B z / (1 - A z)` and the
/// Möbius family. The Taylor coefficients are `p` followed by
/// `(q - p s) (-s)^(n-1)`, so the tail is exactly geometric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFractional {
    pub p: Complex64,
    pub q: Complex64,
    pub s: Complex64,
}

impl LinearFractional {
    /// `(u + c) / (1 + conj(c) u)`, an automorphism of the disk for `|c| < 1`.
    pub fn automorphism(c: Complex64) -> Self {
        LinearFractional { p: c, q: ONE, s: c.conj() }
    }

    /// `(u - c) / (1 - conj(c) u)`, the Blaschke factor vanishing at `c`.
    pub fn blaschke_factor(c: Complex64) -> Self {
        Self::automorphism(-c)
    }

    fn is_automorphism(&self) -> bool {
        self.q == ONE && self.s == self.p.conj() && self.p.norm() < 1.0
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        if n == 0 {
            self.p
        } else {
            (self.q - self.p * self.s) * (-self.s).powu(n as u32 - 1)
        }
    }

    pub fn generate(&self, order: usize) -> TruncatedSeries {
        let coeffs: Vec<_> = (0..=order).map(|n| self.coefficient(n)).collect();
        let lead = (self.q - self.p * self.s).norm();
        let tail = TailBound::geometric(lead, self.s.norm(), 1, order + 1);
        TruncatedSeries::new(coeffs, Some(tail)).expect("order + 1 coefficients")
    }

    /// `sup_{|u| < 1} |value|`, valid for `|s| < 1`.
    pub fn sup_bound(&self) -> f64 {
        if self.is_automorphism() {
            1.0
        } else {
            (self.p.norm() + self.q.norm()) / (1.0 - self.s.norm())
        }
    }

    /// The series of `u -> self(w(u))` by one division, O(N^2). A rotation
    /// `w = c u` keeps the exact geometric tail.
    pub fn compose_with(&self, w: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = w.order();
        if w.tail().is_none_or(|t| t.is_zero()) && w.degree() == Some(1) && w.coeff(0) == ZERO {
            let c = w.coeff(1);
            return Ok(LinearFractional { p: self.p, q: self.q * c, s: self.s * c }.generate(n));
        }
        let num = &TruncatedSeries::constant(self.p, n) + &w.scale(self.q);
        let den = &TruncatedSeries::constant(ONE, n) + &w.scale(self.s);
        series::div(&num, &den)
    }
}

/// A named extremal family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Family {
    /// `(z + a) / (1 + a z)`.
    #[serde(rename = "mobius_fa")]
    MobiusFa { a: f64 },
    /// `z (z - a) / (1 - a z)`.
    #[serde(rename = "xi_a")]
    XiA { a: f64 },
    /// `xi_a(z^2) / z`.
    #[serde(rename = "g_a")]
    GA { a: f64 },
    /// `alpha z / (1 - sqrt(1 - alpha^2) z)`.
    #[serde(rename = "k_alpha")]
    KAlpha { alpha: f64 },
    /// `z / (1 - a z)`.
    #[serde(rename = "k_a_convex")]
    KAConvex { a: f64 },
    /// `z prod (z - z_k) / (1 - conj(z_k) z)`.
    #[serde(rename = "blaschke_witness")]
    BlaschkeWitness { zeros: Vec<Complex64> },
    /// `(z - alpha1)^2`.
    #[serde(rename = "intro_square")]
    IntroSquare { alpha1: f64 },
    /// `z (z + 1)`.
    #[serde(rename = "remark_product")]
    RemarkProduct,
}

/// Which majorant a [`ClosedMajorant`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Function,
    Derivative,
}

/// Closed-form majorant `r -> M(r)` of a family member or its derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedMajorant {
    family: Family,
    which: Which,
    /// Half-open interval `[lo, hi)` of radii where the formula applies.
    pub valid_for: (f64, f64),
}

impl ClosedMajorant {
    pub fn eval(&self, r: f64) -> Result<f64> {
        let (lo, hi) = self.valid_for;
        if !(lo..hi).contains(&r) {
            return Err(domain(format!("closed majorant evaluated at r = {r} outside [{lo}, {hi})")));
        }
        let d = self.which == Which::Derivative;
        Ok(match self.family {
            Family::XiA { a } if d => {
                a + (1.0 - a * a) * r * (2.0 - a * r) / (1.0 - a * r).powi(2)
            }
            Family::XiA { a } => a * r + (1.0 - a * a) * r * r / (1.0 - a * r),
            Family::GA { a } if d => {
                let x = r * r;
                a + (1.0 - a * a) * x * (3.0 - a * x) / (1.0 - a * x).powi(2)
            }
            Family::GA { a } => a * r + (1.0 - a * a) * r.powi(3) / (1.0 - a * r * r),
            Family::MobiusFa { a } if d => (1.0 - a * a) / (1.0 - a * r).powi(2),
            Family::MobiusFa { a } => a + (1.0 - a * a) * r / (1.0 - a * r),
            Family::KAlpha { alpha } => {
                let beta = (1.0 - alpha * alpha).sqrt();
                if d {
                    alpha / (1.0 - beta * r).powi(2)
                } else {
                    alpha * r / (1.0 - beta * r)
                }
            }
            Family::KAConvex { a } if d => 1.0 / (1.0 - a * r).powi(2),
            Family::KAConvex { a } => r / (1.0 - a * r),
            Family::IntroSquare { alpha1 } if d => 2.0 * alpha1 + 2.0 * r,
            Family::IntroSquare { alpha1 } => (alpha1 + r).powi(2),
            Family::RemarkProduct if d => 1.0 + 2.0 * r,
            Family::RemarkProduct => r + r * r,
            Family::BlaschkeWitness { .. } => unreachable!("rejected at construction"),
        })
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("requires 0 <= {name} < 1, got {x}")))
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::MobiusFa { .. } => "mobius_fa",
            Family::XiA { .. } => "xi_a",
            Family::GA { .. } => "g_a",
            Family::KAlpha { .. } => "k_alpha",
            Family::KAConvex { .. } => "k_a_convex",
            Family::BlaschkeWitness { .. } => "blaschke_witness",
            Family::IntroSquare { .. } => "intro_square",
            Family::RemarkProduct => "remark_product",
        }
    }

    /// Build a family from its name and `key=value` parameters. A Blaschke
    /// witness takes `seed` and `degree` and samples its zeros.
    pub fn from_params(kind: &str, params: &BTreeMap<String, f64>) -> Result<Family> {
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| Error::Parse(format!("family `{kind}` needs parameter `{key}`")))
        };
        let family = match kind {
            "mobius_fa" => Family::MobiusFa { a: get("a")? },
            "xi_a" => Family::XiA { a: get("a")? },
            "g_a" => Family::GA { a: get("a")? },
            "k_alpha" => Family::KAlpha { alpha: get("alpha")? },
            "k_a_convex" | "k_a" => Family::KAConvex { a: get("a")? },
            "intro_square" => Family::IntroSquare { alpha1: get("alpha1")? },
            "remark_product" => Family::RemarkProduct,
            "blaschke_witness" => {
                let seed = params.get("seed").copied().unwrap_or(42.0);
                let degree = params.get("degree").copied().unwrap_or(3.0);
                if seed < 0.0 || seed.fract() != 0.0 || degree < 0.0 || degree.fract() != 0.0 {
                    return Err(domain("seed and degree must be nonnegative integers"));
                }
                let degree = degree as usize;
                if degree > MAX_WITNESS_DEGREE {
                    return Err(domain(format!("witness degree must be at most {MAX_WITNESS_DEGREE}")));
                }
                Family::BlaschkeWitness { zeros: sample_zeros(seed as u64, degree) }
            }
            other => return Err(Error::Unknown { kind: "family", name: other.to_string() }),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Family::MobiusFa { a } | Family::XiA { a } | Family::GA { a } | Family::KAConvex { a } => {
                check_unit("a", *a)
            }
            Family::KAlpha { alpha } => {
                if *alpha > 0.0 && *alpha <= 1.0 {
                    Ok(())
                } else {
                    Err(domain(format!("requires 0 < alpha <= 1, got {alpha}")))
                }
            }
            Family::IntroSquare { alpha1 } => {
                if *alpha1 > 0.0 && *alpha1 < 1.0 {
                    Ok(())
                } else {
                    Err(domain(format!("requires 0 < alpha1 < 1, got {alpha1}")))
                }
            }
            Family::BlaschkeWitness { zeros } => {
                if zeros.iter().any(|z| !z.is_finite() || z.norm() > MAX_ZERO_MODULUS) {
                    Err(domain(format!("Blaschke zeros must have modulus <= {MAX_ZERO_MODULUS}")))
                } else {
                    Ok(())
                }
            }
            Family::RemarkProduct => Ok(()),
        }
    }

    fn beta(alpha: f64) -> f64 {
        (1.0 - alpha * alpha).sqrt()
    }

    /// Taylor expansion to `order` with an exact geometric tail where the
    /// coefficients are known in closed form.
    pub fn generate(&self, order: usize) -> Result<TruncatedSeries> {
        self.validate()?;
        let len = order.max(3) + 1;
        let mut c = vec![ZERO; len];
        let tail = match *self {
            Family::MobiusFa { a } => {
                return Ok(LinearFractional { p: real(a), q: ONE, s: real(a) }.generate(order));
            }
            Family::XiA { a } => {
                c[1] = real(-a);
                for (n, cn) in c.iter_mut().enumerate().skip(2) {
                    *cn = real((1.0 - a * a) * a.powi(n as i32 - 2));
                }
                Some(TailBound::geometric(1.0 - a * a, a, 2, len))
            }
            Family::GA { a } => {
                c[1] = real(-a);
                for m in (3..len).step_by(2) {
                    c[m] = real((1.0 - a * a) * a.powi((m as i32 - 3) / 2));
                }
                Some(TailBound::geometric(1.0 - a * a, a.sqrt(), 3, len))
            }
            Family::KAlpha { alpha } => {
                let beta = Self::beta(alpha);
                return Ok(LinearFractional { p: ZERO, q: real(alpha), s: real(-beta) }.generate(order));
            }
            Family::KAConvex { a } => {
                return Ok(LinearFractional { p: ZERO, q: ONE, s: real(-a) }.generate(order));
            }
            Family::IntroSquare { alpha1 } => {
                return Ok(TruncatedSeries::from_real(&[alpha1 * alpha1, -2.0 * alpha1, 1.0], order));
            }
            Family::RemarkProduct => {
                return Ok(TruncatedSeries::from_real(&[0.0, 1.0, 1.0], order));
            }
            Family::BlaschkeWitness { ref zeros } => return Ok(blaschke_expansion(zeros, order)),
        };
        Ok(TruncatedSeries::new(c, tail)?.truncate(order))
    }

    pub fn closed_majorant(&self, which: Which) -> Result<ClosedMajorant> {
        self.validate()?;
        if let Family::BlaschkeWitness { .. } = self {
            return Err(Error::Unsupported(
                "Blaschke witnesses have no closed-form majorant".into(),
            ));
        }
        Ok(ClosedMajorant { family: self.clone(), which, valid_for: (0.0, 1.0) })
    }

    /// An upper bound for `sup_{|z| < 1} |f(z)|`.
    pub fn sup_bound(&self) -> f64 {
        match *self {
            Family::MobiusFa { .. }
            | Family::XiA { .. }
            | Family::GA { .. }
            | Family::BlaschkeWitness { .. } => 1.0,
            Family::KAlpha { alpha } => alpha / (1.0 - Self::beta(alpha)),
            Family::KAConvex { a } => 1.0 / (1.0 - a),
            Family::IntroSquare { alpha1 } => (1.0 + alpha1).powi(2),
            Family::RemarkProduct => 2.0,
        }
    }

    /// Series of `f(w(z))` computed through the family's rational form,
    /// avoiding the cubic cost of generic composition. Requires `w(0) = 0`.
    pub fn compose_with(&self, w: &TruncatedSeries) -> Result<TruncatedSeries> {
        if w.coeff(0) != ZERO {
            return Err(Error::Precondition(
                "inner series of a composition must vanish at the origin".into(),
            ));
        }
        self.validate()?;
        let n = w.order();
        Ok(match *self {
            Family::MobiusFa { a } => LinearFractional::automorphism(real(a)).compose_with(w)?,
            Family::XiA { a } => {
                let factor = LinearFractional::blaschke_factor(real(a)).compose_with(w)?;
                w * &factor
            }
            Family::GA { a } => {
                let w2 = w * w;
                let factor = LinearFractional::blaschke_factor(real(a)).compose_with(&w2)?;
                w * &factor
            }
            Family::KAlpha { alpha } => {
                LinearFractional { p: ZERO, q: real(alpha), s: real(-Self::beta(alpha)) }
                    .compose_with(w)?
            }
            Family::KAConvex { a } => {
                LinearFractional { p: ZERO, q: ONE, s: real(-a) }.compose_with(w)?
            }
            Family::IntroSquare { alpha1 } => {
                let shifted = w - &TruncatedSeries::constant(real(alpha1), n);
                &shifted * &shifted
            }
            Family::RemarkProduct => w + &(w * w),
            Family::BlaschkeWitness { ref zeros } => {
                let mut acc = w.clone();
                for z in zeros {
                    acc = &acc * &LinearFractional::blaschke_factor(*z).compose_with(w)?;
                }
                acc
            }
        })
    }
}

fn sample_zeros(seed: u64, degree: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..degree)
        .map(|_| {
            let modulus = MAX_ZERO_MODULUS * rng.gen::<f64>().sqrt();
            let angle = 2.0 * PI * rng.gen::<f64>();
            Complex64::from_polar(modulus, angle)
        })
        .collect()
}

/// `z prod (z - z_k)/(1 - conj(z_k) z)` expanded by series multiplication of
/// the factor expansions. The tail is the Cauchy bound `|w_n| <= 1`.
pub fn blaschke_expansion(zeros: &[Complex64], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::identity(order);
    for z in zeros {
        acc = &acc * &LinearFractional::blaschke_factor(*z).generate(order);
    }
    acc.with_tail(Some(TailBound::bounded_function(1.0, order + 1)))
}

/// A Schwarz function `w` (analytic self-map with `w(0) = 0`): a Blaschke
/// product with one zero at the origin and `degree` zeros drawn from `seed`.
pub fn sample_schwarz(seed: u64, degree: usize, order: usize) -> Result<TruncatedSeries> {
    if degree > MAX_WITNESS_DEGREE {
        return Err(domain(format!("witness degree must be at most {MAX_WITNESS_DEGREE}")));
    }
    Ok(blaschke_expansion(&sample_zeros(seed, degree), order))
}

/// Zeros used by [`sample_schwarz`] for the same seed and degree.
pub fn schwarz_zeros(seed: u64, degree: usize) -> Vec<Complex64> {
    sample_zeros(seed, degree)
}

/// Wiener's estimate `|w_n| <= 1 - |w_1|^2` for `2 <= n <= N`, with slack `tol`.
pub fn wiener_holds(w: &TruncatedSeries, tol: f64) -> bool {
    let bound = 1.0 - w.coeff(1).norm_sqr();
    w.coeffs().iter().skip(2).all(|c| c.norm() <= bound + tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::majorant_eval;

    fn grid(n: usize) -> impl Iterator<Item = f64> {
        (1..n).map(move |i| i as f64 / n as f64)
    }

    fn brute_xi(a: f64, order: usize) -> Vec<Complex64> {
        // z (z - a) * sum (a z)^k
        let num = TruncatedSeries::from_real(&[0.0, -a, 1.0], order);
        let geo: Vec<f64> = (0..=order).map(|k| a.powi(k as i32)).collect();
        series::mul(&num, &TruncatedSeries::from_real(&geo, order)).coeffs().to_vec()
    }

    #[test]
    fn degenerate_parameters() {
        let xi0 = Family::XiA { a: 0.0 }.generate(4).unwrap();
        assert_eq!(xi0.coeffs()[..3], [ZERO, ZERO, ONE]);
        assert!(xi0.coeffs()[3..].iter().all(|c| *c == ZERO));
        let m0 = Family::MobiusFa { a: 0.0 }.generate(4).unwrap();
        assert_eq!(m0.coeffs()[..2], [ZERO, ONE]);
        assert!(m0.coeffs()[2..].iter().all(|c| *c == ZERO));
    }

    #[test]
    fn xi_coefficients_match_expansion() {
        let a = 0.5;
        let xi = Family::XiA { a }.generate(40).unwrap();
        assert!((xi.coeff(3).re - 0.375).abs() < 1e-15);
        for (x, y) in xi.coeffs().iter().zip(brute_xi(a, 40)) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn g_a_is_xi_of_square_over_z() {
        let a = 0.7;
        let n = 41;
        let xi = Family::XiA { a }.generate(n).unwrap();
        let sq = series::compose(&xi, &TruncatedSeries::monomial(2, ONE, n)).unwrap();
        let ga = series::shift_div_z(&sq).unwrap();
        let direct = Family::GA { a }.generate(n - 1).unwrap();
        for k in 0..n {
            assert!((ga.coeff(k) - direct.coeff(k)).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(Family::XiA { a: 1.0 }.generate(8).is_err());
        assert!(Family::MobiusFa { a: -0.1 }.generate(8).is_err());
        assert!(Family::KAlpha { alpha: 0.0 }.generate(8).is_err());
        assert!(Family::KAlpha { alpha: 1.0 }.generate(8).is_ok());
        assert!(Family::BlaschkeWitness { zeros: vec![real(0.95)] }.generate(8).is_err());
        assert!(matches!(
            Family::from_params("nope", &BTreeMap::new()),
            Err(Error::Unknown { .. })
        ));
    }

    #[test]
    fn closed_majorant_examples() {
        let xi = Family::XiA { a: 0.5 };
        let d = xi.closed_majorant(Which::Derivative).unwrap();
        assert!((d.eval(0.2).unwrap() - (0.5 + 0.285 / 0.81)).abs() < 1e-12);
        // The two-term form from the derivative expansion.
        for r in grid(20) {
            let a: f64 = 0.5;
            let two_term = a + (1.0 - a * a) * (r / (1.0 - a * r) + r / (1.0 - a * r).powi(2));
            assert!((d.eval(r).unwrap() - two_term).abs() < 1e-12);
        }
        let f = Family::MobiusFa { a: 0.6 }.closed_majorant(Which::Derivative).unwrap();
        assert!(f.eval(1.0 / 3.0).unwrap() <= 1.0 + 1e-15);
        assert!(f.eval(0.34).unwrap() > 1.0);
        assert!(matches!(
            Family::BlaschkeWitness { zeros: vec![] }.closed_majorant(Which::Function),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn closed_majorants_agree_with_truncated_sums() {
        let families = [
            Family::MobiusFa { a: 0.8 },
            Family::XiA { a: 0.9 },
            Family::GA { a: 0.6 },
            Family::KAlpha { alpha: 0.5 },
            Family::KAConvex { a: 0.5 },
            Family::IntroSquare { alpha1: 0.3 },
            Family::RemarkProduct,
        ];
        for order in [64, 256] {
            for fam in &families {
                let s = fam.generate(order).unwrap();
                let ds = s.derivative();
                for r in grid(20) {
                    let m = majorant_eval(&s, r).unwrap();
                    let closed = fam.closed_majorant(Which::Function).unwrap().eval(r).unwrap();
                    assert!((closed - m.lower).abs() <= m.width() + 1e-12 * closed, "{fam:?} r={r}");
                    let md = majorant_eval(&ds, r).unwrap();
                    let closed_d = fam.closed_majorant(Which::Derivative).unwrap().eval(r).unwrap();
                    assert!(
                        (closed_d - md.lower).abs() <= md.width() + 1e-12 * closed_d,
                        "{fam:?}' r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_witnesses_are_schwarz_functions() {
        for seed in 0..20 {
            for degree in 0..=MAX_WITNESS_DEGREE {
                let w = sample_schwarz(seed, degree, 128).unwrap();
                assert_eq!(w.coeff(0), ZERO);
                assert!(wiener_holds(&w, 1e-12), "seed {seed} degree {degree}");
                for k in 0..360 {
                    let z = Complex64::from_polar(0.95, 2.0 * PI * k as f64 / 360.0);
                    let (v, slack) = w.evaluate_enclosure(z).unwrap();
                    assert!(v.norm() <= 1.0 + slack + 1e-9);
                }
            }
        }
    }

    #[test]
    fn degree_zero_and_centered_witnesses() {
        let w = sample_schwarz(7, 0, 8).unwrap();
        assert_eq!(w.coeffs()[..2], [ZERO, ONE]);
        let w2 = blaschke_expansion(&[ZERO], 8);
        assert!((w2.coeff(2) - ONE).norm() < 1e-15);
        assert!(w2.coeffs().iter().enumerate().all(|(n, c)| n == 2 || c.norm() < 1e-15));
    }

    #[test]
    fn xi_is_dominated_by_identity_on_circles() {
        for a in [0.0, 0.3, 0.9, 0.999] {
            let f = LinearFractional::blaschke_factor(real(a));
            for rho in [0.2, 0.5, 0.95] {
                for k in 0..90 {
                    let z = Complex64::from_polar(rho, 2.0 * PI * k as f64 / 90.0);
                    let v = (f.p + f.q * z) / (ONE + f.s * z);
                    assert!(v.norm() <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn rational_composition_matches_generic_composition() {
        let order = 24;
        let w = sample_schwarz(3, 4, order).unwrap();
        let families = [
            Family::MobiusFa { a: 0.4 },
            Family::XiA { a: 0.6 },
            Family::GA { a: 0.3 },
            Family::KAlpha { alpha: 0.8 },
            Family::KAConvex { a: 0.7 },
            Family::IntroSquare { alpha1: 0.5 },
            Family::RemarkProduct,
            Family::BlaschkeWitness { zeros: schwarz_zeros(11, 2) },
        ];
        for fam in &families {
            let fast = fam.compose_with(&w).unwrap();
            let slow = series::compose(&fam.generate(order).unwrap(), &w).unwrap();
            for n in 0..=order {
                assert!((fast.coeff(n) - slow.coeff(n)).norm() < 1e-12, "{fam:?} n={n}");
            }
        }
    }

    #[test]
    fn serde_uses_kind_tag() {
        let text = serde_json::to_string(&Family::XiA { a: 0.5 }).unwrap();
        assert_eq!(text, r#"{"kind":"xi_a","a":0.5}"#);
        let back: Family = serde_json::from_str(r#"{"kind":"k_alpha","alpha":0.5}"#).unwrap();
        assert_eq!(back, Family::KAlpha { alpha: 0.5 });
    }
}
