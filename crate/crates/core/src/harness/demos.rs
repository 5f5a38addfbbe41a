//! Documented counterexamples. Each returns the quantities that witness it
//! and whether they were reproduced.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{Family, Which};
use crate::radii::{family_threshold, Target};
use crate::series::{self, TruncatedSeries};

use super::Counterexample;

pub const NAMES: [&str; 4] = ["remark-f0", "local-univalence", "local-univalence-majorization", "intro-derivative"];

/// Default radii for [`remark_f0`].
pub const REMARK_RADII: [f64; 2] = [0.1, 0.3];
pub const DEFAULT_ALPHA1: f64 = 0.5;
pub const INTRO_A: f64 = 0.6;
pub const INTRO_PROBE: f64 = 0.34;

pub fn run_demo(name: &str, order: usize) -> Result<Counterexample> {
    match name.replace('_', "-").as_str() {
        "remark-f0" => remark_f0(&REMARK_RADII, order),
        "local-univalence" => local_univalence(DEFAULT_ALPHA1, order),
        "local-univalence-majorization" => local_univalence_majorization(DEFAULT_ALPHA1),
        "intro-derivative" => intro_derivative(INTRO_A, INTRO_PROBE, order),
        _ => Err(Error::Unknown { kind: "counterexample", name: name.to_string() }),
    }
}

/// `f = z + 1`, `g = z f`: `|g| <= |f|` on the disk, yet `M_{g'}(r) -
/// M_{f'}(r) = 2r > 0` for every `r > 0`. The derivative comparison under
/// majorization needs `f(0) = 0`.
pub fn remark_f0(radii: &[f64], order: usize) -> Result<Counterexample> {
    let f = TruncatedSeries::from_real(&[1.0, 1.0], order);
    let g = Family::RemarkProduct.generate(order)?;
    let (df, dg) = (f.derivative(), g.derivative());
    let mut values = BTreeMap::new();
    let mut confirmed = !radii.is_empty();
    for &r in radii {
        let mf = df.majorant(r)?;
        let mg = dg.majorant(r)?;
        let diff = mg.lower - mf.upper;
        confirmed &= diff > 0.0 && (diff - 2.0 * r).abs() <= 1e-12;
        values.insert(format!("M_f'({r})"), mf.upper);
        values.insert(format!("M_g'({r})"), mg.lower);
        values.insert(format!("difference({r})"), diff);
    }
    // |g| <= |f| on a polar grid of the closed disk of radius 0.999.
    let mut worst: f64 = f64::NEG_INFINITY;
    for i in 0..=50 {
        for j in 0..360 {
            let z = Complex64::from_polar(0.999 * i as f64 / 50.0, j as f64 * std::f64::consts::TAU / 360.0);
            worst = worst.max(g.evaluate(z).norm() - f.evaluate(z).norm());
        }
    }
    confirmed &= worst <= 1e-15;
    values.insert("max(|g| - |f|) on grid".into(), worst);
    values.insert("f(0)".into(), 1.0);
    Ok(Counterexample {
        name: "remark-f0".into(),
        description: "g = z(z+1) is majorized by f = z+1 but M_g'(r) exceeds M_f'(r) by 2r; the condition f(0) = 0 cannot be dropped".into(),
        values,
        confirmed,
    })
}

/// `f = (z - a)^2`, `g = f(z^2)`, so `g` is subordinate to `f`. Since
/// `f'(a) = 0`, a comparison `|g'| <= |f'|` on a disk containing `a` would
/// force `g'(a) = 4a^2 (a - 1) = 0`, whose only roots are 0 and 1.
pub fn local_univalence(alpha1: f64, order: usize) -> Result<Counterexample> {
    check_alpha1(alpha1)?;
    let f = Family::IntroSquare { alpha1 }.generate(order)?;
    let g = series::compose(&f, &TruncatedSeries::monomial(2, Complex64::new(1.0, 0.0), order))?;
    let direct = TruncatedSeries::from_real(&[alpha1 * alpha1, 0.0, -2.0 * alpha1, 0.0, 1.0], order);
    let identity_gap = (0..=order).map(|n| (g.coeff(n) - direct.coeff(n)).norm()).fold(0.0, f64::max);
    let z = Complex64::new(alpha1, 0.0);
    let f_prime = f.derivative().evaluate(z).norm();
    let g_prime = g.derivative().evaluate(z).re;
    let closed = 4.0 * alpha1 * alpha1 * (alpha1 - 1.0);
    let roots = [0.0, 1.0];
    let outside_roots = roots.iter().all(|x| (alpha1 - x).abs() > 1e-12);
    let mut values = BTreeMap::new();
    values.insert("alpha1".into(), alpha1);
    values.insert("f_prime_at_alpha1".into(), f_prime);
    values.insert("forced_g_prime_at_alpha1".into(), 0.0);
    values.insert("g_prime_at_alpha1".into(), g_prime);
    values.insert("g_prime_closed_form".into(), closed);
    values.insert("forced_root_0".into(), roots[0]);
    values.insert("forced_root_1".into(), roots[1]);
    values.insert("comparison_excess_at_alpha1".into(), g_prime.abs() - f_prime);
    values.insert("subordination_identity_gap".into(), identity_gap);
    let confirmed = f_prime <= 1e-12
        && (g_prime - closed).abs() <= 1e-12
        && g_prime.abs() > 1e-6
        && outside_roots
        && identity_gap <= 1e-12;
    Ok(Counterexample {
        name: "local-univalence".into(),
        description: format!(
            "g = f(z^2) with f = (z - {alpha1})^2: f'({alpha1}) = 0 forces g'({alpha1}) = 0, but 4a^2(a-1) = 0 only for a in {{0, 1}}"
        ),
        values,
        confirmed,
    })
}

/// Majorization analogue: `f = z^2 - 2az`, `g = z f`, `|g| <= |f|`, and
/// `f'(a) = 0` while `g'(a) = -a^2`.
pub fn local_univalence_majorization(alpha1: f64) -> Result<Counterexample> {
    check_alpha1(alpha1)?;
    let a = alpha1;
    let f_prime = 2.0 * a - 2.0 * a;
    let g_prime = 3.0 * a * a - 4.0 * a * a;
    let mut values = BTreeMap::new();
    values.insert("alpha1".into(), a);
    values.insert("f_prime_at_alpha1".into(), f_prime);
    values.insert("forced_g_prime_at_alpha1".into(), 0.0);
    values.insert("g_prime_at_alpha1".into(), g_prime);
    Ok(Counterexample {
        name: "local-univalence-majorization".into(),
        description: format!("g = z(z^2 - 2az) is majorized by f = z^2 - 2az with a = {a}: f'(a) = 0 but g'(a) = -a^2"),
        values,
        confirmed: f_prime == 0.0 && g_prime < 0.0,
    })
}

fn check_alpha1(alpha1: f64) -> Result<()> {
    if !(alpha1 > 0.0 && alpha1 < 1.0) {
        return Err(Error::Domain(format!("alpha1 must lie in (0, 1), got {alpha1}")));
    }
    Ok(())
}

/// The derivative inequality for the self-maps `f_a = (z + a)/(1 + az)`
/// holds only up to `a/(1 + sqrt(1 - a^2))`, which tends to 0 with `a`.
pub fn intro_derivative(a: f64, probe: f64, order: usize) -> Result<Counterexample> {
    let closed = Target::IntroMobius
        .closed_threshold(a)
        .ok_or_else(|| Error::Domain(format!("parameter must lie in (0, 1), got {a}")))?;
    let bisected = family_threshold(a, Target::IntroMobius)?;
    let family = Family::MobiusFa { a };
    let closed_m = family.closed_majorant(Which::Derivative)?.eval(probe)?;
    let series_m = family.generate(order)?.derivative().majorant(probe)?;
    let small = family_threshold(0.01, Target::IntroMobius)?;
    let mut values = BTreeMap::new();
    values.insert("a".into(), a);
    values.insert("threshold_closed_form".into(), closed);
    values.insert("threshold_bisected".into(), bisected);
    values.insert("probe_r".into(), probe);
    values.insert("M_f'(probe) closed form".into(), closed_m);
    values.insert("M_f'(probe) series lower".into(), series_m.lower);
    values.insert("threshold at a = 0.01".into(), small);
    let confirmed = (bisected - closed).abs() <= 1e-9 && (probe <= closed || series_m.lower > 1.0) && small < 0.01;
    Ok(Counterexample {
        name: "intro-derivative".into(),
        description: format!(
            "M_f'(r) <= 1 fails for f = (z + {a})/(1 + {a} z) beyond r = a/(1 + sqrt(1 - a^2)); the radius tends to 0 with a"
        ),
        values,
        confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_demos_confirm() {
        for name in NAMES {
            let c = run_demo(name, 64).unwrap();
            assert!(c.confirmed, "{name}: {:?}", c.values);
        }
        assert!(run_demo("nope", 64).is_err());
    }

    #[test]
    fn local_univalence_values() {
        let c = local_univalence(0.5, 32).unwrap();
        assert_eq!(c.values["forced_g_prime_at_alpha1"], 0.0);
        assert!((c.values["g_prime_at_alpha1"] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn intro_threshold_is_one_third() {
        let c = intro_derivative(0.6, 0.34, 64).unwrap();
        assert!((c.values["threshold_bisected"] - 1.0 / 3.0).abs() < 1e-9);
        assert!(c.values["M_f'(probe) closed form"] > 1.0);
    }

    #[test]
    fn remark_difference_is_two_r() {
        let c = remark_f0(&[0.1, 0.3], 32).unwrap();
        assert!((c.values["difference(0.3)"] - 0.6).abs() < 1e-12);
    }
}
