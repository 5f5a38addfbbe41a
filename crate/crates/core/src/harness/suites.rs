//! The ten verification suites.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::families::{self, Family, LinearFractional, Which};
use crate::radii::{
    self, a_tilde, bisect_root, default_grid, infimum_over_family, psi1, r_a0,
    RadiusId, RadiusSetting, Target, BISECT_TOL, BRACKET_HI, DEFAULT_HORIZON,
};
use crate::series::{self, MajorantValue, TruncatedSeries};

use super::witness::{self, circle_sup, even_residue, random_outer, rng_for, Cert, Pool};
use super::{
    demos, per_sample, sample_seeds, Builder, Check, Fact, RunOptions, SharpnessTable, SuiteId,
    ODD_VIOLATION_OFFSET, TOL, VIOLATION_OFFSET,
};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const EXACT: fn(f64) -> MajorantValue = MajorantValue::exact;
/// Parameter of the member used for violation exhibits.
const EXTREME: f64 = 0.999;

/// Checks and facts produced by one sample.
#[derive(Default)]
struct Piece {
    checks: Vec<Check>,
    facts: Vec<Fact>,
}

impl Piece {
    fn holds(&mut self, description: String, r: f64, lhs: MajorantValue, rhs: MajorantValue) {
        self.checks.push(Check::holds(description, r, lhs, rhs));
    }
}

/// Returns the claimed radius reported for the suite.
pub(crate) fn run(suite: SuiteId, opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    match suite {
        SuiteId::Classical => classical(opts, b),
        SuiteId::LemmaB => lemma_b(opts, b),
        SuiteId::Derivative => derivative(opts, b),
        SuiteId::DerivativeCompare => derivative_compare(opts, b),
        SuiteId::OddMajorization => odd_majorization(opts, b),
        SuiteId::OddDerivative => odd_derivative(opts, b),
        SuiteId::Lemma1 => lemma1(opts, b),
        SuiteId::Bombieri => bombieri(opts, b),
        SuiteId::Spherical => spherical(opts, b),
        SuiteId::BoundedConvex => bounded_convex(opts, b),
    }
}

/// Fractions of the claimed radius, shifted by the injected offset.
fn radii_for(claimed: f64, opts: &RunOptions) -> Vec<f64> {
    super::FRACTIONS.iter().map(|f| f * (claimed + opts.radius_offset)).collect()
}

fn sampled(
    b: &mut Builder,
    suite: SuiteId,
    opts: &RunOptions,
    f: impl Fn(usize, &mut rand_chacha::ChaCha8Rng) -> Result<Piece> + Sync + Send,
) -> Result<()> {
    let seeds = sample_seeds(opts.seed, suite, opts.samples);
    let pieces = per_sample(&seeds, |i, s| f(i, &mut rng_for(s)))?;
    for p in pieces {
        b.checks.extend(p.checks);
        b.facts.extend(p.facts);
    }
    Ok(())
}

fn member_cert(family: &Family, order: usize, which: Which) -> Result<Cert> {
    let c = Cert::bounded(family.generate(order)?, family.sup_bound());
    Ok(match which {
        Which::Function => c,
        Which::Derivative => c.derivative(),
    })
}

fn target_which(target: Target) -> Which {
    match target {
        Target::Derivative | Target::OddDerivative | Target::IntroMobius => Which::Derivative,
        _ => Which::Function,
    }
}

/// Positive checks for every grid member of the target's family, the
/// convergent sharpness table and the violation just above the limit.
fn family_part(b: &mut Builder, target: Target, opts: &RunOptions, offset: f64) -> Result<()> {
    let limit = target.limit().expect("suite targets have a limit");
    let which = target_which(target);
    let lhs_name = match which {
        Which::Function => format!("M_{}", target.family_name()),
        Which::Derivative => format!("M_{}'", target.family_name()),
    };
    let rhs_name = if target.bound(0.5) == 1.0 { "1" } else { "r" };
    for a in default_grid() {
        let cert = member_cert(&target.family(a), opts.order, which)?;
        for r in radii_for(limit, opts) {
            b.checks.push(Check::holds(
                format!("{lhs_name}(r) <= {rhs_name} for a = {a}"),
                r,
                cert.majorant(r)?,
                EXACT(target.bound(r)),
            ));
        }
    }
    let inf = infimum_over_family(target, &default_grid())?;
    b.tables.push(SharpnessTable::convergent(
        format!("thresholds of {lhs_name}(r) <= {rhs_name} over a, converging to the claimed radius"),
        inf.table,
        limit,
        |r| target.limit_predicate(r).unwrap_or(false),
    ));
    let r = limit + offset;
    let cert = member_cert(&target.family(EXTREME), opts.order, which)?;
    let closed = target.family(EXTREME).closed_majorant(which)?.eval(r)?;
    let m = cert.majorant(r)?;
    b.checks.push(Check::violated(
        format!("{lhs_name}(r) > {rhs_name} for a = {EXTREME} just above the radius"),
        r,
        m,
        EXACT(target.bound(r)),
    ));
    b.facts.push(Fact::new(
        format!("closed majorant of {lhs_name} at r = {r} lies in the series enclosure"),
        closed >= m.lower - TOL && closed <= m.upper + TOL,
    ));
    Ok(())
}

fn classical(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let claimed = 1.0 / 3.0;
    let radii = radii_for(claimed, opts);
    sampled(b, SuiteId::Classical, opts, |i, rng| {
        let (f, label) = witness::self_map(rng, opts.order, false)?;
        let mut p = Piece::default();
        for &r in &radii {
            p.holds(format!("M_f(r) <= 1 for sample {i}: {label}"), r, f.majorant(r)?, EXACT(1.0));
        }
        Ok(p)
    })?;
    family_part(b, Target::Classical, opts, VIOLATION_OFFSET)?;
    Ok(Some(claimed))
}

fn lemma_b(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let claimed = 1.0 / 3.0;
    let radii = radii_for(claimed, opts);
    sampled(b, SuiteId::LemmaB, opts, |i, rng| {
        let outer = random_outer(rng, Pool::Any);
        let w = witness::schwarz(rng, opts.order)?;
        let f = outer.series(opts.order)?;
        let g = outer.compose(&w.w)?;
        let mut p = Piece::default();
        for &r in &radii {
            p.holds(
                format!("M_g(r) <= M_f(r) for sample {i}: g = f o w, f = {}, w = {}", outer.label(), w.label),
                r,
                g.majorant(r)?,
                f.majorant(r)?,
            );
        }
        Ok(p)
    })?;
    family_part(b, Target::LemmaB, opts, VIOLATION_OFFSET)?;
    Ok(Some(claimed))
}

fn derivative(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let claimed = radii::r0_derivative();
    let radii = radii_for(claimed, opts);
    sampled(b, SuiteId::Derivative, opts, |i, rng| {
        let w = witness::schwarz(rng, opts.order)?;
        let dw = Cert::bounded(w.w.clone(), 1.0).derivative();
        let mut p = Piece::default();
        for &r in &radii {
            p.holds(format!("M_w'(r) <= 1 for sample {i}: {}", w.label), r, dw.majorant(r)?, EXACT(1.0));
        }
        p.facts.push(Fact::new(
            format!("Wiener estimate |w_n| <= 1 - |w_1|^2 for sample {i}"),
            families::wiener_holds(&w.w, TOL),
        ));
        Ok(p)
    })?;
    family_part(b, Target::Derivative, opts, VIOLATION_OFFSET)?;
    b.counterexamples.push(demos::intro_derivative(demos::INTRO_A, demos::INTRO_PROBE, opts.order)?);
    Ok(Some(claimed))
}

fn derivative_compare(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let claimed = radii::r0_derivative();
    let radii = radii_for(claimed, opts);
    sampled(b, SuiteId::DerivativeCompare, opts, |i, rng| {
        let mut p = Piece::default();
        let (f, g, label) = if i % 2 == 0 {
            let outer = random_outer(rng, Pool::Any);
            let w = witness::schwarz(rng, opts.order)?;
            let g = outer.compose(&w.w)?;
            (outer.series(opts.order)?, g, format!("g = f o w, f = {}, w = {}", outer.label(), w.label))
        } else {
            let outer = random_outer(rng, Pool::VanishingAtZero);
            let (phi, phi_label) = witness::self_map(rng, opts.order, false)?;
            let f = outer.series(opts.order)?;
            p.facts.push(Fact::new(
                format!("f(0) = 0 for sample {i}"),
                f.series.coeff(0).norm() <= 1e-15,
            ));
            let g = Cert::bounded(&phi.series * &f.series, outer.sup());
            (f, g, format!("g = phi f, f = {}, phi = {phi_label}", outer.label()))
        };
        let (df, dg) = (f.derivative(), g.derivative());
        for &r in &radii {
            p.holds(format!("M_g'(r) <= M_f'(r) for sample {i}: {label}"), r, dg.majorant(r)?, df.majorant(r)?);
        }
        Ok(p)
    })?;
    family_part(b, Target::Derivative, opts, VIOLATION_OFFSET)?;
    // Without f(0) = 0 the majorized comparison fails at every radius.
    let f = Cert::exact(TruncatedSeries::from_real(&[1.0, 1.0], opts.order)).derivative();
    let g = Cert::exact(Family::RemarkProduct.generate(opts.order)?).derivative();
    for r in demos::REMARK_RADII.into_iter().chain([0.5 * claimed, claimed]) {
        b.checks.push(Check::violated("M_g'(r) > M_f'(r) for f = z + 1, g = z f", r, g.majorant(r)?, f.majorant(r)?));
    }
    b.counterexamples.push(demos::remark_f0(&demos::REMARK_RADII, opts.order)?);
    b.counterexamples.push(demos::local_univalence(demos::DEFAULT_ALPHA1, opts.order)?);
    b.counterexamples.push(demos::local_univalence_majorization(demos::DEFAULT_ALPHA1)?);
    Ok(Some(claimed))
}

fn odd_majorization(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let claimed = 1.0 / 3f64.sqrt();
    let radii = radii_for(claimed, opts);
    sampled(b, SuiteId::OddMajorization, opts, |i, rng| {
        let outer = random_outer(rng, Pool::Odd);
        let (phi, phi_label) = witness::self_map(rng, opts.order, true)?;
        let f = outer.series(opts.order)?;
        let g = Cert::bounded(&phi.series * &f.series, outer.sup());
        let mut p = Piece::default();
        p.facts.push(Fact::new(
            format!("f and g = phi f are odd for sample {i}"),
            even_residue(&f.series) <= 1e-12 && even_residue(&g.series) <= 1e-12,
        ));
        for &r in &radii {
            p.holds(
                format!("M_g(r) <= M_f(r) for sample {i}: g = phi f, f = {}, phi = {phi_label}", outer.label()),
                r,
                g.majorant(r)?,
                f.majorant(r)?,
            );
        }
        Ok(p)
    })?;
    family_part(b, Target::OddMajorization, opts, ODD_VIOLATION_OFFSET)?;
    Ok(Some(claimed))
}

/// `z phi_n(z) = (w^{2n+1}(z) - w^{2n+1}(-z)) / (2 z^{2n})`.
fn z_phi_n(w: &TruncatedSeries, n: usize) -> Result<TruncatedSeries> {
    let mut power = w.clone();
    for _ in 0..2 * n {
        power = &power * w;
    }
    let mut h = power.odd_part();
    for _ in 0..2 * n {
        h = series::shift_div_z(&h)?;
    }
    Ok(h)
}

fn odd_derivative(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let claimed = radii::r0_odd_derivative();
    let radii = radii_for(claimed, opts);
    sampled(b, SuiteId::OddDerivative, opts, |i, rng| {
        let mut p = Piece::default();
        let outer = random_outer(rng, Pool::Odd);
        let f = outer.series(opts.order)?;
        let (g, label) = if i % 2 == 0 {
            let w = witness::odd_schwarz(rng, opts.order)?;
            (outer.compose(&w.w)?, format!("g = f o w, f = {}, w = {}", outer.label(), w.label))
        } else {
            let (phi, phi_label) = witness::self_map(rng, opts.order, true)?;
            (
                Cert::bounded(&phi.series * &f.series, outer.sup()),
                format!("g = phi f, f = {}, phi = {phi_label}", outer.label()),
            )
        };
        p.facts.push(Fact::new(
            format!("f and g are odd for sample {i}"),
            even_residue(&f.series) <= 1e-12 && even_residue(&g.series) <= 1e-12,
        ));
        let (df, dg) = (f.derivative(), g.derivative());
        for &r in &radii {
            p.holds(format!("M_g'(r) <= M_f'(r) for sample {i}: {label}"), r, dg.majorant(r)?, df.majorant(r)?);
        }
        // The functions phi_n of a general Schwarz function.
        if i < 10 {
            let w = witness::schwarz(rng, opts.order)?;
            for n in 0..3 {
                let h = Cert::bounded(z_phi_n(&w.w, n)?, 1.0);
                p.facts.push(Fact::new(
                    format!("z phi_{n} is odd for sample {i}"),
                    even_residue(&h.series) <= 1e-12,
                ));
                let r = claimed + opts.radius_offset;
                p.holds(
                    format!("M_(z phi_{n})'(r) <= 1 for sample {i}: w = {}", w.label),
                    r,
                    h.derivative().majorant(r)?,
                    EXACT(1.0),
                );
            }
        }
        Ok(p)
    })?;
    family_part(b, Target::OddDerivative, opts, ODD_VIOLATION_OFFSET)?;
    Ok(Some(claimed))
}

/// Functions with a known coefficient ratio for the ratio-radius suite.
fn ratio_function(rng: &mut rand_chacha::ChaCha8Rng) -> (Family, LinearFractional, usize, String) {
    let t = rng.gen_range(0.2..=0.6);
    match rng.gen_range(0..4) {
        0 => {
            let f = LinearFractional::automorphism(Complex64::new(t, 0.0));
            (Family::MobiusFa { a: t }, f, 0, format!("f_a with a = {t}"))
        }
        1 => {
            let alpha = (1.0 - t * t).sqrt();
            let f = LinearFractional { p: Complex64::new(0.0, 0.0), q: Complex64::new(alpha, 0.0), s: Complex64::new(-t, 0.0) };
            (Family::KAlpha { alpha }, f, 1, format!("k_alpha with alpha = {alpha}"))
        }
        2 => {
            let bb = rng.gen_range(0.5..=2.0);
            let f = LinearFractional { p: Complex64::new(0.0, 0.0), q: Complex64::new(bb, 0.0), s: Complex64::new(-t, 0.0) };
            (Family::KAConvex { a: t }, f, 1, format!("{bb} z/(1 - {t} z)"))
        }
        _ => {
            let f = LinearFractional { p: Complex64::new(0.0, 0.0), q: ONE, s: Complex64::new(-t, 0.0) };
            (Family::KAConvex { a: t }, f, 1, format!("k_a with a = {t}"))
        }
    }
}

fn lemma1(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let horizon = DEFAULT_HORIZON.min(opts.order);
    sampled(b, SuiteId::Lemma1, opts, |i, rng| {
        let (_, lf, m, label) = ratio_function(rng);
        let w = witness::schwarz(rng, opts.order)?;
        let f = Cert::bounded(lf.generate(opts.order), lf.sup_bound());
        let g = Cert::bounded(lf.compose_with(&w.w)?, lf.sup_bound());
        let ratio = radii::lemma1_radius(f.series.coeffs(), m, horizon)?;
        let mut p = Piece::default();
        for r in radii_for(ratio.radius, opts) {
            p.holds(
                format!("M_g(r) <= M_f(r) below the coefficient ratio radius for sample {i}: f = {label}, w = {}", w.label),
                r,
                g.majorant(r)?,
                f.majorant(r)?,
            );
        }
        // Monotone coefficients: partial sums are compared without tails.
        let power = rng.gen_range(1..=2usize);
        let squared = rng.gen_bool(0.5);
        let inv = LinearFractional { p: ONE, q: Complex64::new(0.0, 0.0), s: -ONE };
        let mut fs = TruncatedSeries::monomial(power, ONE, opts.order);
        let mut gs = (0..power - 1).fold(w.w.clone(), |acc, _| &acc * &w.w);
        fs = &fs * &inv.generate(opts.order);
        gs = &gs * &inv.compose_with(&w.w)?;
        if squared {
            fs = &fs * &inv.generate(opts.order);
            gs = &gs * &inv.compose_with(&w.w)?;
        }
        let fname = format!("z^{power}/(1 - z){}", if squared { "^2" } else { "" });
        for t in [opts.order / 4, opts.order / 2, opts.order] {
            for r in [0.1f64, 0.3, 0.5, 0.7, 0.9] {
                let partial = |s: &TruncatedSeries| -> f64 {
                    (power..=t).rev().map(|n| s.coeff(n).norm() * r.powi(n as i32)).sum()
                };
                let (pg, pf) = (partial(&gs), partial(&fs));
                p.checks.push(Check::holds(
                    format!("partial sum to {t} of |b_n| r^n <= that of |a_n| r^n for sample {i}: f = {fname}, w = {}", w.label),
                    r,
                    EXACT(pg),
                    MajorantValue { lower: pf * (1.0 - 1e-13), upper: pf },
                ));
            }
        }
        Ok(p)
    })?;
    // Ratio radii of the reference functions.
    let mobius = Family::MobiusFa { a: 0.5 }.generate(opts.order)?;
    let k = Family::KAlpha { alpha: 0.6 }.generate(opts.order)?;
    let r1 = radii::lemma1_radius(mobius.coeffs(), 0, horizon)?;
    let r2 = radii::lemma1_radius(k.coeffs(), 1, horizon)?;
    b.facts.push(Fact::new("coefficient ratio radius of f_0.5 is 0.5", (r1.radius - 0.5).abs() <= TOL));
    b.facts.push(Fact::new("coefficient ratio radius of k_0.6 is sqrt(1 - 0.36)", (r2.radius - 0.8).abs() <= TOL));
    Ok(None)
}

/// Möbius threshold of `sup_{|z|=r} |f_x| + M_{f_x}(r) - x <= 1`, by bisection
/// on the closed forms.
fn mobius_bombieri_threshold(x: f64) -> Result<f64> {
    let m = Family::MobiusFa { a: x }.closed_majorant(Which::Function)?;
    let pred = |r: f64| m.eval(r).map(|v| (r + x) / (1.0 + x * r) + v - x <= 1.0).unwrap_or(false);
    Ok(bisect_root(pred, 0.0, BRACKET_HI, BISECT_TOL)?.0)
}

pub const BOMBIERI_MODULI: [f64; 3] = [0.4, 0.6, 0.8];

fn bombieri(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let seeds = sample_seeds(opts.seed, SuiteId::Bombieri, opts.samples * BOMBIERI_MODULI.len());
    let pieces = per_sample(&seeds, |i, s| {
        let rng = &mut rng_for(s);
        let x = BOMBIERI_MODULI[i % BOMBIERI_MODULI.len()];
        let c = Complex64::from_polar(x, 2.0 * std::f64::consts::PI * rng.gen::<f64>());
        let w = witness::schwarz(rng, opts.order)?;
        let f = Cert::bounded(LinearFractional::automorphism(c).compose_with(&w.w)?, 1.0);
        let label = format!("|a0| = {x}, w = {}", w.label);
        let mut p = Piece::default();
        for r in radii_for(x, opts) {
            let bound = r * (1.0 - x * x) / (1.0 - x * r);
            let m = f.majorant(r)?;
            p.holds(
                format!("M_f(r) - |a0| <= r(1 - |a0|^2)/(1 - |a0| r) for sample {i}: {label}"),
                r,
                MajorantValue { lower: m.lower - x, upper: m.upper - x },
                EXACT(bound),
            );
        }
        for r in radii_for(r_a0(x), opts).into_iter().skip(1).step_by(2) {
            let sup = circle_sup(&f, r)?;
            let m = f.majorant(r)?;
            p.holds(
                format!("max_(|z|=r) |f| + M_f(r) - |a0| <= 1 for sample {i}: {label}"),
                r,
                MajorantValue { lower: sup.lower + m.lower - x, upper: sup.upper + m.upper - x },
                EXACT(1.0),
            );
        }
        Ok(p)
    })?;
    for p in pieces {
        b.checks.extend(p.checks);
        b.facts.extend(p.facts);
    }
    // Rotated Möbius maps attain equality at r_x.
    for (k, x) in [0.4, 0.5, 0.6, 0.8].into_iter().enumerate() {
        let rot = Complex64::from_polar(1.0, 0.7 + k as f64);
        let w = TruncatedSeries::monomial(1, rot, opts.order);
        let f = Cert::exact(LinearFractional::automorphism(Complex64::new(x, 0.0)).compose_with(&w)?);
        let r = r_a0(x) + opts.radius_offset;
        let sup = circle_sup(&f, r)?;
        let m = f.majorant(r)?;
        b.checks.push(Check::holds(
            format!("max_(|z|=r) |f| + M_f(r) - |a0| <= 1 for the rotated Möbius map with |a0| = {x}"),
            r,
            MajorantValue { lower: sup.lower + m.lower - x, upper: sup.upper + m.upper - x },
            EXACT(1.0),
        ));
    }
    let mut rows = Vec::new();
    for x in [0.37, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99] {
        let expected = radii::resolve(&RadiusSetting::new(RadiusId::RA0).with("a0", x))?.closed_form;
        rows.push((x, mobius_bombieri_threshold(x)?, expected));
    }
    b.tables.push(SharpnessTable::exact("Möbius thresholds of |f| + M_f(r) - |a0| <= 1 against r_|a0|", rows));
    // Violation just above r_0.5.
    let x = 0.5;
    let f = Cert::exact(Family::MobiusFa { a: x }.generate(opts.order)?);
    let r = r_a0(x) + VIOLATION_OFFSET;
    let sup = circle_sup(&f, r)?;
    let m = f.majorant(r)?;
    b.checks.push(Check::violated(
        "max_(|z|=r) |f_0.5| + M(r) - 0.5 > 1 just above r_0.5",
        r,
        MajorantValue { lower: sup.lower + m.lower - x, upper: sup.upper + m.upper - x },
        EXACT(1.0),
    ));
    // Hypothesis equivalence r_x <= x iff x >= a_tilde.
    let at = a_tilde();
    let mut agree = true;
    for j in 1..1000 {
        let x = j as f64 / 1000.0;
        if (x - at).abs() < 1e-6 {
            continue;
        }
        agree &= (r_a0(x) <= x) == (x >= at);
    }
    b.facts.push(Fact::new("r_x <= x exactly when x >= a_tilde on the grid j/1000", agree));
    let s = 2.0 * 3f64.sqrt() - 3.0;
    b.facts.push(Fact::new(
        "psi1(2 sqrt 3 - 3) = 908 - 524 sqrt 3 > 0 and a_tilde < 2 sqrt 3 - 3",
        psi1(s) > 0.0 && (psi1(s) - (908.0 - 524.0 * 3f64.sqrt())).abs() < 1e-9 && at < s,
    ));
    b.facts.push(Fact::new("a_tilde = 0.361103 to 1e-6", (at - 0.361103).abs() < 1e-6 && psi1(at).abs() < 1e-12));
    Ok(None)
}

fn spherical_rs(alpha: f64) -> Result<f64> {
    Ok(radii::resolve(&RadiusSetting::new(RadiusId::SphericalRs).with("alpha", alpha))?.closed_form)
}

fn spherical(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    let top = 3f64.sqrt() / 2.0;
    sampled(b, SuiteId::Spherical, opts, |i, rng| {
        let alpha = if i == 0 { top } else { rng.gen_range(0.05..=top) };
        let beta = (1.0 - alpha * alpha).sqrt();
        let w = witness::schwarz(rng, opts.order)?;
        // f = alpha z / (1 + beta w)
        let inv = LinearFractional { p: ONE, q: Complex64::new(0.0, 0.0), s: Complex64::new(beta, 0.0) };
        let s = &TruncatedSeries::monomial(1, Complex64::new(alpha, 0.0), opts.order) * &inv.compose_with(&w.w)?;
        let f = Cert::bounded(s, alpha / (1.0 - beta));
        let delta = alpha / (1.0 + beta);
        let mut p = Piece::default();
        for r in radii_for(spherical_rs(alpha)?, opts) {
            p.holds(
                format!("M_f(r) <= alpha/(1 + beta) for sample {i}: f = alpha z/(1 + beta w), alpha = {alpha}, w = {}", w.label),
                r,
                f.majorant(r)?,
                EXACT(delta),
            );
        }
        Ok(p)
    })?;
    let mut rows = Vec::new();
    for alpha in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, top] {
        let beta = (1.0 - alpha * alpha).sqrt();
        let delta = alpha / (1.0 + beta);
        let family = Family::KAlpha { alpha };
        let m = family.closed_majorant(Which::Function)?;
        let pred = |r: f64| m.eval(r).map(|v| v <= delta).unwrap_or(false);
        rows.push((alpha, bisect_root(pred, 0.0, BRACKET_HI, BISECT_TOL)?.0, spherical_rs(alpha)?));
        let cert = member_cert(&family, opts.order, Which::Function)?;
        for r in radii_for(spherical_rs(alpha)?, opts) {
            b.checks.push(Check::holds(
                format!("M_k_alpha(r) <= alpha/(1 + beta) for alpha = {alpha}"),
                r,
                cert.majorant(r)?,
                EXACT(delta),
            ));
        }
    }
    b.tables.push(SharpnessTable::exact("k_alpha thresholds of M(r) <= alpha/(1 + beta) against r_s", rows));
    // Equality at alpha = sqrt(3)/2, r_s = 1/2.
    let m = Family::KAlpha { alpha: top }.closed_majorant(Which::Function)?.eval(0.5)?;
    let delta = top / 1.5;
    b.facts.push(Fact::new(
        format!("k_alpha with alpha = sqrt(3)/2 attains M(1/2) = alpha/(1 + beta) (gap {:.3e})", (m - delta).abs()),
        (m - delta).abs() <= TOL && (spherical_rs(top)? - 0.5).abs() <= TOL,
    ));
    let r = 0.5 + VIOLATION_OFFSET;
    b.checks.push(Check::violated(
        "M_k_alpha(r) > alpha/(1 + beta) for alpha = sqrt(3)/2 just above r_s",
        r,
        member_cert(&Family::KAlpha { alpha: top }, opts.order, Which::Function)?.majorant(r)?,
        EXACT(delta),
    ));
    let mut agree = true;
    for j in 1..100 {
        let alpha = j as f64 / 100.0;
        let beta = (1.0 - alpha * alpha).sqrt();
        agree &= (1.0 / (1.0 + 2.0 * beta) <= beta) == (alpha <= top);
    }
    b.facts.push(Fact::new("r_s <= sqrt(1 - alpha^2) exactly when alpha <= sqrt(3)/2 on the grid j/100", agree));
    let hypothesis = spherical_rs(0.9).is_err() && spherical_rs(top).is_ok();
    b.facts.push(Fact::new("r_s is rejected for alpha > sqrt(3)/2", hypothesis));
    Ok(None)
}

fn convex_rc(r2: f64, delta: f64) -> Result<f64> {
    Ok(radii::resolve(&RadiusSetting::new(RadiusId::ConvexRc).with("R2", r2).with("delta", delta))?.closed_form)
}

fn bounded_convex(opts: &RunOptions, b: &mut Builder) -> Result<Option<f64>> {
    sampled(b, SuiteId::BoundedConvex, opts, |i, rng| {
        let delta = rng.gen_range(0.1..=1.0);
        let r2 = 2.0 * delta * rng.gen_range(1.0..=2.0);
        let a = (r2 - delta) / r2;
        let bb = (2.0 * r2 - delta) * delta / r2;
        let lf = LinearFractional { p: Complex64::new(0.0, 0.0), q: Complex64::new(bb, 0.0), s: Complex64::new(-a, 0.0) };
        let w = witness::schwarz(rng, opts.order)?;
        let f = Cert::bounded(lf.compose_with(&w.w)?, lf.sup_bound());
        let mut p = Piece::default();
        for r in radii_for(convex_rc(r2, delta)?, opts) {
            p.holds(
                format!("M_f(r) <= delta for sample {i}: f = B w/(1 - A w), R2 = {r2}, delta = {delta}, w = {}", w.label),
                r,
                f.majorant(r)?,
                EXACT(delta),
            );
        }
        Ok(p)
    })?;
    let mut rows = Vec::new();
    for a in [0.5, 0.6, 0.7, 0.8, 0.9, 0.99] {
        let delta = 1.0 / (1.0 + a);
        let r2 = 1.0 / (1.0 - a * a);
        let family = Family::KAConvex { a };
        let m = family.closed_majorant(Which::Function)?;
        let pred = |r: f64| m.eval(r).map(|v| v <= delta).unwrap_or(false);
        let rc = convex_rc(r2, delta)?;
        rows.push((a, bisect_root(pred, 0.0, BRACKET_HI, BISECT_TOL)?.0, rc));
        let cert = member_cert(&family, opts.order, Which::Function)?;
        for r in radii_for(rc, opts) {
            b.checks.push(Check::holds(format!("M_k_a(r) <= 1/(1 + a) for a = {a}"), r, cert.majorant(r)?, EXACT(delta)));
        }
    }
    b.tables.push(SharpnessTable::exact("k_a thresholds of M(r) <= 1/(1 + a) against r_c", rows));
    let m = Family::KAConvex { a: 0.5 }.closed_majorant(Which::Function)?.eval(0.5)?;
    b.facts.push(Fact::new(
        format!("k_a with a = 1/2 attains M(1/2) = 2/3 (gap {:.3e})", (m - 2.0 / 3.0).abs()),
        (m - 2.0 / 3.0).abs() <= TOL,
    ));
    let r = 0.5 + VIOLATION_OFFSET;
    b.checks.push(Check::violated(
        "M_k_a(r) > 2/3 for a = 1/2 just above r_c",
        r,
        member_cert(&Family::KAConvex { a: 0.5 }, opts.order, Which::Function)?.majorant(r)?,
        EXACT(2.0 / 3.0),
    ));
    // r_c <= A exactly when R2 >= 2 delta.
    let mut agree = true;
    for i in 1..=20 {
        let delta = i as f64 / 20.0;
        for j in 0..=32 {
            let r2 = delta * (0.8 + j as f64 * 0.1);
            if ((r2 - 2.0 * delta) / delta).abs() < 1e-9 {
                continue;
            }
            let rc = r2 / (3.0 * r2 - 2.0 * delta);
            agree &= (rc <= (r2 - delta) / r2) == (r2 >= 2.0 * delta);
        }
    }
    b.facts.push(Fact::new("r_c <= A exactly when R2 >= 2 delta on the (R2, delta) grid", agree));
    let mut lower = true;
    for i in 0..=40 {
        let r2 = 4.0 / 3.0 + i as f64 * 0.1;
        let d0 = r2 - (r2 * r2 - r2).sqrt();
        for k in 0..=10 {
            let delta = d0 + (r2 / 2.0 - d0) * k as f64 / 10.0;
            lower &= r2 / (r2 + 2.0 * (r2 * r2 - r2).sqrt()) <= convex_rc(r2, delta)? + 1e-15;
        }
    }
    b.facts.push(Fact::new("R2/(R2 + 2 sqrt(R2^2 - R2)) <= r_c whenever delta >= R2 - sqrt(R2^2 - R2)", lower));
    let mut chain = true;
    for k in 1..=20 {
        let delta = 0.5 + k as f64 / 120.0;
        chain &= delta * delta / (2.0 * delta - 1.0) >= 2.0 * delta - 1e-12;
    }
    b.facts.push(Fact::new("delta^2/(2 delta - 1) >= 2 delta for delta in (1/2, 2/3]", chain));
    let mut ka = true;
    for j in 1..100 {
        let a = j as f64 / 100.0;
        ka &= (1.0 / (1.0 - a * a) >= 2.0 / (1.0 + a) - 1e-15) == (a >= 0.5);
    }
    b.facts.push(Fact::new("k_a satisfies R2 >= 2 delta exactly when a >= 1/2", ka));
    b.facts.push(Fact::new("r_c is rejected when R2 < 2 delta", convex_rc(1.0, 0.6).is_err()));
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radii::family_threshold;

    #[test]
    fn z_phi_n_of_a_rotation_is_linear() {
        let c = Complex64::from_polar(1.0, 0.3);
        let w = TruncatedSeries::monomial(1, c, 40);
        for n in 0..3 {
            let h = z_phi_n(&w, n).unwrap();
            assert!((h.coeff(1) - c.powu(2 * n as u32 + 1)).norm() < 1e-14);
            assert!(h.coeffs().iter().skip(2).all(|x| x.norm() < 1e-14));
        }
    }

    #[test]
    fn bombieri_thresholds_match_closed_form() {
        for x in [0.4, 0.5, 0.8] {
            assert!((mobius_bombieri_threshold(x).unwrap() - r_a0(x)).abs() < 1e-9);
        }
        assert!((r_a0(0.5) - 0.3245553).abs() < 1e-7);
    }

    #[test]
    fn threshold_of_family_used_by_tables() {
        assert!((family_threshold(0.5, Target::LemmaB).unwrap() - 0.5).abs() < 1e-9);
    }
}
