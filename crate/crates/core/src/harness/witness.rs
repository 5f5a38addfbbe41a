//! Random witnesses for the suites and certified evaluation helpers.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::families::{self, Family, LinearFractional, MAX_WITNESS_DEGREE};
use crate::series::{self, MajorantValue, TailBound, TruncatedSeries};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A series with an optional second tail certificate, typically the Cauchy
/// bound of a function known to be bounded on the disk. Majorant upper
/// bounds use whichever certificate is smaller at the radius asked for.
#[derive(Clone, Debug)]
pub struct Cert {
    pub series: TruncatedSeries,
    pub alt: Option<TailBound>,
}

impl Cert {
    pub fn exact(series: TruncatedSeries) -> Self {
        Cert { series, alt: None }
    }

    /// A series of a function with `sup_{|z|<1} |f| <= sup`.
    pub fn bounded(series: TruncatedSeries, sup: f64) -> Self {
        let start = series.order() + 1;
        Cert { series, alt: Some(TailBound::bounded_function(sup, start)) }
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Smallest certified tail at `r`; infinite when no certificate applies.
    pub fn tail_bound(&self, r: f64) -> f64 {
        let own = self.series.tail().map_or(0.0, |t| t.bound_or_inf(r));
        let alt = self.alt.map_or(f64::INFINITY, |t| t.bound_or_inf(r));
        own.min(alt)
    }

    pub fn majorant(&self, r: f64) -> Result<MajorantValue> {
        if !(0.0..1.0).contains(&r) {
            return Err(domain(format!("majorant radius must lie in [0, 1), got {r}")));
        }
        let lower = self.series.explicit_majorant(r);
        let tail = self.tail_bound(r);
        if !tail.is_finite() {
            return Err(domain(format!("no tail certificate converges at r = {r}")));
        }
        Ok(MajorantValue { lower, upper: lower + tail })
    }

    pub fn derivative(&self) -> Self {
        Cert { series: self.series.derivative(), alt: self.alt.map(|t| t.differentiated()) }
    }
}

/// Majorant of the identity map: exactly `r`.
pub fn identity_majorant(r: f64) -> MajorantValue {
    MajorantValue::exact(r)
}

fn unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>())
}

/// Uniform point of the disk of radius `radius`.
fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>())
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A sampled Schwarz function together with a short label.
pub struct Schwarz {
    pub w: TruncatedSeries,
    pub label: String,
}

/// Rotation `e^{it} z` (degree 0) or a rotated Blaschke product with up to
/// six zeros drawn from the stream.
pub fn schwarz(rng: &mut ChaCha8Rng, order: usize) -> Result<Schwarz> {
    let degree = rng.gen_range(0..=MAX_WITNESS_DEGREE);
    let rot = unit(rng);
    if degree == 0 {
        return Ok(Schwarz {
            w: TruncatedSeries::monomial(1, rot, order),
            label: format!("rotation e^(i{:.4})z", rot.arg()),
        });
    }
    let seed: u64 = rng.gen();
    let w = families::sample_schwarz(seed, degree, order)?.scale(rot);
    Ok(Schwarz { w, label: format!("Blaschke witness (seed {seed}, degree {degree})") })
}

/// `w(z^2) / z`, an odd Schwarz function.
pub fn odd_schwarz(rng: &mut ChaCha8Rng, order: usize) -> Result<Schwarz> {
    let s = schwarz(rng, order + 1)?;
    let sq = series::compose(&s.w, &TruncatedSeries::monomial(2, ONE, order + 1))?;
    let w = series::shift_div_z(&sq)?.truncate(order);
    Ok(Schwarz { w, label: format!("odd {}", s.label) })
}

/// A self-map `(w + c)/(1 + conj(c) w)` with `|c| <= 0.9` and `w` a Schwarz
/// function; `even` replaces `w(z)` by `w(z^2)`.
pub fn self_map(rng: &mut ChaCha8Rng, order: usize, even: bool) -> Result<(Cert, String)> {
    let c = in_disk(rng, 0.9);
    let s = schwarz(rng, order)?;
    let w = if even { series::compose(&s.w, &TruncatedSeries::monomial(2, ONE, order))? } else { s.w };
    let phi = LinearFractional::automorphism(c).compose_with(&w)?;
    let label = format!("automorphism({:.4}{:+.4}i) o {}{}", c.re, c.im, s.label, if even { " (z^2)" } else { "" });
    Ok((Cert::bounded(phi, 1.0), label))
}

/// Outer functions `f` of the subordination and majorization pairs.
#[derive(Clone, Debug)]
pub enum Outer {
    Family(Family),
    Poly(Vec<Complex64>),
    /// Odd part `(F(z) - F(-z))/2` of a family member.
    OddPart(Family),
}

/// Which outer functions to draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pool {
    Any,
    /// `f(0) = 0`.
    VanishingAtZero,
    Odd,
}

impl Outer {
    pub fn label(&self) -> String {
        match self {
            Outer::Family(f) => format!("{f:?}"),
            Outer::Poly(c) => format!("polynomial of degree {}", c.len() - 1),
            Outer::OddPart(f) => format!("odd part of {f:?}"),
        }
    }

    pub fn sup(&self) -> f64 {
        match self {
            Outer::Family(f) | Outer::OddPart(f) => f.sup_bound(),
            Outer::Poly(c) => c.iter().map(|x| x.norm()).sum(),
        }
    }

    pub fn series(&self, order: usize) -> Result<Cert> {
        let s = match self {
            Outer::Family(f) => f.generate(order)?,
            Outer::Poly(c) => TruncatedSeries::polynomial(c, order),
            Outer::OddPart(f) => f.generate(order)?.odd_part(),
        };
        Ok(Cert::bounded(s, self.sup()))
    }

    /// `f o w`, bounded by the same constant as `f`.
    pub fn compose(&self, w: &TruncatedSeries) -> Result<Cert> {
        let s = match self {
            Outer::Family(f) => f.compose_with(w)?,
            Outer::Poly(c) => series::compose(&TruncatedSeries::polynomial(c, w.order()), w)?,
            Outer::OddPart(f) => {
                let plus = f.compose_with(w)?;
                let minus = f.compose_with(&-w)?;
                (&plus - &minus).scale(Complex64::new(0.5, 0.0))
            }
        };
        Ok(Cert::bounded(s, self.sup()))
    }
}

fn random_poly(rng: &mut ChaCha8Rng, pool: Pool) -> Vec<Complex64> {
    let degree = rng.gen_range(1..=6);
    let mut c: Vec<_> = (0..=degree).map(|_| in_disk(rng, 1.0)).collect();
    match pool {
        Pool::Any => {}
        Pool::VanishingAtZero => c[0] = ZERO,
        Pool::Odd => {
            for (n, x) in c.iter_mut().enumerate() {
                if n % 2 == 0 {
                    *x = ZERO;
                }
            }
            if c.len() < 2 || c[1..].iter().all(|x| *x == ZERO) {
                c = vec![ZERO, ONE];
            }
        }
    }
    c
}

pub fn random_outer(rng: &mut ChaCha8Rng, pool: Pool) -> Outer {
    let a = rng.gen_range(0.0..0.95);
    match pool {
        Pool::Any | Pool::VanishingAtZero => {
            let choice = rng.gen_range(0..8);
            match (choice, pool) {
                (0, Pool::Any) => Outer::Family(Family::MobiusFa { a }),
                (0, _) => Outer::Family(Family::GA { a }),
                (1, _) => Outer::Family(Family::XiA { a }),
                (2, _) => Outer::Family(Family::KAlpha { alpha: rng.gen_range(0.3..=1.0) }),
                (3, _) => Outer::Family(Family::KAConvex { a: rng.gen_range(0.0..0.8) }),
                (4, Pool::Any) => Outer::Family(Family::IntroSquare { alpha1: rng.gen_range(0.05..0.95) }),
                (4, _) => Outer::Family(Family::BlaschkeWitness {
                    zeros: families::schwarz_zeros(rng.gen(), rng.gen_range(0..=3)),
                }),
                (5, _) => Outer::Family(Family::RemarkProduct),
                _ => Outer::Poly(random_poly(rng, pool)),
            }
        }
        Pool::Odd => match rng.gen_range(0..5) {
            0 => Outer::Family(Family::GA { a }),
            1 => Outer::OddPart(Family::MobiusFa { a }),
            2 => Outer::OddPart(Family::KAConvex { a: rng.gen_range(0.0..0.8) }),
            3 => Outer::OddPart(Family::KAlpha { alpha: rng.gen_range(0.3..=1.0) }),
            _ => Outer::Poly(random_poly(rng, pool)),
        },
    }
}

/// Largest even-indexed coefficient modulus; zero for an odd series.
pub fn even_residue(s: &TruncatedSeries) -> f64 {
    s.coeffs().iter().step_by(2).map(|c| c.norm()).fold(0.0, f64::max)
}

/// Certified bounds on `max_{|z| = r} |f(z)|`.
///
/// The circle is sampled at 720 equispaced points. Each arc around a sample
/// is bounded by the tangent-line estimate `max |F(t0) +- F'(t0) h|` plus
/// `sup|F''| h^2 / 2` with `F(t) = f(r e^{it})`, and arcs whose bound exceeds
/// the best sample by more than `1e-11` are bisected. The explicit terms
/// negligible at this radius and the series tail are added at the end.
pub fn circle_sup(f: &Cert, r: f64) -> Result<MajorantValue> {
    const POINTS: usize = 720;
    const SLACK: f64 = 1e-11;
    const MAX_DEPTH: u32 = 60;
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("circle radius must lie in [0, 1), got {r}")));
    }
    let coeffs = f.series.coeffs();
    // Drop the terms whose combined contribution is below 1e-15.
    let mut degree = coeffs.len() - 1;
    let mut dropped = 0.0;
    let powers: Vec<f64> = std::iter::successors(Some(1.0), |p| Some(p * r)).take(coeffs.len()).collect();
    while degree > 0 {
        let term = coeffs[degree].norm() * powers[degree];
        if dropped + term > 1e-15 {
            break;
        }
        dropped += term;
        degree -= 1;
    }
    let p = &coeffs[..=degree];
    let second: f64 = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| (n * n) as f64 * c.norm() * powers[n])
        .sum();
    // F'(t) = i z p'(z) and |F''(t)| <= sum n^2 |a_n| r^n.
    let eval = |t: f64| {
        let z = Complex64::from_polar(r, t);
        let mut v = ZERO;
        let mut d = ZERO;
        for c in p.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, Complex64::new(0.0, 1.0) * z * d)
    };
    let h = 2.0 * PI / POINTS as f64;
    let mut best: f64 = 0.0;
    let mut stack = Vec::with_capacity(POINTS);
    for j in 0..POINTS {
        let t = j as f64 * h;
        let (v, d) = eval(t);
        best = best.max(v.norm());
        stack.push((t, 0.5 * h, v, d, 0u32));
    }
    let mut leftover: f64 = 0.0;
    while let Some((t, half, v, d, depth)) = stack.pop() {
        let ub = (v + d * half).norm().max((v - d * half).norm()) + 0.5 * second * half * half;
        if ub <= best + SLACK {
            continue;
        }
        if depth >= MAX_DEPTH {
            leftover = leftover.max(ub);
            continue;
        }
        let quarter = 0.5 * half;
        for tc in [t - quarter, t + quarter] {
            let (vc, dc) = eval(tc);
            best = best.max(vc.norm());
            stack.push((tc, quarter, vc, dc, depth + 1));
        }
    }
    let tail = f.tail_bound(r);
    if !tail.is_finite() {
        return Err(domain(format!("no tail certificate converges at r = {r}")));
    }
    let upper = (best + SLACK).max(leftover) + dropped + tail;
    Ok(MajorantValue { lower: (best - dropped - tail).max(0.0), upper })
}
