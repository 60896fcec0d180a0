//! Independent checks of a sampled solution.
//!
//! Residuals are computed from the samples alone (plus the equation
//! parameters), never from solver internals:
//!
//! * energy `1/2 y'^2 + F(y)`, which vanishes on the orbit through `(0, 0)`;
//! * the third-order equation with centered differences;
//! * consistency of the stored slope column with the value column;
//! * boundary values and the number of arches (fundamental period);
//! * a second construction of the curve by inverting the time integral.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::period_integral::{partial_time, period_integral, time_density};
use crate::potentials::{potential_value, turning_points, EquationKind};
use crate::profile::{profile_normalized, Domain, SolutionProfile};

/// Samples excluded from each end of the finite-difference residuals.
const EDGE_SKIP: usize = 3;
const MIN_FD_SAMPLES: usize = 2 * EDGE_SKIP + 1;

/// Pass/fail thresholds, overridable per run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub energy: f64,
    pub ode3: f64,
    pub boundary: f64,
    /// Stored `y'` against the centered difference of `y`.
    pub slope: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            energy: 1e-6,
            ode3: 1e-5,
            boundary: 1e-6,
            slope: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryResidual {
    pub left_value: f64,
    pub right_value: f64,
    pub right_slope: f64,
    pub left_slope: f64,
}

impl BoundaryResidual {
    pub fn max(&self) -> f64 {
        self.left_value
            .max(self.right_value)
            .max(self.right_slope)
            .max(self.left_slope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Energy residual of the profile mapped back to `[-1, 1]`.
    pub energy: f64,
    /// Third-order residual in the profile's own domain.
    pub ode3: f64,
    pub slope: f64,
    pub boundary: BoundaryResidual,
    /// Largest deviation from evenness about the domain center.
    pub symmetry: f64,
    pub arches: usize,
    pub measured_period: f64,
    pub period_ok: bool,
    pub passed: bool,
}

/// Normalized `(x, y, y')` view of any profile together with `(b, c)`.
fn normalized_view(profile: &SolutionProfile) -> (EquationKind, f64, Vec<(f64, f64, f64)>) {
    match profile.domain {
        Domain::Normalized { kind, b } => (
            kind,
            b,
            profile.samples.iter().map(|s| (s.x, s.y, s.dy)).collect(),
        ),
        Domain::Physical { kind, a, length } => {
            let half = 0.5 * length;
            let scale = kind.amplitude_scale(length);
            let samples = profile
                .samples
                .iter()
                .map(|s| (s.x / half - 1.0, s.y / scale, s.dy * half / scale))
                .collect();
            (kind, a * length * length / 4.0, samples)
        }
    }
}

/// `max |1/2 y'^2 + F(y)|` over the samples of a normalized profile.
pub fn energy_residual(profile: &SolutionProfile, kind: EquationKind, b: f64, c: f64) -> f64 {
    profile
        .samples
        .iter()
        .map(|s| (0.5 * s.dy * s.dy + potential_value(kind, b, c, s.y)).abs())
        .fold(0.0, f64::max)
}

fn uniform_step(profile: &SolutionProfile) -> Result<f64> {
    let n = profile.samples.len();
    if n < MIN_FD_SAMPLES {
        return Err(Error::TooFewSamples {
            got: n,
            min: MIN_FD_SAMPLES,
        });
    }
    let (first, last) = (profile.samples[0].x, profile.samples[n - 1].x);
    let h = (last - first) / (n - 1) as f64;
    let deviation = profile
        .samples
        .windows(2)
        .map(|w| (w[1].x - w[0].x - h).abs())
        .fold(0.0, f64::max);
    if !(h > 0.0) || deviation > 1e-6 * h {
        return Err(Error::NonuniformGrid { deviation });
    }
    Ok(h)
}

/// `max |y''' + coefficient y' + N'(y) y'|` over interior samples.
///
/// `y'''` is the 7-point (6th-order) centered second difference of the
/// stored `y'` column; `coefficient` is `b` on `[-1, 1]` or `a` on `[0, L]`.
/// The 5-point rule's own truncation error reaches `1e-5` on steep profiles
/// (`b = 100`) at 2001 samples.
pub fn ode3_residual(
    profile: &SolutionProfile,
    kind: EquationKind,
    coefficient: f64,
) -> Result<f64> {
    let h = uniform_step(profile)?;
    let s = &profile.samples;
    let inv = 1.0 / (180.0 * h * h);
    let residual = (EDGE_SKIP..s.len() - EDGE_SKIP)
        .map(|i| {
            let d3 = (2.0 * (s[i - 3].dy + s[i + 3].dy) - 27.0 * (s[i - 2].dy + s[i + 2].dy)
                + 270.0 * (s[i - 1].dy + s[i + 1].dy)
                - 490.0 * s[i].dy)
                * inv;
            (d3 + coefficient * s[i].dy + kind.nonlinearity_slope(s[i].y) * s[i].dy).abs()
        })
        .fold(0.0, f64::max);
    Ok(residual)
}

/// `max |D y - y'|` over interior samples, `D` the 4th-order centered difference.
pub fn slope_residual(profile: &SolutionProfile) -> Result<f64> {
    let h = uniform_step(profile)?;
    let s = &profile.samples;
    let inv = 1.0 / (12.0 * h);
    Ok((EDGE_SKIP..s.len() - EDGE_SKIP)
        .map(|i| {
            let d1 = (s[i - 2].y - 8.0 * s[i - 1].y + 8.0 * s[i + 1].y - s[i + 2].y) * inv;
            (d1 - s[i].dy).abs()
        })
        .fold(0.0, f64::max))
}

pub fn boundary_residual(profile: &SolutionProfile) -> BoundaryResidual {
    match (profile.samples.first(), profile.samples.last()) {
        (Some(first), Some(last)) => BoundaryResidual {
            left_value: first.y.abs(),
            right_value: last.y.abs(),
            right_slope: last.dy.abs(),
            left_slope: first.dy.abs(),
        },
        _ => BoundaryResidual {
            left_value: 0.0,
            right_value: 0.0,
            right_slope: 0.0,
            left_slope: 0.0,
        },
    }
}

/// Number of arches: sign changes of `y'` where `|y|` exceeds half its maximum.
pub fn count_arches(profile: &SolutionProfile) -> usize {
    let peak = profile
        .samples
        .iter()
        .map(|s| s.y.abs())
        .fold(0.0, f64::max);
    if !(peak > 0.0) {
        return 0;
    }
    let mut arches = 0;
    let mut last_sign = 0.0;
    let mut last_high = false;
    for s in &profile.samples {
        if s.dy == 0.0 {
            last_high |= s.y.abs() > 0.5 * peak;
            continue;
        }
        let sign = s.dy.signum();
        let high = s.y.abs() > 0.5 * peak;
        if last_sign != 0.0 && sign != last_sign && (high || last_high) {
            arches += 1;
        }
        last_sign = sign;
        last_high = high;
    }
    arches
}

/// Domain length divided by the arch count, or `None` for a flat profile.
pub fn measured_period(profile: &SolutionProfile) -> Option<f64> {
    let arches = count_arches(profile);
    let (first, last) = (profile.samples.first()?, profile.samples.last()?);
    (arches > 0).then(|| (last.x - first.x) / arches as f64)
}

/// True iff the arch count matches the profile's declared fundamental period:
/// one arch for a base solution, `n` arches for the `n`-th harmonic.
pub fn fundamental_period_check(profile: &SolutionProfile) -> bool {
    match measured_period(profile) {
        Some(period) => {
            (period - profile.fundamental_period).abs() <= 1e-9 * profile.fundamental_period.abs()
        }
        None => false,
    }
}

/// Largest of `|y(x) - y(-x)|` and `|y'(x) + y'(-x)|` about the domain center.
pub fn symmetry_residual(profile: &SolutionProfile) -> f64 {
    let s = &profile.samples;
    let n = s.len();
    (0..n / 2)
        .map(|i| {
            let (l, r) = (&s[i], &s[n - 1 - i]);
            (l.y - r.y).abs().max((l.dy + r.dy).abs())
        })
        .fold(0.0, f64::max)
}

/// Sup-norm distance between the RK4 profile on `[0, 1]` and the curve
/// obtained by inverting the time integral from the boundary.
///
/// The second curve is anchored at `x = 1`, `y = 0`: a sample at `x`
/// corresponds to the angle `theta` with
/// `2 sqrt(k) int_0^theta dphi / sqrt(G(sin^2 phi)) = 1 - x` and to
/// `y = y0 sin^2(theta)`. The ODE profile is anchored at the center, so the
/// two agree only when `I(b, c) = 1`.
pub fn cross_construction_check(
    kind: EquationKind,
    b: f64,
    c: f64,
    n_samples: usize,
) -> Result<f64> {
    let profile = profile_normalized(kind, b, c, n_samples)?;
    let tp = turning_points(kind, b, c)?;
    let half_period = period_integral(kind, b, c, 1e-13)?;
    let prefactor = 2.0 * kind.integral_weight().sqrt();

    let mut distance: f64 = 0.0;
    for s in profile.samples.iter().filter(|s| s.x >= 0.0) {
        let mut elapsed = 1.0 - s.x;
        // Past the crest the quadrature curve continues as its mirror image.
        if elapsed > half_period {
            elapsed = (2.0 * half_period - elapsed).max(0.0);
        }
        let theta = invert_time(elapsed, half_period, |theta| {
            (
                partial_time(kind, b, &tp, theta),
                prefactor * time_density(kind, b, &tp, theta),
            )
        });
        let sin = theta.sin();
        let y = tp.y0 * sin * sin;
        distance = distance.max((y - s.y).abs());
    }
    Ok(distance)
}

/// Solve `time(theta) = target` on `[0, pi/2]` for an increasing `time`
/// with known derivative; Newton with bisection fallback.
fn invert_time(target: f64, total: f64, time: impl Fn(f64) -> (f64, f64)) -> f64 {
    if target <= 0.0 {
        return 0.0;
    }
    if target >= total {
        return FRAC_PI_2;
    }
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    let mut theta = FRAC_PI_2 * target / total;
    for _ in 0..100 {
        let (t, dt) = time(theta);
        let f = t - target;
        if f == 0.0 {
            return theta;
        }
        if f < 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let mut next = theta - f / dt;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - theta).abs() <= 1e-15 {
            return next;
        }
        theta = next;
    }
    theta
}

/// Run every check against `tolerances`.
pub fn verify_profile(
    profile: &SolutionProfile,
    tolerances: &Tolerances,
) -> Result<VerificationReport> {
    let (kind, b, normalized) = normalized_view(profile);
    let energy = normalized
        .iter()
        .map(|&(_, y, dy)| (0.5 * dy * dy + potential_value(kind, b, profile.c, y)).abs())
        .fold(0.0, f64::max);
    let ode3 = ode3_residual(profile, kind, profile.domain.coefficient())?;
    let slope = slope_residual(profile)?;
    let boundary = boundary_residual(profile);
    let symmetry = symmetry_residual(profile);
    let arches = count_arches(profile);
    let period = measured_period(profile).unwrap_or(0.0);
    let period_ok = fundamental_period_check(profile);
    let passed = energy <= tolerances.energy
        && ode3 <= tolerances.ode3
        && slope <= tolerances.slope
        && boundary.max() <= tolerances.boundary
        && period_ok;
    Ok(VerificationReport {
        energy,
        ode3,
        slope,
        boundary,
        symmetry,
        arches,
        measured_period: period,
        period_ok,
        passed,
    })
}
