//! Solution curves: reconstruction on `[-1, 1]`, rescaling to `[0, L]`,
//! harmonic families and hill/hole classification.
//!
//! The normalized curve is integrated with classical RK4 from the center
//! `x = 0`, where `y = y0` and `y' = 0`, out to `x = 1`; the left half is the
//! mirror image since solutions are even about the center.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::csolver::{self, NormalizedSolution};
use crate::error::{ensure_finite, Error, Result};
use crate::period_integral::{period_integral, DEFAULT_REL_TOL};
use crate::potentials::{turning_points, EquationKind, NormalizedProblem};
use crate::verify::{self, Tolerances, VerificationReport};

pub const DEFAULT_SAMPLES: usize = 2001;

/// RK4 steps per output sample interval.
pub const RK4_SUBSTEPS: usize = 8;

/// Fewest RK4 steps across the half domain, whatever the sample count.
pub const MIN_RK4_STEPS: usize = 8000;

/// `|y(1)|` above which the pipeline re-solves `c` before giving up.
pub const BOUNDARY_RESOLVE_TRIGGER: f64 = 1e-5;

/// A stationary problem on `[0, L]` with drift coefficient `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalProblem {
    pub kind: EquationKind,
    pub a: f64,
    #[serde(rename = "L")]
    pub length: f64,
}

impl PhysicalProblem {
    pub fn new(kind: EquationKind, a: f64, length: f64) -> Result<Self> {
        ensure_finite("a", a)?;
        ensure_finite("L", length)?;
        if !(length > 0.0) {
            return Err(Error::NonpositiveLength(length));
        }
        Ok(Self { kind, a, length })
    }
}

/// Where a profile lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum Domain {
    /// `[-1, 1]` with parameter `b`.
    Normalized { kind: EquationKind, b: f64 },
    /// `[0, L]` with coefficient `a`.
    Physical {
        kind: EquationKind,
        a: f64,
        #[serde(rename = "L")]
        length: f64,
    },
}

impl Domain {
    pub fn kind(&self) -> EquationKind {
        match *self {
            Domain::Normalized { kind, .. } | Domain::Physical { kind, .. } => kind,
        }
    }

    /// The linear coefficient of the third-order equation: `b` or `a`.
    pub fn coefficient(&self) -> f64 {
        match *self {
            Domain::Normalized { b, .. } => b,
            Domain::Physical { a, .. } => a,
        }
    }

    pub fn normalized_b(&self) -> f64 {
        match *self {
            Domain::Normalized { b, .. } => b,
            Domain::Physical { a, length, .. } => a * length * length / 4.0,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Domain::Normalized { .. } => (-1.0, 1.0),
            Domain::Physical { length, .. } => (0.0, length),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Hill,
    Hole,
}

impl Classification {
    pub fn from_amplitude(y0: f64) -> Self {
        if y0 > 0.0 {
            Classification::Hill
        } else {
            Classification::Hole
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Hill => "hill",
            Classification::Hole => "hole",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    /// `dy/dx`
    pub dy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionProfile {
    pub domain: Domain,
    /// Integration constant of the normalized equation.
    pub c: f64,
    /// Signed value at the center of an arch (`y0` or `u0`).
    pub amplitude: f64,
    pub samples: Vec<Sample>,
    pub fundamental_period: f64,
    /// Number of arches `n` of a harmonic family member (1 for base solutions).
    pub harmonic: u32,
    pub classification: Classification,
    pub diagnostics: Option<VerificationReport>,
}

impl SolutionProfile {
    /// The zero solution sampled on the domain.
    pub fn trivial(domain: Domain, n_samples: usize) -> Result<Self> {
        check_sample_count(n_samples)?;
        let (lo, hi) = domain.bounds();
        let last = (n_samples - 1) as f64;
        let samples = (0..n_samples)
            .map(|i| Sample {
                x: lo + (hi - lo) * i as f64 / last,
                y: 0.0,
                dy: 0.0,
            })
            .collect();
        Ok(Self {
            domain,
            c: 0.0,
            amplitude: 0.0,
            samples,
            fundamental_period: hi - lo,
            harmonic: 1,
            classification: Classification::Hole,
            diagnostics: None,
        })
    }

    pub fn kind(&self) -> EquationKind {
        self.domain.kind()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn center(&self) -> Option<&Sample> {
        self.samples.get(self.samples.len() / 2)
    }
}

/// Numerical settings of the full solve pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveSettings {
    pub solve_tol: f64,
    pub quad_tol: f64,
    pub n_samples: usize,
    pub tolerances: Tolerances,
}

impl Default for SolveSettings {
    fn default() -> Self {
        Self {
            solve_tol: csolver::DEFAULT_TOL,
            quad_tol: DEFAULT_REL_TOL,
            n_samples: DEFAULT_SAMPLES,
            tolerances: Tolerances::default(),
        }
    }
}

fn check_sample_count(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        Err(Error::InvalidSampleCount { got: n, min: 3 })
    } else {
        Ok(())
    }
}

/// Map `[0, L]` onto `[-1, 1]`: `b = a L^2 / 4`.
pub fn normalize(problem: &PhysicalProblem) -> Result<NormalizedProblem> {
    if !(problem.length > 0.0) {
        return Err(Error::NonpositiveLength(problem.length));
    }
    NormalizedProblem::new(
        problem.kind,
        problem.a * problem.length * problem.length / 4.0,
    )
}

/// Integrate `y'' = c - b y - N(y)` from `(y0, 0)` at the center to both ends.
///
/// `n_samples` must be odd so that a sample sits at `x = 0`.
pub fn profile_normalized(
    kind: EquationKind,
    b: f64,
    c: f64,
    n_samples: usize,
) -> Result<SolutionProfile> {
    check_sample_count(n_samples)?;
    let y0 = turning_points(kind, b, c)?.y0;

    let half = (n_samples - 1) / 2;
    let substeps = RK4_SUBSTEPS.max(MIN_RK4_STEPS.div_ceil(half));
    let h = 1.0 / (half * substeps) as f64;
    let accel = |y: f64| c - b * y - kind.nonlinearity(y);
    let blowup_limit = 1e6 * y0.abs().max(1.0);

    let mut right = Vec::with_capacity(half + 1);
    let (mut y, mut v) = (y0, 0.0);
    right.push((y, v));
    for k in 1..=half {
        for _ in 0..substeps {
            let k1y = v;
            let k1v = accel(y);
            let k2y = v + 0.5 * h * k1v;
            let k2v = accel(y + 0.5 * h * k1y);
            let k3y = v + 0.5 * h * k2v;
            let k3v = accel(y + 0.5 * h * k2y);
            let k4y = v + h * k3v;
            let k4v = accel(y + h * k3y);
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        }
        if !(y.is_finite() && v.is_finite()) || y.abs() > blowup_limit {
            return Err(Error::IntegrationBlowup {
                x: k as f64 / half as f64,
            });
        }
        right.push((y, v));
    }

    let mut samples = Vec::with_capacity(n_samples);
    for k in (1..=half).rev() {
        let (y, v) = right[k];
        samples.push(Sample {
            x: -(k as f64 / half as f64),
            y,
            dy: -v,
        });
    }
    for (k, &(y, v)) in right.iter().enumerate() {
        samples.push(Sample {
            x: k as f64 / half as f64,
            y,
            dy: v,
        });
    }

    Ok(SolutionProfile {
        domain: Domain::Normalized { kind, b },
        c,
        amplitude: y0,
        samples,
        fundamental_period: 2.0,
        harmonic: 1,
        classification: Classification::from_amplitude(y0),
        diagnostics: None,
    })
}

/// `u(X) = s y(2X/L - 1)` with `s = 4/L^2` (KdV) or `2/L` (mKdV).
pub fn rescale_to_physical(
    problem: &PhysicalProblem,
    normalized: &SolutionProfile,
) -> Result<SolutionProfile> {
    let expected = normalize(problem)?;
    let Domain::Normalized { kind, b } = normalized.domain else {
        return Err(Error::Mismatch(
            "rescale_to_physical expects a profile on [-1, 1]".into(),
        ));
    };
    if kind != problem.kind {
        return Err(Error::Mismatch(format!(
            "profile is for {kind}, problem is {}",
            problem.kind
        )));
    }
    if (b - expected.b).abs() > 1e-12 * b.abs().max(1.0) {
        return Err(Error::Mismatch(format!(
            "profile has b = {b}, problem has a L^2 / 4 = {}",
            expected.b
        )));
    }

    let length = problem.length;
    let half_length = 0.5 * length;
    let scale = kind.amplitude_scale(length);
    let slope_scale = scale / half_length;
    let samples = normalized
        .samples
        .iter()
        .map(|s| Sample {
            x: half_length * (s.x + 1.0),
            y: scale * s.y,
            dy: slope_scale * s.dy,
        })
        .collect();

    Ok(SolutionProfile {
        domain: Domain::Physical {
            kind,
            a: problem.a,
            length,
        },
        c: normalized.c,
        amplitude: scale * normalized.amplitude,
        samples,
        fundamental_period: length * normalized.fundamental_period / 2.0,
        harmonic: normalized.harmonic,
        classification: normalized.classification,
        diagnostics: None,
    })
}

/// Hill or hole, with the physical amplitude `u0 = u(L/2)`.
///
/// For KdV with `a > 0` the amplitude is the closed form
/// `u0 = (-3a + sqrt(9a^2 + 384 c / L^4)) / 2`, evaluated without
/// cancellation; otherwise it is the rescaled turning point.
pub fn classify(problem: &PhysicalProblem, solution: &NormalizedSolution) -> (Classification, f64) {
    let u0 = match problem.kind {
        EquationKind::Kdv if problem.a > 0.0 => {
            kdv_center_amplitude(problem.a, problem.length, solution.c)
        }
        kind => kind.amplitude_scale(problem.length) * solution.y0,
    };
    (Classification::from_amplitude(solution.y0), u0)
}

/// `(-3a + sqrt(9a^2 + 384 c / L^4)) / 2` for `a > 0`, rationalised.
pub fn kdv_center_amplitude(a: f64, length: f64, c: f64) -> f64 {
    let shift = 384.0 * c / length.powi(4);
    0.5 * shift / (3.0 * a + (9.0 * a * a + shift).sqrt())
}

/// Solve for `c`, integrate the profile and verify it.
///
/// If any boundary residual exceeds `settings.tolerances.boundary`, or
/// `|y(1)|` exceeds [`BOUNDARY_RESOLVE_TRIGGER`], `c` is solved once more at
/// a thousandth of the tolerance before giving up.
pub fn solve_normalized(
    kind: EquationKind,
    b: f64,
    settings: &SolveSettings,
) -> Result<(NormalizedSolution, SolutionProfile)> {
    let boundary_tol = settings.tolerances.boundary.min(BOUNDARY_RESOLVE_TRIGGER);
    let mut tol = settings.solve_tol;
    let mut attempt = 0;
    loop {
        let solution = csolver::solve_c_with(kind, b, tol, settings.quad_tol)?;
        let mut profile = profile_normalized(kind, b, solution.c, settings.n_samples)?;
        let worst = verify::boundary_residual(&profile).max();
        if worst <= boundary_tol || attempt == 1 {
            if worst > boundary_tol {
                return Err(Error::BoundaryMismatch {
                    residual: worst,
                    tol: boundary_tol,
                });
            }
            profile.diagnostics = Some(verify::verify_profile(&profile, &settings.tolerances)?);
            return Ok((solution, profile));
        }
        log::info!(
            "{kind} b={b}: boundary residual {worst:e} > {boundary_tol:e}, re-solving c at {:e}",
            tol * 1e-3
        );
        tol *= 1e-3;
        attempt += 1;
    }
}

/// [`solve_normalized`] followed by [`rescale_to_physical`].
pub fn solve_physical(
    problem: &PhysicalProblem,
    settings: &SolveSettings,
) -> Result<(NormalizedSolution, SolutionProfile)> {
    let normalized = normalize(problem)?;
    let (solution, base) = solve_normalized(problem.kind, normalized.b, settings)?;
    let mut physical = rescale_to_physical(problem, &base)?;
    let (classification, u0) = classify(problem, &solution);
    physical.classification = classification;
    physical.amplitude = u0;
    physical.diagnostics = Some(verify::verify_profile(&physical, &settings.tolerances)?);
    Ok((solution, physical))
}

/// Secant shooting on `c` until the integrated `y'(1)` vanishes to roundoff.
///
/// Returns `None` when the iteration stalls or the refined `c` no longer
/// meets the solve tolerance, in which case the caller keeps the original.
fn refine_endpoint_slope(
    problem: &PhysicalProblem,
    solution: &NormalizedSolution,
    settings: &SolveSettings,
) -> Option<(NormalizedSolution, SolutionProfile)> {
    let (kind, b) = (problem.kind, solution.b);
    let endpoint_slope = |c: f64| {
        profile_normalized(kind, b, c, settings.n_samples)
            .ok()
            .and_then(|p| p.samples.last().map(|s| s.dy))
    };
    let (mut c0, mut g0) = (solution.c, endpoint_slope(solution.c)?);
    let mut c1 = solution.c * (1.0 + 1e-9);
    let mut g1 = endpoint_slope(c1)?;
    let (mut best_c, mut best_g) = if g1.abs() < g0.abs() {
        (c1, g1)
    } else {
        (c0, g0)
    };
    for _ in 0..12 {
        if g1 == g0 {
            break;
        }
        let c2 = c1 - g1 * (c1 - c0) / (g1 - g0);
        if !c2.is_finite() || c2 == c1 {
            break;
        }
        let Some(g2) = endpoint_slope(c2) else { break };
        (c0, g0, c1, g1) = (c1, g1, c2, g2);
        if g2.abs() < best_g.abs() {
            (best_c, best_g) = (c2, g2);
        }
    }
    if best_c == solution.c {
        return None;
    }
    let integral = period_integral(kind, b, best_c, settings.quad_tol.min(1e-13)).ok()?;
    let residual = (integral - 1.0).abs();
    if residual > settings.solve_tol {
        log::debug!("{kind} b={b}: slope refinement moved |I - 1| to {residual:e}, discarded");
        return None;
    }
    let refined = NormalizedSolution {
        c: best_c,
        y0: turning_points(kind, b, best_c).ok()?.y0,
        residual,
        ..*solution
    };
    let normalized = profile_normalized(kind, b, best_c, settings.n_samples).ok()?;
    let mut physical = rescale_to_physical(problem, &normalized).ok()?;
    let (classification, u0) = classify(problem, &refined);
    physical.classification = classification;
    physical.amplitude = u0;
    physical.diagnostics = verify::verify_profile(&physical, &settings.tolerances).ok();
    Some((refined, physical))
}

/// `n^2` for KdV and `n` for mKdV: the factor between the `n`-th family
/// member and its base solution.
pub fn harmonic_amplitude_factor(kind: EquationKind, n: u32) -> f64 {
    let nf = f64::from(n);
    match kind {
        EquationKind::Kdv => nf * nf,
        _ => nf,
    }
}

/// A solution on `[0, L]` with fundamental period `L / n`.
///
/// Built from the base solution for coefficient `a / n^2` as
/// `n^2 u(n X mod L)` (KdV) or `n u(n X mod L)` (focusing mKdV). The output
/// grid has `n (n_samples - 1) + 1` points, so every mapped abscissa
/// `n X mod L` falls exactly on a node of the base grid and the linear
/// resampling reduces to a lookup.
pub fn harmonic_family(
    problem: &PhysicalProblem,
    n: u32,
    settings: &SolveSettings,
) -> Result<(NormalizedSolution, SolutionProfile)> {
    if n == 0 {
        return Err(Error::InvalidHarmonic(n));
    }
    let kind = problem.kind;
    if kind == EquationKind::MkdvDefocusing && n >= 2 {
        return Err(Error::UnsupportedKind { kind, n });
    }
    if n == 1 {
        return solve_physical(problem, settings);
    }
    let nf = f64::from(n);
    let base_problem = PhysicalProblem::new(kind, problem.a / (nf * nf), problem.length)?;
    let base_b = normalize(&base_problem)?.b;
    if !csolver::existence(kind, base_b) {
        return Err(Error::ExistenceViolation {
            kind,
            n,
            al2: problem.a * problem.length * problem.length,
            threshold: 4.0 * csolver::CRITICAL_B * nf * nf,
        });
    }
    let (mut solution, mut base) = solve_physical(&base_problem, settings)?;
    // Copies meet inside the domain, so the endpoint slope left over from the
    // solve tolerance would show up as a kink at every junction.
    if let Some(refined) = refine_endpoint_slope(&base_problem, &solution, settings) {
        (solution, base) = refined;
    }

    let amplitude_factor = harmonic_amplitude_factor(kind, n);
    let slope_factor = amplitude_factor * nf;
    let base_intervals = base.samples.len() - 1;
    let intervals = n as usize * base_intervals;
    let length = problem.length;
    let samples = (0..=intervals)
        .map(|j| {
            let src = &base.samples[j % base_intervals];
            Sample {
                x: length * j as f64 / intervals as f64,
                y: amplitude_factor * src.y,
                dy: slope_factor * src.dy,
            }
        })
        .collect();

    let mut profile = SolutionProfile {
        domain: Domain::Physical {
            kind,
            a: problem.a,
            length,
        },
        c: base.c * amplitude_factor * nf * nf,
        amplitude: amplitude_factor * base.amplitude,
        samples,
        fundamental_period: length / nf,
        harmonic: n,
        classification: base.classification,
        diagnostics: None,
    };
    profile.diagnostics = Some(verify::verify_profile(&profile, &settings.tolerances)?);
    Ok((solution, profile))
}
