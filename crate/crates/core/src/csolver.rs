//! Existence verdicts and the scalar solve of `I(b, c) = 1`.
//!
//! For fixed `b`, `I(b, .)` is strictly monotone on the admissible interval
//! of `c` (decreasing for KdV and focusing mKdV, increasing for defocusing
//! mKdV), so the constant `c` is found by bracketing followed by a
//! safeguarded bisection/false-position iteration.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::period_integral::{self, DEFAULT_REL_TOL};
use crate::potentials::{admissible_c_interval, turning_points, EquationKind};

/// Default bound on `|I(b, c) - 1|`.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Solutions with `|b - pi^2|` below this are flagged as near-degenerate.
pub const NEAR_THRESHOLD_WIDTH: f64 = 1e-6;

const MAX_EXPANSIONS: usize = 200;
const MAX_ITERATIONS: u32 = 400;
const ENDPOINT_MARGIN: f64 = 1e-9;

/// The critical value `b = pi^2` (equivalently `a L^2 = 4 pi^2`).
pub const CRITICAL_B: f64 = PI * PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedSolution {
    pub kind: EquationKind,
    pub b: f64,
    pub c: f64,
    /// Signed amplitude at the center `x = 0`.
    pub y0: f64,
    /// `|I(b, c) - 1|`
    pub residual: f64,
    /// Root-finding iterations after the bracket was found.
    pub iterations: u32,
    /// Total evaluations of `I`, bracketing included.
    pub evaluations: u32,
    /// `b` lies within [`NEAR_THRESHOLD_WIDTH`] of `pi^2`; the amplitude is
    /// close to zero and the solve is poorly conditioned.
    pub near_degenerate: bool,
}

impl NormalizedSolution {
    /// The solution for `-c`, i.e. the profile `y -> -y` (mKdV only).
    pub fn sign_flipped(&self) -> Option<NormalizedSolution> {
        self.kind.is_mkdv().then(|| NormalizedSolution {
            c: -self.c,
            y0: -self.y0,
            ..*self
        })
    }
}

/// Whether a nontrivial solution with fundamental period 2 exists on `[-1, 1]`.
pub fn existence(kind: EquationKind, b: f64) -> bool {
    if !b.is_finite() {
        return false;
    }
    match kind {
        EquationKind::Kdv => b != CRITICAL_B,
        EquationKind::MkdvFocusing => b < CRITICAL_B,
        EquationKind::MkdvDefocusing => b > CRITICAL_B,
    }
}

/// Solve `I(b, c) = 1` to `|I - 1| <= tol` with the default quadrature tolerance.
pub fn solve_c(kind: EquationKind, b: f64, tol: f64) -> Result<NormalizedSolution> {
    solve_c_with(kind, b, tol, DEFAULT_REL_TOL)
}

/// As [`solve_c`], with an explicit quadrature tolerance. The tolerance
/// actually used is never looser than `tol / 100`.
pub fn solve_c_with(
    kind: EquationKind,
    b: f64,
    tol: f64,
    quad_tol: f64,
) -> Result<NormalizedSolution> {
    ensure_finite("b", b)?;
    if !(tol > 0.0) {
        return Err(Error::NonFinite {
            name: "tol",
            value: tol,
        });
    }
    if !existence(kind, b) {
        return Err(Error::NoSolution { kind, b });
    }
    let quad_tol = quad_tol.min(tol * 1e-2);
    let mut f = Objective {
        kind,
        b,
        quad_tol,
        evaluations: 0,
    };

    let (mut lo, mut hi) = bracket(&mut f)?;
    log::debug!(
        "{kind} b={b}: bracket c in [{}, {}] after {} evaluations",
        lo.c,
        hi.c,
        f.evaluations
    );

    let finish = |f: &Objective, c: f64, h: f64, iterations: u32| -> Result<NormalizedSolution> {
        let tp = turning_points(kind, b, c)?;
        Ok(NormalizedSolution {
            kind,
            b,
            c,
            y0: tp.y0,
            residual: h.abs(),
            iterations,
            evaluations: f.evaluations,
            near_degenerate: (b - CRITICAL_B).abs() < NEAR_THRESHOLD_WIDTH,
        })
    };

    for p in [lo, hi] {
        if p.h.abs() <= tol {
            return finish(&f, p.c, p.h, 0);
        }
    }

    // `lo.c < hi.c`; signs of `h` are opposite. Illinois-modified false
    // position once the bracket is narrow, bisection otherwise.
    let mut retained_side: i8 = 0;
    for iteration in 1..=MAX_ITERATIONS {
        let width = hi.c - lo.c;
        let scale = lo.c.abs().max(hi.c.abs()).max(1.0);
        if width <= 1e-14 * scale {
            break;
        }
        let narrow = width <= 1e-2 * lo.c.abs().max(hi.c.abs());
        let mut c = 0.5 * (lo.c + hi.c);
        if narrow && lo.h.is_finite() && hi.h.is_finite() {
            let secant = hi.c - hi.h * (hi.c - lo.c) / (hi.h - lo.h);
            if secant > lo.c && secant < hi.c {
                c = secant;
            }
        }
        let h = f.eval(c)?;
        if h.abs() <= tol {
            return finish(&f, c, h, iteration);
        }
        let point = Point { c, h };
        if (h > 0.0) == (lo.h > 0.0) {
            lo = point;
            if retained_side == 1 {
                hi.h *= 0.5;
            }
            retained_side = 1;
        } else {
            hi = point;
            if retained_side == -1 {
                lo.h *= 0.5;
            }
            retained_side = -1;
        }
    }
    Err(Error::NonConvergence {
        what: "c solve",
        detail: format!(
            "{kind} b = {b}: bracket [{}, {}] collapsed before |I - 1| <= {tol:e}",
            lo.c, hi.c
        ),
    })
}

#[derive(Debug, Clone, Copy)]
struct Point {
    c: f64,
    /// `I(b, c) - 1`; `+inf` where the integral is numerically divergent.
    h: f64,
}

struct Objective {
    kind: EquationKind,
    b: f64,
    quad_tol: f64,
    evaluations: u32,
}

impl Objective {
    fn eval(&mut self, c: f64) -> Result<f64> {
        self.evaluations += 1;
        match period_integral::period_integral(self.kind, self.b, c, self.quad_tol) {
            Ok(i) => Ok(i - 1.0),
            // The radicand degenerates only next to an endpoint where I -> +inf.
            Err(Error::NearDegenerate { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    }

    fn point(&mut self, c: f64) -> Result<Point> {
        Ok(Point {
            c,
            h: self.eval(c)?,
        })
    }
}

/// Find `(lo, hi)` with `lo.c < hi.c` and `I - 1` of opposite signs.
fn bracket(f: &mut Objective) -> Result<(Point, Point)> {
    let (kind, b) = (f.kind, f.b);
    let iv = admissible_c_interval(kind, b);
    let fail = |detail: String| Error::BracketFailure { kind, b, detail };
    let start = (1e-6f64).max(b.abs() * 1e-3);

    let (below, above) = match kind {
        // Hole branch of KdV: c in (-3b^2/8, 0), I from +inf down to pi/sqrt(b) < 1.
        EquationKind::Kdv if b > CRITICAL_B => {
            let c0 = (-start).max(0.5 * iv.lower);
            let p0 = f.point(c0)?;
            if p0.h < 0.0 {
                let above = toward_endpoint(f, iv.lower)?
                    .ok_or_else(|| fail("no c with I > 1 near -3b^2/8".into()))?;
                (p0, above)
            } else {
                let below = shrink_toward_zero(f, c0, |h| h < 0.0)?
                    .ok_or_else(|| fail("no c with I < 1 near 0-".into()))?;
                (below, p0)
            }
        }
        // Decreasing on (0, inf): I -> 0 as c -> inf.
        EquationKind::Kdv | EquationKind::MkdvFocusing => {
            let p0 = f.point(start)?;
            if p0.h < 0.0 {
                let above = shrink_toward_zero(f, start, |h| h > 0.0)?
                    .ok_or_else(|| fail("no c with I > 1 near 0+".into()))?;
                (p0, above)
            } else {
                let mut c = start;
                let mut below = None;
                for _ in 0..MAX_EXPANSIONS {
                    c *= 2.0;
                    let p = f.point(c)?;
                    if p.h < 0.0 {
                        below = Some(p);
                        break;
                    }
                }
                let below = below.ok_or_else(|| fail("doubling never produced I < 1".into()))?;
                // The previous doubling step is the tightest point known to be above.
                let above = f.point(below.c * 0.5)?;
                if above.h > 0.0 {
                    (below, above)
                } else {
                    (below, p0)
                }
            }
        }
        // Increasing on (0, (sqrt 2 / 3) b^{3/2}): from pi/sqrt(b) < 1 up to +inf.
        EquationKind::MkdvDefocusing => {
            let c0 = start.min(0.5 * iv.upper);
            let p0 = f.point(c0)?;
            if p0.h < 0.0 {
                let above = toward_endpoint(f, iv.upper)?
                    .ok_or_else(|| fail("no c with I > 1 near the upper limit".into()))?;
                (p0, above)
            } else {
                let below = shrink_toward_zero(f, c0, |h| h < 0.0)?
                    .ok_or_else(|| fail("no c with I < 1 near 0+".into()))?;
                (below, p0)
            }
        }
    };

    if !(below.h < 0.0 && above.h > 0.0) {
        return Err(fail(format!(
            "no sign change between c = {} (I - 1 = {}) and c = {} (I - 1 = {})",
            below.c, below.h, above.c, above.h
        )));
    }
    Ok(if below.c < above.c {
        (below, above)
    } else {
        (above, below)
    })
}

/// Halve `c` toward zero until `accept(I - 1)` holds.
fn shrink_toward_zero(
    f: &mut Objective,
    mut c: f64,
    accept: impl Fn(f64) -> bool,
) -> Result<Option<Point>> {
    for _ in 0..MAX_EXPANSIONS {
        c *= 0.5;
        let p = f.point(c)?;
        if accept(p.h) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Approach a finite divergent endpoint from inside until `I > 1`.
fn toward_endpoint(f: &mut Objective, endpoint: f64) -> Result<Option<Point>> {
    let mut margin = ENDPOINT_MARGIN;
    for _ in 0..8 {
        let p = f.point(endpoint * (1.0 - margin))?;
        if p.h > 0.0 {
            return Ok(Some(p));
        }
        margin *= 0.1;
    }
    Ok(None)
}
