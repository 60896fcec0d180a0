//! The half-period integral `I(b, c)`.
//!
//! With `y = y0 t` the time needed to travel between the turning points
//! `0` and `y0` of the zero-energy orbit is
//!
//! ```text
//! I(b, c) = sqrt(k) * int_0^1 dt / sqrt(t (1 - t) G(t))
//! ```
//!
//! where `k = 3` for KdV and `k = 6` for both mKdV kinds, and `G` is the
//! remaining factor of `-2F`. Substituting `t = sin^2(theta)` removes both
//! inverse square-root endpoint singularities:
//!
//! ```text
//! I(b, c) = 2 sqrt(k) * int_0^{pi/2} dtheta / sqrt(G(sin^2 theta))
//! ```
//!
//! which is smooth whenever `G > 0` on `[0, 1]` and is evaluated with
//! Gauss-Legendre rules of doubling order.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::potentials::{turning_points, EquationKind, TurningPoints};
use crate::quadrature;

/// Default relative tolerance between successive Gauss-Legendre estimates.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Radicands below this fraction of their maximum are treated as the
/// divergent endpoint of the parameter interval.
pub const DEGENERACY_RATIO: f64 = 1e-12;

/// A converged value of `I(b, c)` and the rule order that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Difference to the previous rule on the ladder.
    pub abs_change: f64,
    pub order: usize,
}

/// The radicand `G(t)` for turning points `tp`.
pub fn radicand(kind: EquationKind, b: f64, tp: &TurningPoints, t: f64) -> f64 {
    let y0 = tp.y0;
    match kind {
        EquationKind::Kdv => y0 * t - tp.others[0],
        EquationKind::MkdvFocusing => y0 * y0 * (t * t + t + 1.0) + 6.0 * b,
        EquationKind::MkdvDefocusing => 6.0 * b - y0 * y0 * (1.0 + t + t * t),
    }
}

/// `I(b, c)` to relative accuracy `rel_tol`.
pub fn period_integral(kind: EquationKind, b: f64, c: f64, rel_tol: f64) -> Result<f64> {
    period_integral_estimate(kind, b, c, rel_tol).map(|e| e.value)
}

pub fn period_integral_estimate(
    kind: EquationKind,
    b: f64,
    c: f64,
    rel_tol: f64,
) -> Result<IntegralEstimate> {
    let tp = turning_points(kind, b, c)?;
    integrate_from_turning_points(kind, b, c, &tp, rel_tol)
}

pub(crate) fn integrate_from_turning_points(
    kind: EquationKind,
    b: f64,
    c: f64,
    tp: &TurningPoints,
    rel_tol: f64,
) -> Result<IntegralEstimate> {
    // G is monotone on [0, 1] for every kind, so its extremes sit at the ends.
    let g0 = radicand(kind, b, tp, 0.0);
    let g1 = radicand(kind, b, tp, 1.0);
    let (gmin, gmax) = (g0.min(g1), g0.max(g1));
    if !(gmin > 0.0) || !gmax.is_finite() {
        return Err(Error::NonpositiveRadicand { kind, b, c });
    }
    if gmin < DEGENERACY_RATIO * gmax {
        return Err(Error::NearDegenerate {
            kind,
            b,
            c,
            ratio: gmin / gmax,
        });
    }

    let prefactor = 2.0 * kind.integral_weight().sqrt();
    let mut previous: Option<f64> = None;
    for rule in quadrature::levels() {
        let mut nonpositive = false;
        let sum = rule.integrate(0.0, FRAC_PI_2, |theta| {
            let s = theta.sin();
            let g = radicand(kind, b, tp, s * s);
            if g <= 0.0 {
                nonpositive = true;
                return 0.0;
            }
            1.0 / g.sqrt()
        });
        if nonpositive {
            return Err(Error::NonpositiveRadicand { kind, b, c });
        }
        let value = prefactor * sum;
        if let Some(prev) = previous {
            let change = (value - prev).abs();
            if change <= rel_tol * value.abs() {
                return Ok(IntegralEstimate {
                    value,
                    abs_change: change,
                    order: rule.order(),
                });
            }
        }
        previous = Some(value);
    }
    Err(Error::NonConvergence {
        what: "period integral",
        detail: format!(
            "{kind} b = {b} c = {c}: no agreement to {rel_tol:e} up to {} nodes",
            quadrature::MAX_ORDER
        ),
    })
}

/// Time `2 sqrt(k) int_0^theta dphi / sqrt(G(sin^2 phi))` to travel from the
/// boundary value `y = 0` to `y = y0 sin^2(theta)`.
///
/// Uses a fixed 64-node rule; the integrand is smooth and bounded away from
/// zero on admissible parameters.
pub(crate) fn partial_time(kind: EquationKind, b: f64, tp: &TurningPoints, theta: f64) -> f64 {
    let prefactor = 2.0 * kind.integral_weight().sqrt();
    prefactor * quadrature::rule(2).integrate(0.0, theta, |phi| time_density(kind, b, tp, phi))
}

/// Integrand of [`partial_time`] divided by the prefactor.
pub(crate) fn time_density(kind: EquationKind, b: f64, tp: &TurningPoints, phi: f64) -> f64 {
    let s = phi.sin();
    1.0 / radicand(kind, b, tp, s * s).sqrt()
}
