//! Reference computations that share no code with the library: adaptive
//! Gauss-Kronrod quadrature in the original `y` variable and root finding
//! by marching plus bisection.

#![allow(dead_code, clippy::excessive_precision)]

use stationary_kdv::EquationKind;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Globally adaptive G7/K15: split the interval with the largest error
/// estimate until the total estimate drops below `tol` (absolute) or the
/// interval budget runs out.
pub fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (value, err) = kronrod(f, a, b);
    let mut parts = vec![(a, b, value, err)];
    for _ in 0..500 {
        let total: f64 = parts.iter().map(|p| p.3).sum();
        if total <= tol {
            break;
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod(f, lo, mid);
        let (v2, e2) = kronrod(f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    parts.iter().map(|p| p.2).sum()
}

/// `int_0^1 g(t, 1 - t) / sqrt(t (1 - t)) dt` for smooth `g`, by `t = s^2`
/// on the left half and `1 - t = s^2` on the right half. Both arguments are
/// passed so that `g` never sees `1 - t` rounded away.
pub fn endpoint_singular(g: &dyn Fn(f64, f64) -> f64, tol: f64) -> f64 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let left = adaptive(
        &|s: f64| 2.0 * g(s * s, 1.0 - s * s) / (1.0 - s * s).sqrt(),
        0.0,
        r,
        tol,
    );
    let right = adaptive(
        &|s: f64| 2.0 * g(1.0 - s * s, s * s) / (1.0 - s * s).sqrt(),
        0.0,
        r,
        tol,
    );
    left + right
}

/// `J = int_0^1 dt / sqrt(t (1 - t) (t + 1))`.
pub fn j_constant() -> f64 {
    endpoint_singular(&|t: f64, _| 1.0 / (t + 1.0).sqrt(), 1e-15)
}

pub fn potential(kind: EquationKind, b: f64, c: f64, y: f64) -> f64 {
    let quartic = y.powi(4) / 12.0;
    let nonlinear = match kind {
        EquationKind::Kdv => y.powi(3) / 6.0,
        EquationKind::MkdvFocusing => quartic,
        EquationKind::MkdvDefocusing => -quartic,
    };
    nonlinear + 0.5 * b * y * y - c * y
}

/// `F', F'', F''', F''''` at `y`.
pub fn potential_derivatives(kind: EquationKind, b: f64, c: f64, y: f64) -> [f64; 4] {
    match kind {
        EquationKind::Kdv => [0.5 * y * y + b * y - c, y + b, 1.0, 0.0],
        EquationKind::MkdvFocusing => [y.powi(3) / 3.0 + b * y - c, y * y + b, 2.0 * y, 2.0],
        EquationKind::MkdvDefocusing => [-y.powi(3) / 3.0 + b * y - c, -y * y + b, -2.0 * y, -2.0],
    }
}

/// First zero of `F` along the direction `sign(c)` from the origin, from the
/// side where `F < 0`.
pub fn turning_point(kind: EquationKind, b: f64, c: f64) -> f64 {
    let dir = c.signum();
    let bound = 1.0 + 12.0 * (b.abs() + c.abs()) + 6.0 * b.abs().sqrt();
    let steps = 100_000;
    let h = bound / steps as f64;
    // F is negative just past the origin in the direction of c.
    let f = |s: f64| potential(kind, b, c, dir * s);
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=steps {
        let s = h * i as f64;
        if f(s) >= 0.0 {
            hi = Some(s);
            break;
        }
        lo = s;
    }
    let mut hi = hi.expect("no turning point below the root bound");
    if lo == 0.0 {
        lo = hi * 1e-12;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    dir * lo
}

/// `int dy / sqrt(-2 F(y))` between `0` and the turning point, written
/// as `|y0| int_0^1 dt / sqrt(-2 F(y0 t))`.
///
/// On the half next to `y0` the potential is evaluated as its Taylor
/// polynomial about `y0` (exact for these quartics, with `F(y0)` dropped),
/// which avoids cancellation in `F(y0 t)` as `t -> 1`.
pub fn period_integral(kind: EquationKind, b: f64, c: f64) -> f64 {
    let y0 = turning_point(kind, b, c);
    let d = potential_derivatives(kind, b, c, y0);
    let g = |t: f64, rest: f64| {
        let w = if t <= 0.5 {
            -2.0 * potential(kind, b, c, y0 * t)
        } else {
            let h = -y0 * rest;
            -2.0 * h * (d[0] + h * (d[1] / 2.0 + h * (d[2] / 6.0 + h * d[3] / 24.0)))
        };
        y0.abs() / (w / (t * rest)).sqrt()
    };
    endpoint_singular(&g, 1e-13)
}

/// Bisection on `I(b, c) = 1` using the reference integral.
pub fn solve_c(kind: EquationKind, b: f64, mut lo: f64, mut hi: f64, decreasing: bool) -> f64 {
    while hi - lo > 1e-12 * lo.abs().max(hi.abs()) {
        let mid = 0.5 * (lo + hi);
        let above = period_integral(kind, b, mid) > 1.0;
        if above == decreasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
