//! Potentials of the once-integrated stationary equations and their turning points.
//!
//! After one integration each stationary equation on `[-1, 1]` becomes
//! `y'' + F'(y) = 0` with
//!
//! | kind              | `F(y)`                         | reduced factor `F0(y)`   |
//! |-------------------|--------------------------------|--------------------------|
//! | `kdv`             | `y^3/6 + b y^2/2 - c y`        | `y^2 + 3 b y - 6 c`      |
//! | `mkdv-focusing`   | `y^4/12 + b y^2/2 - c y`       | `y^3 + 6 b y - 12 c`     |
//! | `mkdv-defocusing` | `-y^4/12 + b y^2/2 - c y`      | `y^3 - 6 b y + 12 c`     |
//!
//! so that `F = y F0 / 6`, `y F0 / 12` and `-y F0 / 12` respectively. The
//! turning point `y0` is the nonzero root of `F0` that bounds the zero-energy
//! orbit starting at `y = 0`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Which stationary equation is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EquationKind {
    /// `u''' + a u' + u u' = 0`
    Kdv,
    /// `u''' + a u' + u^2 u' = 0`
    MkdvFocusing,
    /// `u''' + a u' - u^2 u' = 0`
    MkdvDefocusing,
}

impl EquationKind {
    pub const ALL: [EquationKind; 3] = [
        EquationKind::Kdv,
        EquationKind::MkdvFocusing,
        EquationKind::MkdvDefocusing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquationKind::Kdv => "kdv",
            EquationKind::MkdvFocusing => "mkdv-focusing",
            EquationKind::MkdvDefocusing => "mkdv-defocusing",
        }
    }

    pub fn is_mkdv(self) -> bool {
        !matches!(self, EquationKind::Kdv)
    }

    /// The constant `k` in `I = sqrt(k) * int_0^1 dt / sqrt(t (1 - t) G(t))`.
    pub fn integral_weight(self) -> f64 {
        match self {
            EquationKind::Kdv => 3.0,
            _ => 6.0,
        }
    }

    /// Nonlinear part `N(y)` of `F'(y) = N(y) + b y - c`.
    pub fn nonlinearity(self, y: f64) -> f64 {
        match self {
            EquationKind::Kdv => 0.5 * y * y,
            EquationKind::MkdvFocusing => y * y * y / 3.0,
            EquationKind::MkdvDefocusing => -y * y * y / 3.0,
        }
    }

    /// `N'(y)`, the coefficient multiplying `y'` in the third-order equation.
    pub fn nonlinearity_slope(self, y: f64) -> f64 {
        match self {
            EquationKind::Kdv => y,
            EquationKind::MkdvFocusing => y * y,
            EquationKind::MkdvDefocusing => -y * y,
        }
    }

    /// Amplitude factor `s` in `u(X) = s * y(2X/L - 1)` for an interval of length `l`.
    pub fn amplitude_scale(self, l: f64) -> f64 {
        match self {
            EquationKind::Kdv => 4.0 / (l * l),
            _ => 2.0 / l,
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EquationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "kdv" => Ok(EquationKind::Kdv),
            "mkdv-focusing" => Ok(EquationKind::MkdvFocusing),
            "mkdv-defocusing" => Ok(EquationKind::MkdvDefocusing),
            other => Err(format!("unknown equation kind `{other}`")),
        }
    }
}

/// An equation on `[-1, 1]` with the single parameter `b = a L^2 / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedProblem {
    pub kind: EquationKind,
    pub b: f64,
}

impl NormalizedProblem {
    pub fn new(kind: EquationKind, b: f64) -> Result<Self> {
        ensure_finite("b", b)?;
        Ok(Self { kind, b })
    }
}

/// Roots of the reduced factor `F0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TurningPoints {
    pub discriminant: f64,
    /// The admissible turning point: the amplitude of the arch.
    pub y0: f64,
    /// Remaining real roots in ascending order; empty when they are complex.
    pub others: Vec<f64>,
}

/// An open interval of `c`, optionally with `c = 0` removed.
///
/// The empty interval is represented by `lower >= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleInterval {
    pub lower: f64,
    pub upper: f64,
    pub punctured_at_zero: bool,
}

impl AdmissibleInterval {
    pub const EMPTY: AdmissibleInterval = AdmissibleInterval {
        lower: 0.0,
        upper: 0.0,
        punctured_at_zero: false,
    };

    pub fn is_empty(&self) -> bool {
        !(self.lower < self.upper)
    }

    pub fn contains(&self, c: f64) -> bool {
        !self.is_empty()
            && self.lower < c
            && c < self.upper
            && !(self.punctured_at_zero && c == 0.0)
    }
}

impl fmt::Display for AdmissibleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("(empty)")
        } else if self.punctured_at_zero {
            write!(f, "({}, 0) U (0, {})", self.lower, self.upper)
        } else {
            write!(f, "({}, {})", self.lower, self.upper)
        }
    }
}

/// `F(y)` for the given kind.
pub fn potential_value(kind: EquationKind, b: f64, c: f64, y: f64) -> f64 {
    let quadratic = 0.5 * b * y * y - c * y;
    match kind {
        EquationKind::Kdv => y * y * y / 6.0 + quadratic,
        EquationKind::MkdvFocusing => y * y * y * y / 12.0 + quadratic,
        EquationKind::MkdvDefocusing => -y * y * y * y / 12.0 + quadratic,
    }
}

/// `F'(y)` for the given kind.
pub fn potential_derivative(kind: EquationKind, b: f64, c: f64, y: f64) -> f64 {
    kind.nonlinearity(y) + b * y - c
}

/// The reduced factor `F0(y)`.
pub fn reduced_factor(kind: EquationKind, b: f64, c: f64, y: f64) -> f64 {
    match kind {
        EquationKind::Kdv => y * y + 3.0 * b * y - 6.0 * c,
        EquationKind::MkdvFocusing => y * y * y + 6.0 * b * y - 12.0 * c,
        EquationKind::MkdvDefocusing => y * y * y - 6.0 * b * y + 12.0 * c,
    }
}

fn reduced_factor_slope(kind: EquationKind, b: f64, y: f64) -> f64 {
    match kind {
        EquationKind::Kdv => 2.0 * y + 3.0 * b,
        EquationKind::MkdvFocusing => 3.0 * y * y + 6.0 * b,
        EquationKind::MkdvDefocusing => 3.0 * y * y - 6.0 * b,
    }
}

/// Discriminant `D` classifying the real roots of `F0`.
pub fn discriminant(kind: EquationKind, b: f64, c: f64) -> f64 {
    match kind {
        EquationKind::Kdv => 9.0 * b * b + 24.0 * c,
        EquationKind::MkdvFocusing => 8.0 * b * b * b + 36.0 * c * c,
        EquationKind::MkdvDefocusing => -8.0 * b * b * b + 36.0 * c * c,
    }
}

/// Values of `c` for which a turning point satisfying the sign conditions exists.
///
/// For both mKdV kinds only the positive representative is returned; the
/// solution for `-c` is the negation `y -> -y`.
pub fn admissible_c_interval(kind: EquationKind, b: f64) -> AdmissibleInterval {
    match kind {
        EquationKind::Kdv if b > 0.0 => AdmissibleInterval {
            lower: -3.0 * b * b / 8.0,
            upper: f64::INFINITY,
            punctured_at_zero: true,
        },
        EquationKind::Kdv | EquationKind::MkdvFocusing => AdmissibleInterval {
            lower: 0.0,
            upper: f64::INFINITY,
            punctured_at_zero: false,
        },
        EquationKind::MkdvDefocusing if b > 0.0 => AdmissibleInterval {
            lower: 0.0,
            upper: defocusing_c_limit(b),
            punctured_at_zero: false,
        },
        EquationKind::MkdvDefocusing => AdmissibleInterval::EMPTY,
    }
}

/// Upper end `(sqrt(2) / 3) b^{3/2}` of the defocusing interval, where `D = 0`.
pub fn defocusing_c_limit(b: f64) -> f64 {
    std::f64::consts::SQRT_2 / 3.0 * b * b.sqrt()
}

/// Turning points of the zero-energy orbit through `y = 0`.
///
/// For the mKdV kinds a negative `c` is accepted when `-c` is admissible; the
/// roots are then the negations of those for `-c`.
pub fn turning_points(kind: EquationKind, b: f64, c: f64) -> Result<TurningPoints> {
    ensure_finite("b", b)?;
    ensure_finite("c", c)?;
    let interval = admissible_c_interval(kind, b);

    if kind.is_mkdv() && c < 0.0 && interval.contains(-c) {
        let mut tp = turning_points(kind, b, -c)?;
        tp.y0 = -tp.y0;
        tp.others = tp.others.iter().rev().map(|y| -y).collect();
        return Ok(tp);
    }
    if !interval.contains(c) {
        return Err(Error::InadmissibleC {
            kind,
            b,
            c,
            interval: interval.to_string(),
        });
    }

    let d = discriminant(kind, b, c);
    let polish = |y: f64| newton_polish(kind, b, c, y);
    let tp = match kind {
        EquationKind::Kdv => {
            let sq = d.sqrt();
            // Pick the cancellation-free root first and recover the other
            // one from the product y0 * y1 = -6c.
            let (y0, y1) = if b >= 0.0 {
                let y1 = -0.5 * (3.0 * b + sq);
                (-6.0 * c / y1, y1)
            } else {
                let y0 = 0.5 * (sq - 3.0 * b);
                (y0, -6.0 * c / y0)
            };
            TurningPoints {
                discriminant: d,
                y0: polish(y0),
                others: vec![polish(y1)],
            }
        }
        EquationKind::MkdvFocusing => {
            if d >= 0.0 {
                let sq = d.sqrt();
                let y0 = if b >= 0.0 {
                    // y0 (y0^2 + 6b) = 12c with y0^2 + 6b = p^2 + 2b + 4b^2/p^2 > 0.
                    let p = (6.0 * c + sq).cbrt();
                    let p2 = p * p;
                    12.0 * c / (p2 + 2.0 * b + 4.0 * b * b / p2)
                } else {
                    (6.0 * c + sq).cbrt() + (6.0 * c - sq).cbrt()
                };
                let y0 = polish(y0);
                let others = if d == 0.0 {
                    vec![-0.5 * y0, -0.5 * y0]
                } else {
                    Vec::new()
                };
                TurningPoints {
                    discriminant: d,
                    y0,
                    others,
                }
            } else {
                let r = (8.0 * b.abs()).sqrt();
                let s = (3.0 * c / (2.0 * b.abs().powi(3)).sqrt()).clamp(-1.0, 1.0);
                let phi = s.acos() / 3.0;
                let y0 = polish(r * phi.cos());
                let mut others = vec![
                    polish(r * (phi - 2.0 * PI / 3.0).cos()),
                    polish(r * (phi - 4.0 * PI / 3.0).cos()),
                ];
                others.sort_by(f64::total_cmp);
                TurningPoints {
                    discriminant: d,
                    y0,
                    others,
                }
            }
        }
        EquationKind::MkdvDefocusing => {
            if d >= 0.0 {
                return Err(Error::DefocusingNonnegativeDiscriminant {
                    b,
                    c,
                    discriminant: d,
                });
            }
            let r = (8.0 * b).sqrt();
            let s = (3.0 * c / (2.0 * b * b * b).sqrt()).clamp(-1.0, 1.0);
            let phi = s.acos() / 3.0;
            let y0 = polish(r * (PI / 3.0 + phi).cos());
            let y1 = polish(-r * phi.cos());
            let y2 = polish(r * (PI / 3.0 - phi).cos());
            if !(y0 > 0.0 && y0 < (2.0 * b).sqrt()) {
                return Err(Error::DefocusingNonnegativeDiscriminant {
                    b,
                    c,
                    discriminant: d,
                });
            }
            TurningPoints {
                discriminant: d,
                y0,
                others: vec![y1, y2],
            }
        }
    };
    Ok(tp)
}

/// At most three Newton steps on `F0`, each accepted only if it does not
/// increase `|F0|`.
fn newton_polish(kind: EquationKind, b: f64, c: f64, mut y: f64) -> f64 {
    let mut residual = reduced_factor(kind, b, c, y).abs();
    for _ in 0..3 {
        if residual == 0.0 {
            break;
        }
        let slope = reduced_factor_slope(kind, b, y);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let candidate = y - reduced_factor(kind, b, c, y) / slope;
        let candidate_residual = reduced_factor(kind, b, c, candidate).abs();
        if candidate_residual <= residual {
            y = candidate;
            residual = candidate_residual;
        } else {
            break;
        }
    }
    y
}
