//! Stationary periodic solutions of the KdV and mKdV equations.
//!
//! The stationary problems
//!
//! ```text
//! u''' + a u' + u u'   = 0      (KdV)
//! u''' + a u' + u^2 u' = 0      (mKdV, focusing)
//! u''' + a u' - u^2 u' = 0      (mKdV, defocusing)
//! u(0) = u(L) = u'(L) = 0
//! ```
//!
//! are mapped to `[-1, 1]`, where the single parameter `b = a L^2 / 4`
//! remains. Integrating once gives a conservative system `y'' + F'(y) = 0`
//! and a nontrivial solution exists exactly when some integration constant
//! `c` makes the half-period integral `I(b, c)` equal to one.
//!
//! The crate is organised along that pipeline:
//!
//! * [`potentials`]: the three potentials, discriminants and turning points.
//! * [`period_integral`]: the singular half-period integral `I(b, c)`.
//! * [`csolver`]: existence verdicts and the monotone solve of `I(b, c) = 1`.
//! * [`profile`]: ODE reconstruction of the curve, physical rescaling,
//!   harmonic families and hill/hole classification.
//! * [`verify`]: energy, ODE and boundary residuals and a second, quadrature
//!   based construction of the same curve.
//! * [`cli`]: the `stationary-kdv` command line front end and its file formats.
//!
//! ```
//! use stationary_kdv::{csolver, EquationKind};
//!
//! let sol = csolver::solve_c(EquationKind::Kdv, 4.0, 1e-8).unwrap();
//! assert!(sol.residual <= 1e-8);
//! assert!(sol.y0 > 0.0); // b < pi^2: a hill
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod csolver;
mod error;
pub mod period_integral;
pub mod potentials;
pub mod profile;
mod quadrature;
pub mod verify;

pub use csolver::NormalizedSolution;
pub use error::{Error, Result};
pub use potentials::{AdmissibleInterval, EquationKind, NormalizedProblem, TurningPoints};
pub use profile::{Classification, Domain, PhysicalProblem, Sample, SolutionProfile};
pub use verify::{Tolerances, VerificationReport};
