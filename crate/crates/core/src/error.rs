use crate::potentials::EquationKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("c = {c} is outside the admissible interval {interval} for {kind} with b = {b}")]
    InadmissibleC {
        kind: EquationKind,
        b: f64,
        c: f64,
        interval: String,
    },

    #[error(
        "defocusing mKdV with b = {b}, c = {c} has discriminant {discriminant} >= 0; \
         F'(0) < 0 there and no admissible turning point exists"
    )]
    DefocusingNonnegativeDiscriminant { b: f64, c: f64, discriminant: f64 },

    #[error("radicand of the period integral is not positive for {kind} with b = {b}, c = {c}")]
    NonpositiveRadicand { kind: EquationKind, b: f64, c: f64 },

    #[error(
        "period integral is near-degenerate for {kind} with b = {b}, c = {c} \
         (min radicand / max radicand = {ratio:e}); the integral diverges at this parameter endpoint"
    )]
    NearDegenerate {
        kind: EquationKind,
        b: f64,
        c: f64,
        ratio: f64,
    },

    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    #[error("no nontrivial solution exists for {kind} with b = {b}")]
    NoSolution { kind: EquationKind, b: f64 },

    #[error("could not bracket the root of I(b, c) = 1 for {kind} with b = {b}: {detail}")]
    BracketFailure {
        kind: EquationKind,
        b: f64,
        detail: String,
    },

    #[error("interval length must be positive, got L = {0}")]
    NonpositiveLength(f64),

    #[error("sample count must be odd and at least {min}, got {got}")]
    InvalidSampleCount { got: usize, min: usize },

    #[error("profile integration blew up at x = {x}")]
    IntegrationBlowup { x: f64 },

    #[error("boundary mismatch {residual:e} exceeds tolerance {tol:e} after re-solving c")]
    BoundaryMismatch { residual: f64, tol: f64 },

    #[error("{0}")]
    Mismatch(String),

    #[error(
        "harmonic n = {n} violates existence for {kind}: a L^2 = {al2} against 4 pi^2 n^2 = {threshold}"
    )]
    ExistenceViolation {
        kind: EquationKind,
        n: u32,
        al2: f64,
        threshold: f64,
    },

    #[error("harmonic families with n = {n} are not available for {kind}")]
    UnsupportedKind { kind: EquationKind, n: u32 },

    #[error("harmonic index must be at least 1, got {0}")]
    InvalidHarmonic(u32),

    #[error("sample grid is not uniform (spacing deviates by {deviation:e})")]
    NonuniformGrid { deviation: f64 },

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
}

impl Error {
    /// True when the error is a mathematical verdict (no solution) rather
    /// than a numerical failure.
    pub fn is_nonexistence(&self) -> bool {
        matches!(
            self,
            Error::NoSolution { .. } | Error::ExistenceViolation { .. }
        )
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}
