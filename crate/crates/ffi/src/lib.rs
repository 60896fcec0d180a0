//! C interface to the `stationary-kdv` solver.
//!
//! Every entry point returns an [`SkdvStatus`] and writes results through out
//! pointers. On failure a description is kept per thread and can be read with
//! [`skdv_last_error`]. Profiles are opaque handles owned by the caller and
//! released with [`skdv_profile_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stationary_kdv::csolver;
use stationary_kdv::period_integral::period_integral;
use stationary_kdv::potentials::turning_points;
use stationary_kdv::profile::{harmonic_family, solve_normalized, solve_physical, SolveSettings};
use stationary_kdv::{Classification, EquationKind, Error, NormalizedSolution, PhysicalProblem};

pub const SKDV_KIND_KDV: u32 = 0;
pub const SKDV_KIND_MKDV_FOCUSING: u32 = 1;
pub const SKDV_KIND_MKDV_DEFOCUSING: u32 = 2;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkdvStatus {
    Ok = 0,
    /// No nontrivial solution exists for the given parameters.
    NoSolution = 1,
    InvalidArgument = 2,
    NumericalFailure = 3,
    NullPointer = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// Converged root of `I(b, c) = 1`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SkdvSolution {
    pub b: f64,
    pub c: f64,
    pub y0: f64,
    pub residual: f64,
    pub iterations: u32,
    pub evaluations: u32,
}

/// Scalar summary of a profile. `classification` is 1 for a hill and -1 for
/// a hole.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SkdvSummary {
    pub b: f64,
    pub c: f64,
    pub amplitude: f64,
    pub fundamental_period: f64,
    pub harmonic: u32,
    pub classification: i32,
    pub samples: usize,
    pub energy_residual: f64,
    pub ode3_residual: f64,
    pub slope_residual: f64,
    pub boundary_residual: f64,
    pub symmetry_residual: f64,
    pub passed: bool,
}

/// Opaque solved profile.
pub struct SkdvProfile {
    solution: NormalizedSolution,
    profile: stationary_kdv::SolutionProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(error: &Error) -> SkdvStatus {
    match error {
        e if e.is_nonexistence() => SkdvStatus::NoSolution,
        Error::NonFinite { .. }
        | Error::InadmissibleC { .. }
        | Error::DefocusingNonnegativeDiscriminant { .. }
        | Error::NonpositiveLength(_)
        | Error::InvalidSampleCount { .. }
        | Error::UnsupportedKind { .. }
        | Error::InvalidHarmonic(_)
        | Error::TooFewSamples { .. } => SkdvStatus::InvalidArgument,
        _ => SkdvStatus::NumericalFailure,
    }
}

fn kind_of(kind: u32) -> Result<EquationKind, SkdvStatus> {
    match kind {
        SKDV_KIND_KDV => Ok(EquationKind::Kdv),
        SKDV_KIND_MKDV_FOCUSING => Ok(EquationKind::MkdvFocusing),
        SKDV_KIND_MKDV_DEFOCUSING => Ok(EquationKind::MkdvDefocusing),
        other => {
            set_last_error(&format!("unknown equation kind {other}"));
            Err(SkdvStatus::InvalidArgument)
        }
    }
}

/// Runs `body`, records errors and converts panics.
fn guard(body: impl FnOnce() -> Result<(), SkdvStatus>) -> SkdvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            SkdvStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            SkdvStatus::Internal
        }
    }
}

fn lift<T>(result: stationary_kdv::Result<T>) -> Result<T, SkdvStatus> {
    result.map_err(|e| {
        set_last_error(&e.to_string());
        status_of(&e)
    })
}

fn null_check<T>(p: *const T, name: &str) -> Result<(), SkdvStatus> {
    if p.is_null() {
        set_last_error(&format!("`{name}` is null"));
        Err(SkdvStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn settings(n_samples: usize) -> SolveSettings {
    let mut s = SolveSettings::default();
    if n_samples != 0 {
        s.n_samples = n_samples;
    }
    s
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn skdv_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version string"),
        };
    VERSION.as_ptr()
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn skdv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Whether a nontrivial solution exists for `(kind, b)`.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn skdv_existence(kind: u32, b: f64, out: *mut bool) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        let kind = kind_of(kind)?;
        if !b.is_finite() {
            set_last_error("b must be finite");
            return Err(SkdvStatus::InvalidArgument);
        }
        *out = csolver::existence(kind, b);
        Ok(())
    })
}

/// `I(b, c)` at relative tolerance `tol`.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn skdv_period_integral(
    kind: u32,
    b: f64,
    c: f64,
    tol: f64,
    out: *mut f64,
) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        *out = lift(period_integral(kind_of(kind)?, b, c, tol))?;
        Ok(())
    })
}

/// Turning point `y0` for `(kind, b, c)`.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn skdv_turning_point(
    kind: u32,
    b: f64,
    c: f64,
    out: *mut f64,
) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        *out = lift(turning_points(kind_of(kind)?, b, c))?.y0;
        Ok(())
    })
}

/// Solve `I(b, c) = 1` for `c`.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn skdv_solve_c(
    kind: u32,
    b: f64,
    tol: f64,
    out: *mut SkdvSolution,
) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        let s = lift(csolver::solve_c(kind_of(kind)?, b, tol))?;
        *out = SkdvSolution {
            b: s.b,
            c: s.c,
            y0: s.y0,
            residual: s.residual,
            iterations: s.iterations,
            evaluations: s.evaluations,
        };
        Ok(())
    })
}

unsafe fn emit(
    out: *mut *mut SkdvProfile,
    result: stationary_kdv::Result<(NormalizedSolution, stationary_kdv::SolutionProfile)>,
) -> Result<(), SkdvStatus> {
    let (solution, profile) = lift(result)?;
    *out = Box::into_raw(Box::new(SkdvProfile { solution, profile }));
    Ok(())
}

/// Solve on `[-1, 1]` for the normalized parameter `b`. `n_samples = 0`
/// selects the default grid.
///
/// # Safety
/// `out` must be null or valid for a write. On success `*out` holds a handle
/// to release with [`skdv_profile_free`]; on failure it is set to null.
#[no_mangle]
pub unsafe extern "C" fn skdv_solve_normalized(
    kind: u32,
    b: f64,
    n_samples: usize,
    out: *mut *mut SkdvProfile,
) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        *out = ptr::null_mut();
        emit(
            out,
            solve_normalized(kind_of(kind)?, b, &settings(n_samples)),
        )
    })
}

/// Solve on `[0, length]` for the coefficient `a`.
///
/// # Safety
/// Same contract as [`skdv_solve_normalized`].
#[no_mangle]
pub unsafe extern "C" fn skdv_solve_physical(
    kind: u32,
    a: f64,
    length: f64,
    n_samples: usize,
    out: *mut *mut SkdvProfile,
) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        *out = ptr::null_mut();
        let problem = lift(PhysicalProblem::new(kind_of(kind)?, a, length))?;
        emit(out, solve_physical(&problem, &settings(n_samples)))
    })
}

/// The `n`-th harmonic on `[0, length]`: `n` copies of the base solution.
///
/// # Safety
/// Same contract as [`skdv_solve_normalized`].
#[no_mangle]
pub unsafe extern "C" fn skdv_solve_harmonic(
    kind: u32,
    a: f64,
    length: f64,
    n: u32,
    n_samples: usize,
    out: *mut *mut SkdvProfile,
) -> SkdvStatus {
    guard(|| {
        null_check(out, "out")?;
        *out = ptr::null_mut();
        let problem = lift(PhysicalProblem::new(kind_of(kind)?, a, length))?;
        emit(out, harmonic_family(&problem, n, &settings(n_samples)))
    })
}

/// Number of samples in `profile`, 0 for a null handle.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skdv_profile_len(profile: *const SkdvProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.profile.len())
}

/// # Safety
/// `profile` must be null or a live handle; `out` null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn skdv_profile_summary(
    profile: *const SkdvProfile,
    out: *mut SkdvSummary,
) -> SkdvStatus {
    guard(|| {
        null_check(profile, "profile")?;
        null_check(out, "out")?;
        let SkdvProfile { solution, profile } = &*profile;
        let mut summary = SkdvSummary {
            b: solution.b,
            c: profile.c,
            amplitude: profile.amplitude,
            fundamental_period: profile.fundamental_period,
            harmonic: profile.harmonic,
            classification: match profile.classification {
                Classification::Hill => 1,
                Classification::Hole => -1,
            },
            samples: profile.len(),
            ..Default::default()
        };
        if let Some(r) = profile.diagnostics {
            summary.energy_residual = r.energy;
            summary.ode3_residual = r.ode3;
            summary.slope_residual = r.slope;
            summary.boundary_residual = r.boundary.max();
            summary.symmetry_residual = r.symmetry;
            summary.passed = r.passed;
        }
        *out = summary;
        Ok(())
    })
}

/// Copy positions, values and slopes into caller buffers of length `len`,
/// which must equal [`skdv_profile_len`]. Any buffer may be null to skip it.
///
/// # Safety
/// `profile` must be null or a live handle; each non-null buffer must be
/// valid for `len` writes of `double`.
#[no_mangle]
pub unsafe extern "C" fn skdv_profile_samples(
    profile: *const SkdvProfile,
    x: *mut f64,
    u: *mut f64,
    du: *mut f64,
    len: usize,
) -> SkdvStatus {
    guard(|| {
        null_check(profile, "profile")?;
        let samples = &(*profile).profile.samples;
        if len != samples.len() {
            set_last_error(&format!(
                "buffer length {len}, profile has {}",
                samples.len()
            ));
            return Err(SkdvStatus::InvalidArgument);
        }
        for (i, s) in samples.iter().enumerate() {
            if !x.is_null() {
                *x.add(i) = s.x;
            }
            if !u.is_null() {
                *u.add(i) = s.y;
            }
            if !du.is_null() {
                *du.add(i) = s.dy;
            }
        }
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `profile` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skdv_profile_free(profile: *mut SkdvProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}
