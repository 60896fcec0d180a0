//! Command line front end.
//!
//! ```text
//! stationary-kdv solve     --equation kdv --a 1 --L 3 [--n 2] [--out doc.json] [--profile-out u.csv]
//! stationary-kdv solve     --equation mkdv-focusing --b 2
//! stationary-kdv harmonics --equation kdv --a 1 --L 3 --n 3
//! stationary-kdv sweep     --equation kdv --a 1 --param L --start 3.14 --stop 9.42 --count 9
//! stationary-kdv verify    doc.json
//! ```
//!
//! Exit status: 0 success, 1 verification failure, 2 no solution exists,
//! 3 numerical failure, 4 I/O, parse or input failure. Log verbosity is read
//! from `STATIONARY_KDV_LOG` (`silent`, `info` or `debug`); nothing else in
//! the environment affects the numbers.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csolver::{self, NormalizedSolution};
use crate::error::Error;
use crate::period_integral::DEFAULT_REL_TOL;
use crate::potentials::EquationKind;
use crate::profile::{
    harmonic_amplitude_factor, harmonic_family, solve_normalized, Classification, Domain,
    PhysicalProblem, Sample, SolutionProfile, SolveSettings, DEFAULT_SAMPLES,
};
use crate::verify::{verify_profile, Tolerances, VerificationReport};

/// Name of the log verbosity variable.
pub const LOG_ENV: &str = "STATIONARY_KDV_LOG";

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Success = 0,
    VerificationFailed = 1,
    NoSolution = 2,
    NumericalFailure = 3,
    InputFailure = 4,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Classify a library error.
    pub fn of_error(err: &Error) -> Status {
        match err {
            e if e.is_nonexistence() => Status::NoSolution,
            Error::NonFinite { .. }
            | Error::InadmissibleC { .. }
            | Error::DefocusingNonnegativeDiscriminant { .. }
            | Error::NonpositiveLength(_)
            | Error::InvalidSampleCount { .. }
            | Error::UnsupportedKind { .. }
            | Error::InvalidHarmonic(_)
            | Error::Mismatch(_)
            | Error::TooFewSamples { .. } => Status::InputFailure,
            Error::NonuniformGrid { .. } => Status::VerificationFailed,
            _ => Status::NumericalFailure,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            status: Status::InputFailure,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Self::input(format!("{}: {err}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self {
            status: Status::of_error(&err),
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "stationary-kdv",
    version,
    about = "Stationary periodic solutions of KdV and mKdV on a bounded interval"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a single problem and write its result document and profile.
    Solve(SolveArgs),
    /// Solve along a grid of L, a or b.
    Sweep(SweepArgs),
    /// Build the n-th member of a harmonic family (fundamental period L/n).
    Harmonics(HarmonicsArgs),
    /// Recompute every residual of a stored result document.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub equation: EquationKind,
    /// Linear coefficient on [0, L]; requires --L.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Interval length; requires --a.
    #[arg(long = "L", id = "L", allow_negative_numbers = true)]
    pub length: Option<f64>,
    /// Normalized parameter on [-1, 1]; excludes --a and --L.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct NumericArgs {
    /// Odd number of profile samples.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Tolerance on |I(b, c) - 1|.
    #[arg(long, default_value_t = csolver::DEFAULT_TOL)]
    pub solve_tol: f64,
    /// Relative agreement between successive quadrature rules.
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub quad_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().boundary)]
    pub boundary_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().energy)]
    pub energy_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().ode3)]
    pub ode3_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Result document (JSON); printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Profile samples as `x,u,u_prime`.
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
    /// Two-column `x u` file for plotting tools.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Harmonic index (physical problems only).
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HarmonicsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweptParam {
    #[value(name = "L")]
    Length,
    #[value(name = "a")]
    A,
    #[value(name = "b")]
    B,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub equation: EquationKind,
    #[arg(long, value_enum)]
    pub param: SweptParam,
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long)]
    pub count: usize,
    /// Fixed coefficient when sweeping L.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Fixed length when sweeping a.
    #[arg(long = "L", id = "L", allow_negative_numbers = true)]
    pub length: Option<f64>,
    #[command(flatten)]
    pub numeric: NumericArgs,
    /// Table (CSV); printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Two-column `value amplitude` file of the solved points.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
}

/// What is being solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemSpec {
    Physical(PhysicalProblem),
    Normalized { kind: EquationKind, b: f64 },
}

impl ProblemSpec {
    pub fn kind(&self) -> EquationKind {
        match *self {
            ProblemSpec::Physical(p) => p.kind,
            ProblemSpec::Normalized { kind, .. } => kind,
        }
    }

    pub fn b(&self) -> f64 {
        match *self {
            ProblemSpec::Physical(p) => p.a * p.length * p.length / 4.0,
            ProblemSpec::Normalized { b, .. } => b,
        }
    }
}

/// Validated settings of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub settings: SolveSettings,
    pub harmonic: Option<u32>,
    pub out: Option<PathBuf>,
    pub profile_out: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(
        problem: &ProblemArgs,
        numeric: &NumericArgs,
        harmonic: Option<u32>,
        output: &OutputArgs,
    ) -> CliResult<Self> {
        let problem = match (problem.a, problem.length, problem.b) {
            (Some(a), Some(length), None) => {
                ProblemSpec::Physical(PhysicalProblem::new(problem.equation, a, length)?)
            }
            (None, None, Some(b)) => {
                if !b.is_finite() {
                    return Err(CliError::input(format!("--b must be finite, got {b}")));
                }
                ProblemSpec::Normalized {
                    kind: problem.equation,
                    b,
                }
            }
            _ => {
                return Err(CliError::input(
                    "give either --a together with --L, or --b alone",
                ))
            }
        };
        if harmonic.is_some() && matches!(problem, ProblemSpec::Normalized { .. }) {
            return Err(CliError::input(
                "--n needs a physical problem (--a and --L)",
            ));
        }
        Ok(Self {
            problem,
            settings: settings_from(numeric)?,
            harmonic,
            out: output.out.clone(),
            profile_out: output.profile_out.clone(),
            plot_data: output.plot_data.clone(),
        })
    }
}

fn settings_from(numeric: &NumericArgs) -> CliResult<SolveSettings> {
    let positive = [
        ("--solve-tol", numeric.solve_tol),
        ("--quad-tol", numeric.quad_tol),
        ("--boundary-tol", numeric.boundary_tol),
        ("--energy-tol", numeric.energy_tol),
        ("--ode3-tol", numeric.ode3_tol),
    ];
    for (flag, value) in positive {
        if !(value > 0.0 && value.is_finite()) {
            return Err(CliError::input(format!(
                "{flag} must be positive, got {value}"
            )));
        }
    }
    if numeric.samples < 3 || numeric.samples.is_multiple_of(2) {
        return Err(CliError::input(format!(
            "--samples must be odd and at least 3, got {}",
            numeric.samples
        )));
    }
    Ok(SolveSettings {
        solve_tol: numeric.solve_tol,
        quad_tol: numeric.quad_tol,
        n_samples: numeric.samples,
        tolerances: Tolerances {
            energy: numeric.energy_tol,
            ode3: numeric.ode3_tol,
            boundary: numeric.boundary_tol,
            ..Tolerances::default()
        },
    })
}

/// A solved problem before serialization.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub solution: NormalizedSolution,
    pub profile: SolutionProfile,
    pub b: f64,
    pub y0: f64,
    pub u0: Option<f64>,
}

impl Outcome {
    pub fn report(&self) -> &VerificationReport {
        self.profile
            .diagnostics
            .as_ref()
            .expect("solved profiles carry diagnostics")
    }
}

pub fn solve_problem(
    problem: &ProblemSpec,
    harmonic: Option<u32>,
    settings: &SolveSettings,
) -> crate::Result<Outcome> {
    match *problem {
        ProblemSpec::Normalized { kind, b } => {
            let (solution, profile) = solve_normalized(kind, b, settings)?;
            Ok(Outcome {
                y0: solution.y0,
                solution,
                profile,
                b,
                u0: None,
            })
        }
        ProblemSpec::Physical(p) => {
            let n = harmonic.unwrap_or(1);
            let (solution, profile) = harmonic_family(&p, n, settings)?;
            let factor = if n > 1 {
                harmonic_amplitude_factor(p.kind, n)
            } else {
                1.0
            };
            Ok(Outcome {
                y0: factor * solution.y0,
                u0: Some(profile.amplitude),
                b: problem.b(),
                solution,
                profile,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    /// `|I(b, c) - 1|` of the solved (base) problem.
    pub residual: f64,
    pub iterations: u32,
    pub evaluations: u32,
    pub near_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileColumns {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub u_prime: Vec<f64>,
}

/// The self-describing record of one solve. Floats are written in shortest
/// round-trip form, so reading a document back reproduces every value
/// bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    /// Seconds since the Unix epoch; the only field that varies between runs.
    pub generated_at: u64,
    pub kind: EquationKind,
    pub a: Option<f64>,
    #[serde(rename = "L")]
    pub length: Option<f64>,
    pub b: f64,
    /// Integration constant of the normalized equation.
    pub c: f64,
    pub y0: f64,
    pub u0: Option<f64>,
    pub classification: Classification,
    pub harmonic: u32,
    pub fundamental_period: f64,
    pub solver: SolverStats,
    pub settings: SolveSettings,
    pub residuals: VerificationReport,
    pub profile: ProfileColumns,
}

impl ResultDocument {
    pub fn new(outcome: &Outcome, settings: &SolveSettings, generated_at: u64) -> Self {
        let p = &outcome.profile;
        let (a, length) = match p.domain {
            Domain::Physical { a, length, .. } => (Some(a), Some(length)),
            Domain::Normalized { .. } => (None, None),
        };
        Self {
            generated_at,
            kind: p.kind(),
            a,
            length,
            b: outcome.b,
            c: p.c,
            y0: outcome.y0,
            u0: outcome.u0,
            classification: p.classification,
            harmonic: p.harmonic,
            fundamental_period: p.fundamental_period,
            solver: SolverStats {
                residual: outcome.solution.residual,
                iterations: outcome.solution.iterations,
                evaluations: outcome.solution.evaluations,
                near_degenerate: outcome.solution.near_degenerate,
            },
            settings: *settings,
            residuals: *outcome.report(),
            profile: ProfileColumns {
                x: p.samples.iter().map(|s| s.x).collect(),
                u: p.samples.iter().map(|s| s.y).collect(),
                u_prime: p.samples.iter().map(|s| s.dy).collect(),
            },
        }
    }

    /// Rebuild the sampled profile described by the document.
    pub fn to_profile(&self) -> CliResult<SolutionProfile> {
        let ProfileColumns { x, u, u_prime } = &self.profile;
        if x.len() != u.len() || x.len() != u_prime.len() {
            return Err(CliError::input(format!(
                "profile columns differ in length ({}, {}, {})",
                x.len(),
                u.len(),
                u_prime.len()
            )));
        }
        let domain = match (self.a, self.length) {
            (Some(a), Some(length)) => Domain::Physical {
                kind: self.kind,
                a,
                length,
            },
            (None, None) => Domain::Normalized {
                kind: self.kind,
                b: self.b,
            },
            _ => return Err(CliError::input("document has only one of `a` and `L`")),
        };
        Ok(SolutionProfile {
            domain,
            c: self.c,
            amplitude: self.u0.unwrap_or(self.y0),
            samples: x
                .iter()
                .zip(u)
                .zip(u_prime)
                .map(|((&x, &y), &dy)| Sample { x, y, dy })
                .collect(),
            fundamental_period: self.fundamental_period,
            harmonic: self.harmonic,
            classification: self.classification,
            diagnostics: None,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("bad result document: {e}")))
    }
}

/// `x,u,u_prime` with 17 significant digits, LF line endings.
pub fn profile_csv(profile: &SolutionProfile) -> String {
    let mut out = String::with_capacity(64 * (profile.len() + 1));
    out.push_str("x,u,u_prime\n");
    for s in &profile.samples {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", s.x, s.y, s.dy);
    }
    out
}

/// Parse a file written by [`profile_csv`].
pub fn parse_profile_csv(text: &str) -> CliResult<Vec<Sample>> {
    let mut lines = text.lines();
    if lines.next() != Some("x,u,u_prime") {
        return Err(CliError::input(
            "profile file must start with `x,u,u_prime`",
        ));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::input(format!("line {}: {e}", i + 2)))
            };
            match fields.as_slice() {
                [x, y, dy] => Ok(Sample {
                    x: parse(x)?,
                    y: parse(y)?,
                    dy: parse(dy)?,
                }),
                _ => Err(CliError::input(format!(
                    "line {}: expected 3 fields",
                    i + 2
                ))),
            }
        })
        .collect()
}

/// Whitespace separated `x u` columns.
pub fn plot_data(profile: &SolutionProfile) -> String {
    let mut out = String::from("# x u\n");
    for s in &profile.samples {
        let _ = writeln!(out, "{:.16e} {:.16e}", s.x, s.y);
    }
    out
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn summary(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "equation        {}", doc.kind);
    if let (Some(a), Some(l)) = (doc.a, doc.length) {
        let _ = writeln!(out, "a               {a}");
        let _ = writeln!(out, "L               {l}");
    }
    let _ = writeln!(out, "b               {}", doc.b);
    let _ = writeln!(out, "c               {}", doc.c);
    let _ = writeln!(out, "y0              {}", doc.y0);
    if let Some(u0) = doc.u0 {
        let _ = writeln!(out, "u0              {u0}");
    }
    let _ = writeln!(out, "classification  {}", doc.classification);
    let _ = writeln!(out, "period          {}", doc.fundamental_period);
    let _ = writeln!(
        out,
        "verification    {}",
        if doc.residuals.passed {
            "passed"
        } else {
            "FAILED"
        }
    );
    out
}

pub fn cmd_solve(config: &RunConfig) -> CliResult<Status> {
    let outcome = solve_problem(&config.problem, config.harmonic, &config.settings)?;
    let doc = ResultDocument::new(&outcome, &config.settings, now());
    match &config.out {
        Some(path) => {
            write_file(path, &doc.to_json())?;
            print!("{}", summary(&doc));
        }
        None => print!("{}", doc.to_json()),
    }
    if let Some(path) = &config.profile_out {
        write_file(path, &profile_csv(&outcome.profile))?;
    }
    if let Some(path) = &config.plot_data {
        write_file(path, &plot_data(&outcome.profile))?;
    }
    if !doc.residuals.passed {
        log::warn!("verification failed: {:?}", doc.residuals);
        return Ok(Status::VerificationFailed);
    }
    Ok(Status::Success)
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub b: f64,
    pub exists: bool,
    pub result: std::result::Result<SweepPoint, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub c: f64,
    pub y0: f64,
    pub u0: Option<f64>,
    pub classification: Classification,
    pub report: VerificationReport,
}

impl SweepRow {
    fn status(&self) -> &'static str {
        match &self.result {
            Ok(p) if p.report.passed => "ok",
            Ok(_) => "verification-failed",
            Err(_) if !self.exists => "no-solution",
            Err(_) => "numerical-failure",
        }
    }
}

pub const SWEEP_HEADER: &str =
    "value,b,exists,status,c,y0,u0,classification,energy,ode3,slope,boundary";

/// Evaluate the grid; rows come back in grid order.
pub fn sweep(
    kind: EquationKind,
    param: SweptParam,
    fixed: Option<f64>,
    grid: &[f64],
    settings: &SolveSettings,
) -> CliResult<Vec<SweepRow>> {
    let problems = grid
        .iter()
        .map(|&value| {
            let spec = match (param, fixed) {
                (SweptParam::B, _) => ProblemSpec::Normalized { kind, b: value },
                (SweptParam::Length, Some(a)) => {
                    ProblemSpec::Physical(PhysicalProblem::new(kind, a, value)?)
                }
                (SweptParam::A, Some(length)) => {
                    ProblemSpec::Physical(PhysicalProblem::new(kind, value, length)?)
                }
                (SweptParam::Length, None) => return Err(CliError::input("sweeping L needs --a")),
                (SweptParam::A, None) => return Err(CliError::input("sweeping a needs --L")),
            };
            Ok((value, spec))
        })
        .collect::<CliResult<Vec<_>>>()?;

    Ok(problems
        .par_iter()
        .map(|&(value, spec)| {
            let b = spec.b();
            let result = solve_problem(&spec, None, settings)
                .map(|o| SweepPoint {
                    c: o.profile.c,
                    y0: o.y0,
                    u0: o.u0,
                    classification: o.profile.classification,
                    report: *o.report(),
                })
                .map_err(|e| {
                    log::info!("{kind} {value}: {e}");
                    e.to_string()
                });
            SweepRow {
                value,
                b,
                exists: csolver::existence(kind, b),
                result,
            }
        })
        .collect())
}

pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let _ = write!(
            out,
            "{:e},{:e},{},{}",
            row.value,
            row.b,
            row.exists,
            row.status()
        );
        match &row.result {
            Ok(p) => {
                let u0 = p.u0.map(|u| format!("{u:e}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    ",{:e},{:e},{u0},{},{:e},{:e},{:e},{:e}",
                    p.c,
                    p.y0,
                    p.classification,
                    p.report.energy,
                    p.report.ode3,
                    p.report.slope,
                    p.report.boundary.max()
                );
            }
            Err(_) => out.push_str(",,,,,,,,\n"),
        }
    }
    out
}

pub fn cmd_sweep(args: &SweepArgs) -> CliResult<Status> {
    let settings = settings_from(&args.numeric)?;
    if args.count < 2 {
        return Err(CliError::input("--count must be at least 2"));
    }
    if !(args.start.is_finite() && args.stop.is_finite()) {
        return Err(CliError::input("--start and --stop must be finite"));
    }
    let fixed = match args.param {
        SweptParam::Length => args.a,
        SweptParam::A => args.length,
        SweptParam::B => None,
    };
    let last = (args.count - 1) as f64;
    let grid: Vec<f64> = (0..args.count)
        .map(|i| args.start + (args.stop - args.start) * i as f64 / last)
        .collect();
    let rows = sweep(args.equation, args.param, fixed, &grid, &settings)?;

    let table = sweep_table(&rows);
    match &args.out {
        Some(path) => write_file(path, &table)?,
        None => print!("{table}"),
    }
    if let Some(path) = &args.plot_data {
        let mut out = String::from("# value amplitude\n");
        for row in &rows {
            if let Ok(p) = &row.result {
                let _ = writeln!(out, "{:.16e} {:.16e}", row.value, p.u0.unwrap_or(p.y0));
            }
        }
        write_file(path, &out)?;
    }

    let numerical = |r: &SweepRow| r.result.is_err() && r.exists;
    if rows.iter().all(numerical) {
        return Ok(Status::NumericalFailure);
    }
    if rows
        .iter()
        .any(|r| matches!(&r.result, Ok(p) if !p.report.passed))
    {
        return Ok(Status::VerificationFailed);
    }
    Ok(Status::Success)
}

/// Recompute residuals of a stored document against its stored tolerances.
pub fn verify_document(doc: &ResultDocument) -> CliResult<VerificationReport> {
    let profile = doc.to_profile()?;
    Ok(verify_profile(&profile, &doc.settings.tolerances)?)
}

pub fn residual_table(report: &VerificationReport, tol: &Tolerances) -> String {
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16}{:>14}{:>14}  status",
        "check", "value", "tolerance"
    );
    let rows = [
        ("energy", report.energy, tol.energy),
        ("ode3", report.ode3, tol.ode3),
        ("slope", report.slope, tol.slope),
        ("left value", report.boundary.left_value, tol.boundary),
        ("right value", report.boundary.right_value, tol.boundary),
        ("right slope", report.boundary.right_slope, tol.boundary),
        ("left slope", report.boundary.left_slope, tol.boundary),
    ];
    for (name, value, limit) in rows {
        let _ = writeln!(
            out,
            "{name:<16}{value:>14.3e}{limit:>14.3e}  {}",
            mark(value <= limit)
        );
    }
    let _ = writeln!(
        out,
        "{:<16}{:>14}{:>14.6}  {}",
        "arches",
        report.arches,
        report.measured_period,
        mark(report.period_ok)
    );
    out
}

pub fn cmd_verify(path: &Path) -> CliResult<Status> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc = ResultDocument::from_json(&text)?;
    let report = verify_document(&doc)?;
    print!("{}", residual_table(&report, &doc.settings.tolerances));
    Ok(if report.passed {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

fn init_logging() {
    let level = match std::env::var(LOG_ENV).as_deref() {
        Ok("debug") => log::LevelFilter::Debug,
        Ok("info") => log::LevelFilter::Info,
        _ => log::LevelFilter::Off,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .try_init();
}

/// Parse `args` (including the program name), run, and return the exit status.
pub fn run<I, T>(args: I) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Status::InputFailure
            } else {
                Status::Success
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => RunConfig::new(&a.problem, &a.numeric, a.n, &a.output)
            .and_then(|config| cmd_solve(&config)),
        Command::Harmonics(a) => RunConfig::new(&a.problem, &a.numeric, Some(a.n), &a.output)
            .and_then(|config| cmd_solve(&config)),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(&a.path),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.status
        }
    }
}
