//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod support;

use std::f64::consts::PI;
use std::process::ExitCode;

use stationary_kdv::cli::{sweep, Status, SweptParam};
use stationary_kdv::csolver::existence;
use stationary_kdv::period_integral::{period_integral, DEFAULT_REL_TOL};
use stationary_kdv::potentials::{
    admissible_c_interval, defocusing_c_limit, reduced_factor, turning_points,
};
use stationary_kdv::profile::{
    harmonic_family, profile_normalized, solve_normalized, SolveSettings,
};
use stationary_kdv::verify::{
    cross_construction_check, fundamental_period_check, symmetry_residual,
};
use stationary_kdv::EquationKind::{self, Kdv, MkdvDefocusing, MkdvFocusing};
use stationary_kdv::{NormalizedSolution, PhysicalProblem, SolutionProfile};

const PI2: f64 = PI * PI;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail,
        }
    } else {
        Outcome {
            pass: false,
            detail: failures.join("; "),
        }
    }
}

type Solved = Vec<(EquationKind, f64, NormalizedSolution, SolutionProfile)>;

fn existence_grid() -> Vec<f64> {
    vec![
        -10.0,
        -1.0,
        0.0,
        1.0,
        4.0,
        9.0,
        PI2 - 1e-3,
        PI2,
        PI2 + 1e-3,
        16.0,
        25.0,
        100.0,
    ]
}

fn criterion_1(solved: &mut Solved) -> Outcome {
    let mut failures = Vec::new();
    let settings = SolveSettings::default();
    let mut count = 0;
    for kind in EquationKind::ALL {
        for b in existence_grid() {
            let expected = match kind {
                Kdv => b != PI2,
                MkdvFocusing => b < PI2,
                MkdvDefocusing => b > PI2,
            };
            if existence(kind, b) != expected {
                failures.push(format!("{kind} b={b}: existence verdict"));
            }
            match solve_normalized(kind, b, &settings) {
                Ok((sol, profile)) => {
                    count += 1;
                    if !expected {
                        failures.push(format!("{kind} b={b}: solved but should not exist"));
                    }
                    solved.push((kind, b, sol, profile));
                }
                Err(e) => {
                    let status = Status::of_error(&e);
                    if expected || status.code() != 2 {
                        failures.push(format!("{kind} b={b}: {e} (exit {})", status.code()));
                    }
                }
            }
        }
    }
    outcome(failures, format!("{count} solved, verdicts exact"))
}

fn criterion_2(solved: &Solved) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (kind, b, sol, _) in solved {
        match period_integral(*kind, *b, sol.c, 1e-13) {
            Ok(i) => {
                worst = worst.max((i - 1.0).abs());
                if (i - 1.0).abs() > 1e-8 {
                    failures.push(format!("{kind} b={b}: |I - 1| = {:e}", (i - 1.0).abs()));
                }
            }
            Err(e) => failures.push(format!("{kind} b={b}: {e}")),
        }
    }
    outcome(failures, format!("max |I - 1| = {worst:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (kind, b, target, label) in [
        (Kdv, 4.0, PI / 2.0, "pi/2"),
        (Kdv, PI2, 1.0, "1"),
        (MkdvFocusing, 9.0, PI / 3.0, "pi/3"),
    ] {
        match period_integral(kind, b, 1e-8, DEFAULT_REL_TOL) {
            Ok(i) => {
                detail.push(format!("{:.2e}", (i - target).abs()));
                if (i - target).abs() > 1e-3 {
                    failures.push(format!("{kind} b={b}: {i} vs {label}"));
                }
            }
            Err(e) => failures.push(format!("{kind} b={b}: {e}")),
        }
    }
    outcome(failures, format!("deviations {}", detail.join(", ")))
}

fn criterion_4(solved: &Solved) -> Outcome {
    let j = support::j_constant();
    let expected = 1.5 * j.powi(4);
    let Some((_, _, sol, _)) = solved.iter().find(|(k, b, _, _)| *k == Kdv && *b == 0.0) else {
        return outcome(vec!["kdv b=0 did not solve".into()], String::new());
    };
    let rel = (sol.c - expected).abs() / expected;
    let failures = if rel <= 1e-6 {
        vec![]
    } else {
        vec![format!("c = {} vs (3/2) J^4 = {expected}", sol.c)]
    };
    outcome(
        failures,
        format!("c = {:.12}, relative deviation {rel:.2e}", sol.c),
    )
}

fn criterion_5(solved: &Solved) -> Outcome {
    let (mut energy, mut ode3, mut boundary): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut failures = Vec::new();
    for (kind, b, _, profile) in solved {
        let report = profile.diagnostics.expect("diagnostics");
        energy = energy.max(report.energy);
        ode3 = ode3.max(report.ode3);
        boundary = boundary.max(report.boundary.max());
        if profile.len() != 2001
            || report.energy > 1e-6
            || report.ode3 > 1e-5
            || report.boundary.max() > 1e-6
        {
            failures.push(format!(
                "{kind} b={b}: energy {:.2e} ode3 {:.2e} boundary {:.2e}",
                report.energy,
                report.ode3,
                report.boundary.max()
            ));
        }
    }
    outcome(
        failures,
        format!("max energy {energy:.2e}, ode3 {ode3:.2e}, boundary {boundary:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let settings = SolveSettings::default();
    for (kind, b) in [
        (Kdv, 0.0),
        (Kdv, 4.0),
        (Kdv, 16.0),
        (MkdvFocusing, -4.0),
        (MkdvFocusing, 0.0),
        (MkdvFocusing, 4.0),
        (MkdvDefocusing, 12.0),
        (MkdvDefocusing, 4.0 * PI2),
    ] {
        let result = solve_normalized(kind, b, &settings)
            .and_then(|(sol, _)| cross_construction_check(kind, b, sol.c, 2001));
        match result {
            Ok(d) => {
                worst = worst.max(d);
                if d > 1e-6 {
                    failures.push(format!("{kind} b={b}: {d:.2e}"));
                }
            }
            Err(e) => failures.push(format!("{kind} b={b}: {e}")),
        }
    }
    outcome(failures, format!("max distance {worst:.2e}"))
}

fn algebraic_grid() -> Vec<(EquationKind, f64, f64)> {
    let mut grid = Vec::new();
    let fractions = [0.1, 0.35, 0.6, 0.85];
    for b in [-5.0, -1.0, 0.0, 2.0, 8.0] {
        let iv = admissible_c_interval(Kdv, b);
        let lo = if iv.lower.is_finite() { iv.lower } else { 0.0 };
        for f in fractions {
            let c = if b > 0.0 && f < 0.5 {
                lo * (1.0 - 2.0 * f)
            } else {
                10.0 * f
            };
            grid.push((Kdv, b, c));
        }
    }
    // Three real roots for the focusing kind need b < 0 and 36 c^2 <= -8 b^3.
    for b in [-6.0, -4.0, -3.0, -2.0, -1.0] {
        let cmax = (-8.0 * b * b * b / 36.0f64).sqrt();
        for f in fractions {
            grid.push((MkdvFocusing, b, f * cmax));
        }
    }
    for b in [1.0, 3.0, 10.0, 20.0, 50.0] {
        let cmax = defocusing_c_limit(b);
        for f in fractions {
            grid.push((MkdvDefocusing, b, f * cmax));
        }
    }
    grid
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut check = |label: String, lhs: f64, rhs: f64, scale: f64| {
        let rel = (lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
        if rel > 1e-10 {
            failures.push(format!("{label}: {lhs} vs {rhs}"));
        }
    };
    for (kind, b, c) in algebraic_grid() {
        let tp = match turning_points(kind, b, c) {
            Ok(tp) => tp,
            Err(e) => {
                check(format!("{kind} b={b} c={c}: {e}"), 1.0, 0.0, 1.0);
                continue;
            }
        };
        let y0 = tp.y0;
        let f0 = reduced_factor(kind, b, c, y0);
        check(
            format!("{kind} b={b} c={c} F0(y0)"),
            f0,
            0.0,
            1f64.max(y0.abs().powi(3)),
        );
        match (kind, tp.others.as_slice()) {
            (Kdv, &[y1]) => {
                check(
                    format!("kdv b={b} c={c} sum"),
                    y0 + y1,
                    -3.0 * b,
                    y0.abs().max(y1.abs()),
                );
                check(
                    format!("kdv b={b} c={c} product"),
                    y0 * y1,
                    -6.0 * c,
                    (y0 * y1).abs(),
                );
            }
            (MkdvFocusing, &[y1, y2]) => {
                let scale = y0.abs().max(y1.abs()).max(y2.abs());
                check(format!("focusing b={b} c={c} sum"), y1 + y2, -y0, scale);
                let rhs = 6.0 * b + y0 * y0;
                check(
                    format!("focusing b={b} c={c} product"),
                    y1 * y2,
                    rhs,
                    (6.0 * b).abs() + y0 * y0,
                );
            }
            (MkdvDefocusing, &[y1, y2]) => {
                let scale = y0.abs().max(y1.abs()).max(y2.abs());
                check(format!("defocusing b={b} c={c} sum"), y1 + y2, -y0, scale);
                check(
                    format!("defocusing b={b} c={c} product"),
                    y1 * y2,
                    y0 * y0 - 6.0 * b,
                    y0 * y0 + 6.0 * b,
                );
            }
            (_, others) => check(
                format!("{kind} b={b} c={c}: {} real companions", others.len()),
                1.0,
                0.0,
                1.0,
            ),
        }
    }
    let n = algebraic_grid().len();
    outcome(
        failures,
        format!("{n} points, max relative error {worst:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let cases = [
        (Kdv, [-2.0, 3.0, 20.0], true),
        (MkdvFocusing, [-3.0, 0.0, 5.0], true),
        (MkdvDefocusing, [11.0, 20.0, 45.0], false),
    ];
    for (kind, bs, decreasing) in cases {
        for b in bs {
            let iv = admissible_c_interval(kind, b);
            let (lo, hi) = match (iv.lower.is_finite(), iv.upper.is_finite()) {
                (_, true) => (iv.upper * 1e-3, iv.upper * (1.0 - 1e-3)),
                (true, false) if iv.lower < 0.0 => (iv.lower * (1.0 - 1e-3), 50.0),
                _ => (1e-3, 50.0),
            };
            let values: Result<Vec<f64>, _> = (0..10)
                .map(|i| lo + (hi - lo) * i as f64 / 9.0)
                .filter(|&c| c != 0.0)
                .map(|c| period_integral(kind, b, c, DEFAULT_REL_TOL))
                .collect();
            match values {
                Ok(v) => {
                    if !v
                        .windows(2)
                        .all(|w| (w[1] < w[0]) == decreasing && w[1] != w[0])
                    {
                        failures.push(format!("{kind} b={b}: {v:?}"));
                    }
                }
                Err(e) => failures.push(format!("{kind} b={b}: {e}")),
            }
        }
    }
    outcome(failures, "9 grids of 10 points".into())
}

fn criterion_9(solved: &Solved) -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (kind, b, sol, profile) in solved {
        let even = symmetry_residual(profile);
        worst = worst.max(even);
        if even > 1e-12 {
            failures.push(format!("{kind} b={b}: evenness {even:.2e}"));
        }
        if kind.is_mkdv() {
            let plus = profile_normalized(*kind, *b, sol.c, 2001);
            let minus = profile_normalized(*kind, *b, -sol.c, 2001);
            match (plus, minus) {
                (Ok(p), Ok(m)) => {
                    let d = p
                        .samples
                        .iter()
                        .zip(&m.samples)
                        .map(|(u, v)| (u.y + v.y).abs().max((u.dy + v.dy).abs()))
                        .fold(0.0, f64::max);
                    worst = worst.max(d);
                    if d > 1e-12 {
                        failures.push(format!("{kind} b={b}: negation {d:.2e}"));
                    }
                }
                _ => failures.push(format!("{kind} b={b}: sign-flipped profile failed")),
            }
        }
    }
    outcome(failures, format!("max deviation {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let lengths = [PI, 1.5 * PI, 1.9 * PI, 2.1 * PI, 2.5 * PI, 3.0 * PI];
    let rows = match sweep(
        Kdv,
        SweptParam::Length,
        Some(1.0),
        &lengths,
        &SolveSettings::default(),
    ) {
        Ok(rows) => rows,
        Err(e) => return outcome(vec![e.message], String::new()),
    };
    let mut failures = Vec::new();
    let mut u0 = Vec::new();
    for row in &rows {
        match &row.result {
            Ok(p) => {
                let expected = if row.value < 2.0 * PI { "hill" } else { "hole" };
                if p.classification.to_string() != expected {
                    failures.push(format!("L={}: {}", row.value, p.classification));
                }
                u0.push(p.u0.unwrap_or(f64::NAN));
            }
            Err(e) => failures.push(format!("L={}: {e}", row.value)),
        }
    }
    if failures.is_empty() {
        let near = u0[2].abs().max(u0[3].abs());
        let far = u0[0].abs().min(u0[5].abs());
        if near >= far || near.is_nan() {
            failures.push(format!("|u0| near 2 pi {near} not below {far}"));
        }
    }
    let listed: Vec<String> = u0.iter().map(|u| format!("{u:.4}")).collect();
    outcome(failures, format!("u0 = [{}]", listed.join(", ")))
}

fn criterion_11() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let settings = SolveSettings::default();
    for kind in [Kdv, MkdvFocusing] {
        for (a, length) in [(1.0, PI), (-1.0, 6.0)] {
            for n in [2, 3] {
                let problem = PhysicalProblem::new(kind, a, length).expect("valid problem");
                match harmonic_family(&problem, n, &settings) {
                    Ok((_, h)) => {
                        let report = h.diagnostics.expect("diagnostics");
                        worst = worst.max(report.ode3);
                        let period = length / f64::from(n);
                        if report.ode3 > 1e-5
                            || h.fundamental_period != period
                            || !fundamental_period_check(&h)
                        {
                            failures.push(format!(
                                "{kind} a={a} L={length} n={n}: ode3 {:.2e}, period {} ({} arches)",
                                report.ode3, h.fundamental_period, report.arches
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{kind} a={a} L={length} n={n}: {e}")),
                }
            }
        }
    }
    outcome(failures, format!("8 families, max ode3 {worst:.2e}"))
}

fn main() -> ExitCode {
    let mut solved = Solved::new();
    let results = [
        ("existence thresholds", criterion_1(&mut solved)),
        ("criterion round-trip", criterion_2(&solved)),
        ("limit reproduction", criterion_3()),
        ("closed form at b = 0", criterion_4(&solved)),
        ("verification residuals", criterion_5(&solved)),
        ("oracle equivalence", criterion_6()),
        ("algebraic identities", criterion_7()),
        ("monotonicity", criterion_8()),
        ("symmetry", criterion_9(&solved)),
        ("hill/hole dichotomy", criterion_10()),
        ("harmonic families", criterion_11()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("{mark} {:>2} {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
