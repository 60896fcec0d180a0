//! The library against independent reference computations.

mod support;

use std::f64::consts::PI;

use stationary_kdv::csolver::{solve_c, DEFAULT_TOL};
use stationary_kdv::period_integral::{period_integral, DEFAULT_REL_TOL};
use stationary_kdv::potentials::{admissible_c_interval, turning_points};
use stationary_kdv::EquationKind::{self, Kdv, MkdvDefocusing, MkdvFocusing};

fn grid() -> Vec<(EquationKind, f64, f64)> {
    let mut points = Vec::new();
    for (kind, b) in [
        (Kdv, -3.0),
        (Kdv, 0.0),
        (Kdv, 2.0),
        (Kdv, 20.0),
        (MkdvFocusing, -5.0),
        (MkdvFocusing, 0.0),
        (MkdvFocusing, 4.0),
        (MkdvDefocusing, 12.0),
        (MkdvDefocusing, 40.0),
    ] {
        let iv = admissible_c_interval(kind, b);
        let lo = if iv.lower < 0.0 { 0.9 * iv.lower } else { 0.05 };
        let hi = if iv.upper.is_finite() {
            0.9 * iv.upper
        } else {
            30.0
        };
        for i in 0..5 {
            let c = lo + (hi - lo) * i as f64 / 4.0;
            if c != 0.0 {
                points.push((kind, b, c));
            }
        }
    }
    points
}

#[test]
fn turning_points_match_bisection() {
    for (kind, b, c) in grid() {
        let y0 = turning_points(kind, b, c).unwrap().y0;
        let reference = support::turning_point(kind, b, c);
        assert!(
            (y0 - reference).abs() <= 1e-12 * reference.abs().max(1.0),
            "{kind} b={b} c={c}: {y0} vs {reference}"
        );
    }
}

#[test]
fn substitution_equivalence() {
    for (kind, b, c) in grid() {
        let value = period_integral(kind, b, c, DEFAULT_REL_TOL).unwrap();
        let reference = support::period_integral(kind, b, c);
        assert!(
            (value - reference).abs() <= 1e-7 * reference,
            "{kind} b={b} c={c}: {value} vs {reference}"
        );
    }
}

#[test]
fn negative_branch_of_the_mkdv_integral() {
    // y0 < 0: the integral runs from y0 to 0.
    for (kind, b, c) in [(MkdvFocusing, 1.0, -2.0), (MkdvDefocusing, 12.0, -3.0)] {
        assert!(turning_points(kind, b, c).unwrap().y0 < 0.0);
        let value = period_integral(kind, b, c, DEFAULT_REL_TOL).unwrap();
        let reference = support::period_integral(kind, b, c);
        assert!((value - reference).abs() <= 1e-7 * reference, "{kind}");
        let mirrored = period_integral(kind, b, -c, DEFAULT_REL_TOL).unwrap();
        assert!((value - mirrored).abs() <= 1e-12 * value);
    }
}

#[test]
fn kdv_zero_b_against_direct_quadrature() {
    let value = period_integral(Kdv, 0.0, 1.0, DEFAULT_REL_TOL).unwrap();
    let reference = support::period_integral(Kdv, 0.0, 1.0);
    assert!((value - reference).abs() <= 1e-8, "{value} vs {reference}");
}

#[test]
fn zero_b_prefactor() {
    // I(0, c) = sqrt(3) (6c)^(-1/4) J for KdV; the alternative 1/sqrt(2c)
    // prefactor is off by a c-dependent factor.
    let j = support::j_constant();
    for c in [0.1, 1.0, 7.0, 300.0] {
        let value = period_integral(Kdv, 0.0, c, DEFAULT_REL_TOL).unwrap();
        let closed = 3f64.sqrt() * (6.0 * c).powf(-0.25) * j;
        assert!((value - closed).abs() <= 1e-10 * closed, "c={c}");
        let alternative = j / (2.0 * c).sqrt();
        assert!((value - alternative).abs() > 1e-3 * closed, "c={c}");
    }
}

#[test]
fn kdv_zero_b_closed_form_c() {
    let j = support::j_constant();
    let c = solve_c(Kdv, 0.0, DEFAULT_TOL).unwrap().c;
    let expected = 1.5 * j.powi(4);
    assert!((c - expected).abs() <= 1e-6 * expected, "{c} vs {expected}");
}

#[test]
fn solved_c_matches_reference_bisection() {
    for (kind, b, lo, hi, decreasing) in [
        (MkdvFocusing, 2.0, 0.01, 100.0, true),
        (Kdv, 16.0, -0.999 * 3.0 * 256.0 / 8.0, -1e-6, true),
        (
            MkdvDefocusing,
            4.0 * PI * PI,
            1e-3,
            (1.0 - 1e-9) * (2f64.sqrt() / 3.0) * (4.0 * PI * PI).powf(1.5),
            false,
        ),
    ] {
        let c = solve_c(kind, b, DEFAULT_TOL).unwrap().c;
        let reference = support::solve_c(kind, b, lo, hi, decreasing);
        assert!(
            (c - reference).abs() <= 1e-6 * reference.abs(),
            "{kind} b={b}: {c} vs {reference}"
        );
    }
}
