//! Identity-based cross-checks of the special-function layer: recurrences,
//! closed forms, derivative consistency, and limiting behaviour that the
//! frozen-value unit tests do not already pin down.

use conebound::specfun::{
    bessel_ik, bessel_j, bessel_k, bessel_k_imag, gamma, k_small_x, log_deriv_k, BesselOrder,
};

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[test]
fn gamma_recurrence_on_unit_interval_shifts() {
    for i in 1..300 {
        let x = 0.005 + 1.99 * i as f64 / 300.0;
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-12 * lhs.abs(),
            "recurrence off at x = {x}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn gamma_reflection_formula() {
    for i in 1..100 {
        let x = i as f64 / 100.0;
        if (x - 0.5).abs() < 1e-9 {
            continue;
        }
        let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        let rhs = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
        assert!(
            (lhs - rhs).abs() <= 1e-12 * rhs.abs(),
            "reflection off at x = {x}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn gamma_duplication_formula() {
    for i in 1..=60 {
        let x = 0.02 + 1.4 * i as f64 / 60.0;
        let lhs = gamma(2.0 * x).unwrap();
        let rhs = 2f64.powf(2.0 * x - 1.0) / std::f64::consts::PI.sqrt()
            * gamma(x).unwrap()
            * gamma(x + 0.5).unwrap();
        assert!(
            (lhs - rhs).abs() <= 2e-12 * lhs.abs(),
            "duplication off at x = {x}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn modified_bessel_derivatives_match_finite_differences() {
    let points: [(f64, f64); 6] = [(0.0, 1.0), (0.25, 0.5), (0.9, 2.0), (1.5, 4.0), (3.2, 6.0), (5.0, 9.0)];
    for &(nu, x) in &points {
        let h = 1e-5 * x.max(1.0);
        let b = bessel_ik(nu, x).unwrap();
        let up = bessel_ik(nu, x + h).unwrap();
        let dn = bessel_ik(nu, x - h).unwrap();
        let fd_i = (up.i - dn.i) / (2.0 * h);
        let fd_k = (up.k - dn.k) / (2.0 * h);
        assert!(
            (fd_i - b.i_prime).abs() <= 1e-6 * b.i_prime.abs().max(1.0),
            "I' mismatch at nu = {nu}, x = {x}"
        );
        assert!(
            (fd_k - b.k_prime).abs() <= 1e-6 * b.k_prime.abs().max(1.0),
            "K' mismatch at nu = {nu}, x = {x}"
        );
    }
}

#[test]
fn bessel_j_derivative_matches_finite_difference() {
    let points: [(f64, f64); 4] = [(0.0, 1.0), (0.5, 3.0), (2.0, 7.0), (4.2, 15.0)];
    for &(nu, x) in &points {
        let h = 1e-5 * x.max(1.0);
        let b = bessel_j(nu, x).unwrap();
        let up = bessel_j(nu, x + h).unwrap();
        let dn = bessel_j(nu, x - h).unwrap();
        let fd = (up.j - dn.j) / (2.0 * h);
        assert!(
            (fd - b.j_prime).abs() <= 1e-6 * b.j_prime.abs().max(1.0),
            "J' mismatch at nu = {nu}, x = {x}"
        );
    }
}

#[test]
fn bessel_j_contiguous_recurrence() {
    // J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x)
    for &(nu, x) in &[(1.0f64, 1.0f64), (1.5, 4.0), (2.0, 9.0), (3.0, 13.0)] {
        let lo = bessel_j(nu - 1.0, x).unwrap().j;
        let mid = bessel_j(nu, x).unwrap().j;
        let hi = bessel_j(nu + 1.0, x).unwrap().j;
        assert!(
            (lo + hi - 2.0 * nu / x * mid).abs() <= 1e-11 * (lo.abs() + hi.abs()).max(1e-3),
            "three-term recurrence off at nu = {nu}, x = {x}"
        );
    }
}

#[test]
fn half_order_log_derivative_closed_form() {
    // K_{1/2}(x) is proportional to x^{-1/2} e^{-x}, so x K'/K = -x - 1/2.
    for &x in &[0.1f64, 0.5, 1.0, 3.0, 10.0, 20.0] {
        let ld = log_deriv_k(BesselOrder::Real(0.5), x).unwrap();
        assert!(
            (ld + x + 0.5).abs() <= 1e-12 * x.max(1.0),
            "half-order log-derivative off at x = {x}: {ld}"
        );
    }
    let at_one = log_deriv_k(BesselOrder::Real(0.5f64), 1.0).unwrap();
    assert!((at_one + 1.5).abs() < 1e-12);
}

#[test]
fn log_derivative_asymptotes() {
    // x -> 0 with 0 < nu < 1 approaches -nu; x -> infinity approaches -x.
    let small = log_deriv_k(BesselOrder::Real(0.3f64), 1e-6).unwrap();
    assert!((small + 0.3).abs() < 1e-3, "small-x limit off: {small}");
    let large = log_deriv_k(BesselOrder::Real(0.3), 40.0).unwrap();
    assert!(large < -40.0 && large > -41.0, "large-x limit off: {large}");
}

#[test]
fn imaginary_order_continuous_at_zero_order() {
    let k0 = bessel_k(0.0f64, 1.0).unwrap();
    let ki = bessel_k_imag(1e-12f64, 1.0).unwrap();
    assert!((k0 - ki).abs() < 1e-9, "K_0 vs K_i0 gap: {}", (k0 - ki).abs());
}

#[test]
fn macdonald_monotone_decreasing_in_argument() {
    for &nu in &[0.0, 0.3, 0.7, 0.95] {
        let mut prev = f64::INFINITY;
        for &x in &log_grid(0.05, 25.0, 60) {
            let k = bessel_k(nu, x).unwrap();
            assert!(k > 0.0 && k < prev, "K not decreasing at nu = {nu}, x = {x}");
            prev = k;
        }
    }
}

#[test]
fn two_term_small_argument_form_tracks_full_function() {
    let full = bessel_k(0.25f64, 1e-4).unwrap();
    let two_term = k_small_x(0.25, 1e-4).unwrap();
    assert!(
        ((two_term - full) / full).abs() < 1e-6,
        "two-term form off: {two_term} vs {full}"
    );
}
