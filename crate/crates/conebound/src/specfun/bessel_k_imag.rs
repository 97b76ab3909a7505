//! Macdonald function of imaginary order, K_{i nu}(x).
//!
//! For real nu and x > 0 the function is real and is computed from its
//! integral representation
//!
//!   K_{i nu}(x) = integral of exp(-x cosh t) cos(nu t) dt over t in [0, inf)
//!
//! by adaptive Gauss-Kronrod quadrature on a truncated interval. Unlike the
//! real-order case, K_{i nu} oscillates through zero as x -> 0, which is
//! exactly the behaviour the attractive-branch spectrum is built on.

use crate::error::{Error, Result};
use crate::real::Real;

use super::quad::integrate;

fn cutoff<F: Real>(x: F) -> F {
    // exp(-x cosh t) is below the smallest positive scalar beyond this t
    let budget = -(F::min_positive_value().ln()) * F::lit(1.05);
    let ratio = (budget / x).max(F::lit(1.0001));
    // acosh(ratio)
    (ratio + (ratio * ratio - F::one()).sqrt()).ln()
}

fn check_args<F: Real>(nu: F, x: F) -> Result<()> {
    if !(x > F::zero()) || !x.is_finite() {
        return Err(Error::domain("bessel_k_imag", "x must be positive and finite"));
    }
    if !nu.is_finite() || nu < F::zero() {
        return Err(Error::domain(
            "bessel_k_imag",
            "order parameter must be non-negative (K_{i nu} is even in nu)",
        ));
    }
    Ok(())
}

/// K_{i nu}(x) for nu >= 0, x > 0.
pub fn bessel_k_imag<F: Real>(nu: F, x: F) -> Result<F> {
    check_args(nu, x)?;
    let t_max = cutoff(x);
    let peak = (-x).exp();
    let abs_tol = (peak * F::lit(1e-13)).max(F::min_positive_value() * F::lit(1e4));
    let q = integrate(
        |t: F| (-x * t.cosh()).exp() * (nu * t).cos(),
        F::zero(),
        t_max,
        abs_tol,
        F::lit(1e-13),
    )?;
    Ok(q.value)
}

/// d/dx K_{i nu}(x) for nu >= 0, x > 0.
pub fn bessel_k_imag_deriv<F: Real>(nu: F, x: F) -> Result<F> {
    check_args(nu, x)?;
    let t_max = cutoff(x);
    let peak = (-x).exp() * t_max.cosh().min(F::lit(1e30));
    let abs_tol = (peak * F::lit(1e-13)).max(F::min_positive_value() * F::lit(1e4));
    let q = integrate(
        |t: F| -(-x * t.cosh()).exp() * t.cosh() * (nu * t).cos(),
        F::zero(),
        t_max,
        abs_tol,
        F::lit(1e-13),
    )?;
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values computed with 40-digit arbitrary-precision arithmetic
    const REFS: [(f64, f64, f64); 4] = [
        (1.0, 1.0, 0.289_428_037_025_992_127_63),
        (0.5, 0.5, 0.791_734_305_412_618_116_62),
        (0.866_025_403_784_438_646_76, 2.0, 0.097_385_299_636_409_397_76),
        (1.0, 0.1, 0.225_381_885_301_567_769_69),
    ];

    #[test]
    fn matches_reference_values() {
        for &(nu, x, want) in &REFS {
            let got = bessel_k_imag(nu, x).unwrap();
            assert!(
                (got - want).abs() < 1e-10 * want.abs().max(1e-3),
                "K_i{nu}({x}) = {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn zero_order_reduces_to_k0() {
        let got = bessel_k_imag(0.0f64, 1.0).unwrap();
        assert!((got - 0.421_024_438_240_708_333_34).abs() < 1e-12);
    }

    #[test]
    fn oscillates_near_the_origin() {
        // K_{i}(x) changes sign between x = 0.0638 and x = 0.08
        let lo = bessel_k_imag(1.0f64, 0.0638).unwrap();
        let hi = bessel_k_imag(1.0f64, 0.08).unwrap();
        assert!(lo < 0.0, "K_i1(0.0638) = {lo:e} should be negative");
        assert!(hi > 0.0, "K_i1(0.08) = {hi:e} should be positive");
        assert!((lo + 0.001_265_433_551_391_400_345_5).abs() < 1e-9);
        assert!((hi - 0.115_723_252_119_684_069_94).abs() < 1e-9);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for &(nu, x) in &[(1.0f64, 1.0), (0.5, 0.3), (0.25, 2.0)] {
            let d = bessel_k_imag_deriv(nu, x).unwrap();
            let fd = (bessel_k_imag(nu, x + h).unwrap() - bessel_k_imag(nu, x - h).unwrap())
                / (2.0 * h);
            assert!((d - fd).abs() < 1e-6, "deriv mismatch at nu={nu}, x={x}");
        }
    }

    #[test]
    fn decays_at_large_argument() {
        let v = bessel_k_imag(1.0f64, 30.0).unwrap();
        // sqrt(pi/60) exp(-30) is the leading magnitude
        assert!(v.abs() < 1e-13);
        assert!(v.abs() > 0.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_k_imag(1.0, 0.0).is_err());
        assert!(bessel_k_imag(-1.0, 1.0).is_err());
    }
}
