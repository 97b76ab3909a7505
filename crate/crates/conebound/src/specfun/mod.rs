//! Special functions needed by the cone bound-state problem.
//!
//! Everything here is hand-rolled against the usual textbook algorithms:
//! Lanczos for the gamma function, Temme's series plus Steed's continued
//! fraction for the modified Bessel pair, the ascending series for J, and
//! adaptive Gauss-Kronrod quadrature for the imaginary-order Macdonald
//! function, which has no stable recurrence to lean on.

pub mod bessel_ik;
pub mod bessel_j;
pub mod bessel_k_imag;
pub mod gamma;
pub mod quad;

pub use bessel_ik::{bessel_ik, BesselIK};
pub use bessel_j::{bessel_j, BesselJ};
pub use bessel_k_imag::{bessel_k_imag, bessel_k_imag_deriv};
pub use gamma::gamma;
pub use quad::{integrate, Quadrature};

use crate::error::{Error, Result};
use crate::real::Real;

/// Order of a Macdonald function: `Real(nu)` means K_nu, `Imaginary(nu)`
/// means K_{i nu}. Both carry a non-negative real parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BesselOrder<F> {
    Real(F),
    Imaginary(F),
}

/// K_nu(x) alone, for real order.
pub fn bessel_k<F: Real>(nu: F, x: F) -> Result<F> {
    Ok(bessel_ik(nu, x)?.k)
}

/// Logarithmic derivative x K'(x)/K(x) for real or imaginary order.
///
/// The real-order derivative is assembled from the symmetric recurrence
/// K'_nu = -(K_{nu-1} + K_{nu+1})/2 together with K_{-nu} = K_nu; the
/// imaginary-order one comes from differentiating under the integral sign.
/// Near a zero of K_{i nu} (they accumulate at x = 0) the quotient has a
/// pole and the call reports it instead of returning a huge number.
pub fn log_deriv_k<F: Real>(order: BesselOrder<F>, x: F) -> Result<F> {
    match order {
        BesselOrder::Real(nu) => {
            if !nu.is_finite() || nu < F::zero() {
                return Err(Error::domain(
                    "log_deriv_k",
                    "real order must be non-negative (K is even in its order)",
                ));
            }
            let k_lo = bessel_k((nu - F::one()).abs(), x)?;
            let k_hi = bessel_k(nu + F::one(), x)?;
            let k_mid = bessel_k(nu, x)?;
            Ok(-x * (k_lo + k_hi) / (F::lit(2.0) * k_mid))
        }
        BesselOrder::Imaginary(nu) => {
            if !nu.is_finite() || nu < F::zero() {
                return Err(Error::domain(
                    "log_deriv_k",
                    "imaginary order parameter must be non-negative",
                ));
            }
            let den = bessel_k_imag(nu, x)?;
            let amplitude = bessel_k(F::zero(), x)?; // |K_{i nu}| <= K_0
            if den.abs() < amplitude * F::lit(1e-10) {
                return Err(Error::Pole {
                    what: "bessel_k_imag",
                    location: x.as_f64(),
                });
            }
            let num = bessel_k_imag_deriv(nu, x)?;
            Ok(x * num / den)
        }
    }
}

/// Two-term small-argument model of K_nu(x) for real order 0 < nu < 1:
///
///   K_nu(x) ~ pi/(2 sin(pi nu)) * [ (x/2)^(-nu)/Gamma(1-nu)
///                                 - (x/2)^(+nu)/Gamma(1+nu) ]
///
/// This is the truncation the matching condition is derived from, kept
/// public so the derivation can be tested against the full function.
pub fn k_small_x<F: Real>(nu: F, x: F) -> Result<F> {
    if !(nu > F::zero() && nu < F::one()) {
        return Err(Error::domain("k_small_x", "order must lie in (0, 1)"));
    }
    if !(x > F::zero()) {
        return Err(Error::domain("k_small_x", "x must be positive"));
    }
    let half_x = F::lit(0.5) * x;
    let lead = F::PI() / (F::lit(2.0) * (F::PI() * nu).sin());
    let neg = half_x.powf(-nu) / gamma(F::one() - nu)?;
    let pos = half_x.powf(nu) / gamma(F::one() + nu)?;
    Ok(lead * (neg - pos))
}
