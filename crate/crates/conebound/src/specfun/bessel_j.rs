//! Bessel function of the first kind, real non-negative order.
//!
//! The ascending series is used up to x = 12, where its worst-case
//! cancellation still leaves about twelve significant digits; beyond that
//! the Hankel asymptotic expansion takes over. The bound-state code only
//! ever evaluates J inside the well, at arguments below sqrt(2), so the
//! large-x branch exists for completeness of the public API.

use crate::error::{Error, Result};
use crate::real::Real;

use super::gamma::gamma;

const SERIES_MAX_X: f64 = 12.0;
const MAX_TERMS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJ<F> {
    pub j: F,
    pub j_prime: F,
}

/// J_nu(x) and its x-derivative for nu >= 0, x >= 0.
pub fn bessel_j<F: Real>(nu: F, x: F) -> Result<BesselJ<F>> {
    if !(nu >= F::zero()) || !nu.is_finite() {
        return Err(Error::domain("bessel_j", "order must be non-negative"));
    }
    if !(x >= F::zero()) || !x.is_finite() {
        return Err(Error::domain("bessel_j", "x must be non-negative and finite"));
    }
    if x == F::zero() {
        let j = if nu == F::zero() { F::one() } else { F::zero() };
        let jp = if nu == F::one() {
            F::lit(0.5)
        } else if nu == F::zero() {
            F::zero()
        } else if nu < F::one() {
            return Err(Error::domain(
                "bessel_j",
                "derivative diverges at x = 0 for 0 < order < 1",
            ));
        } else {
            F::zero()
        };
        return Ok(BesselJ { j, j_prime: jp });
    }

    let j = bessel_j_value(nu, x)?;
    let j_next = bessel_j_value(nu + F::one(), x)?;
    Ok(BesselJ {
        j,
        j_prime: nu / x * j - j_next,
    })
}

fn bessel_j_value<F: Real>(nu: F, x: F) -> Result<F> {
    if x <= F::lit(SERIES_MAX_X) {
        series(nu, x)
    } else {
        hankel(nu, x)
    }
}

fn series<F: Real>(nu: F, x: F) -> Result<F> {
    let half_x = F::lit(0.5) * x;
    let mut term = half_x.powf(nu) / gamma(nu + F::one())?;
    let mut sum = term;
    let msq = -half_x * half_x;
    for k in 1..=MAX_TERMS {
        let fk = F::lit(k as f64);
        term = term * msq / (fk * (nu + fk));
        sum = sum + term;
        if term.abs() < sum.abs().max(F::min_positive_value()) * F::epsilon() {
            return Ok(sum);
        }
    }
    Err(Error::numeric("bessel_j", "ascending series stalled"))
}

/// Asymptotic amplitude-phase expansion, reliable for x well above nu^2.
fn hankel<F: Real>(nu: F, x: F) -> Result<F> {
    let one = F::one();
    let two = F::lit(2.0);
    let mu4 = F::lit(4.0) * nu * nu;
    let inv8x = one / (F::lit(8.0) * x);

    let mut p = one;
    let mut q = F::zero();
    let mut term = one;
    let mut prev = F::infinity();
    for k in 1..=60usize {
        let fk = F::lit(k as f64);
        let odd = two * fk - one;
        term = term * (mu4 - odd * odd) * inv8x / fk;
        if term.abs() > prev {
            break; // asymptotic tail started growing
        }
        prev = term.abs();
        match k % 4 {
            1 => q = q + term,
            2 => p = p - term,
            3 => q = q - term,
            _ => p = p + term,
        }
        if term.abs() < F::epsilon() {
            break;
        }
    }
    let chi = x - (nu * F::lit(0.5) + F::lit(0.25)) * F::PI();
    let amp = (two / (F::PI() * x)).sqrt();
    Ok(amp * (p * chi.cos() - q * chi.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values computed with 40-digit arbitrary-precision arithmetic
    const REFS: [(f64, f64, f64); 5] = [
        (0.0, 1.0, 0.765_197_686_557_966_551_45),
        (1.0, 1.0, 0.440_050_585_744_933_515_96),
        (0.25, 1.0, 0.752_231_333_340_790_056_98),
        (1.25, 1.0, 0.331_414_550_855_890_397_43),
        (3.5, 9.0, -0.268_266_951_379_266_280_99),
    ];

    #[test]
    fn matches_reference_values() {
        for &(nu, x, want) in &REFS {
            let got = bessel_j(nu, x).unwrap().j;
            assert!(
                (got - want).abs() < 1e-12 * want.abs().max(1.0),
                "J_{nu}({x}) = {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn derivative_identity_j0() {
        // J0' = -J1
        let b0 = bessel_j(0.0f64, 1.0).unwrap();
        let b1 = bessel_j(1.0, 1.0).unwrap();
        assert!((b0.j_prime + b1.j).abs() < 1e-13);
        // and the log-derivative fixture x J0'/J0 at x = 1
        let ld = 1.0 * b0.j_prime / b0.j;
        assert!((ld + 0.575_080_915_004_305_960_5).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for &(nu, x) in &[(0.5f64, 1.3), (2.0, 4.0), (0.1, 0.2)] {
            let b = bessel_j(nu, x).unwrap();
            let fd =
                (bessel_j(nu, x + h).unwrap().j - bessel_j(nu, x - h).unwrap().j) / (2.0 * h);
            assert!((b.j_prime - fd).abs() < 1e-6);
        }
    }

    #[test]
    fn large_argument_branch_is_continuous() {
        // both sides of the series/asymptotic switch against reference
        // values, so a jump at the seam cannot hide inside a loose bound
        let refs = [
            (0.0f64, 0.047_689_087_349_695_891_081, 0.047_689_534_243_904_872_264),
            (0.5, -0.123_588_735_469_814_734_85, -0.123_588_336_441_962_404_85),
            (1.0, -0.223_447_170_800_422_265_29, -0.223_447_038_180_616_589_88),
            (2.0, -0.084_930_285_586_532_788_366, -0.084_930_704_170_576_810_021),
        ];
        for &(nu, want_lo, want_hi) in &refs {
            let lo = bessel_j(nu, 11.999_999).unwrap().j;
            let hi = bessel_j(nu, 12.000_001).unwrap().j;
            assert!((lo - want_lo).abs() < 1e-10, "series side of J_{nu} at 12");
            assert!((hi - want_hi).abs() < 1e-10, "asymptotic side of J_{nu} at 12");
        }
    }

    #[test]
    fn small_argument_limits() {
        let b = bessel_j(0.0, 0.0).unwrap();
        assert_eq!(b.j, 1.0);
        assert_eq!(b.j_prime, 0.0);
        let b = bessel_j(1.0, 0.0).unwrap();
        assert_eq!(b.j, 0.0);
        assert_eq!(b.j_prime, 0.5);
        let b = bessel_j(2.5, 0.0).unwrap();
        assert_eq!(b.j, 0.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_j(-1.0, 1.0).is_err());
        assert!(bessel_j(1.0, -1.0).is_err());
        assert!(bessel_j(0.5, 0.0).is_err());
    }
}
