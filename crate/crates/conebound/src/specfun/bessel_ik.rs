//! Modified Bessel functions I_nu and K_nu of real non-negative order.
//!
//! The evaluation strategy is the classical one: a continued fraction for
//! I'/I at the requested order, downward recurrence to an order in
//! [-1/2, 1/2], then either the small-x series for K (x < 2) or Steed's
//! continued fraction (x >= 2), a Wronskian normalization for I, and upward
//! recurrence for K back to the requested order.

use crate::error::{Error, Result};
use crate::real::Real;

use super::gamma::gamma_pair;

const MAX_ITER: usize = 10_000;
const XMIN_SERIES: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselIK<F> {
    pub i: F,
    pub k: F,
    pub i_prime: F,
    pub k_prime: F,
}

/// I_nu(x), K_nu(x) and their x-derivatives for nu >= 0, x > 0.
pub fn bessel_ik<F: Real>(nu: F, x: F) -> Result<BesselIK<F>> {
    if !(x > F::zero()) || !x.is_finite() {
        return Err(Error::domain("bessel_ik", "x must be positive and finite"));
    }
    if !(nu >= F::zero()) || !nu.is_finite() {
        return Err(Error::domain("bessel_ik", "order must be non-negative"));
    }

    let eps = F::epsilon();
    let fpmin = F::min_positive_value() / eps;
    let one = F::one();
    let two = F::lit(2.0);
    let half = F::lit(0.5);

    let nl: i32 = (nu + half).as_f64() as i32;
    let xmu = nu - F::lit(nl as f64);
    let xi = one / x;
    let xi2 = two * xi;

    // continued fraction for f = I'/I at order nu
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = F::zero();
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b = b + xi2;
        d = one / (b + d);
        c = b + one / c;
        let del = c * d;
        h = del * h;
        if (del - one).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric("bessel_ik", "I'/I continued fraction stalled"));
    }

    // downward recurrence of the unnormalized I to order xmu
    let mut ril = fpmin;
    let mut ripl = h * ril;
    let ril_at_nu = ril;
    let ripl_at_nu = ripl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact = fact - xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    let (rkmu, rk1) = if x < F::lit(XMIN_SERIES) {
        k_series(xmu, x)?
    } else {
        k_steed(xmu, x)?
    };

    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);

    let i_nu = ril_at_nu * (rimu / ril);
    let ip_nu = ripl_at_nu * (rimu / ril);

    // upward recurrence of K back to order nu
    let mut kmu = rkmu;
    let mut k1 = rk1;
    for i in 1..=nl {
        let ktemp = (xmu + F::lit(i as f64)) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = ktemp;
    }
    let k_nu = kmu;
    let kp_nu = nu * xi * kmu - k1;

    Ok(BesselIK {
        i: i_nu,
        k: k_nu,
        i_prime: ip_nu,
        k_prime: kp_nu,
    })
}

/// Series evaluation of K_mu and K_{mu+1} for |mu| <= 1/2 and x < 2.
fn k_series<F: Real>(xmu: F, x: F) -> Result<(F, F)> {
    let eps = F::epsilon();
    let one = F::one();
    let half = F::lit(0.5);
    let xmu2 = xmu * xmu;

    let x2 = half * x;
    let pimu = F::PI() * xmu;
    let fact = if pimu.abs() < eps {
        one
    } else {
        pimu / pimu.sin()
    };
    let dlog = -(x2.ln());
    let sigma = xmu * dlog;
    let fact2 = if sigma.abs() < eps {
        one
    } else {
        sigma.sinh() / sigma
    };
    let pair = gamma_pair(xmu)?;
    let mut ff = fact * (pair.g1 * sigma.cosh() + pair.g2 * fact2 * dlog);
    let mut sum = ff;
    let e = sigma.exp();
    let mut p = half * e / pair.inv_gamma_plus;
    let mut q = half / (e * pair.inv_gamma_minus);
    let mut c = one;
    let d = x2 * x2;
    let mut sum1 = p;
    let mut converged = false;
    for i in 1..=MAX_ITER {
        let fi = F::lit(i as f64);
        ff = (fi * ff + p + q) / (fi * fi - xmu2);
        c = c * d / fi;
        p = p / (fi - xmu);
        q = q / (fi + xmu);
        let del = c * ff;
        sum = sum + del;
        let del1 = c * (p - fi * ff);
        sum1 = sum1 + del1;
        if del.abs() < sum.abs() * eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric("bessel_ik", "small-x K series stalled"));
    }
    Ok((sum, sum1 * F::lit(2.0) / x))
}

/// Steed's continued fraction for K_mu and K_{mu+1}, |mu| <= 1/2, x >= 2.
fn k_steed<F: Real>(xmu: F, x: F) -> Result<(F, F)> {
    let eps = F::epsilon();
    let one = F::one();
    let two = F::lit(2.0);
    let xmu2 = xmu * xmu;
    let xi = one / x;

    let mut b = two * (one + x);
    let mut d = one / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = F::zero();
    let mut q2 = one;
    let a1 = F::lit(0.25) - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    let mut converged = false;
    for i in 2..=MAX_ITER {
        let fi = F::lit(i as f64);
        a = a - two * (fi - one);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric("bessel_ik", "Steed continued fraction stalled"));
    }
    let h = a1 * h;
    let rkmu = (F::PI() / (two * x)).sqrt() * (-x).exp() / s;
    let rk1 = rkmu * (xmu + x + F::lit(0.5) - h) * xi;
    Ok((rkmu, rk1))
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values computed with 40-digit arbitrary-precision arithmetic
    struct Ref {
        nu: f64,
        x: f64,
        i: f64,
        k: f64,
    }

    const REFS: [Ref; 5] = [
        Ref {
            nu: 0.0,
            x: 1.0,
            i: 1.266_065_877_752_008_335_6,
            k: 0.421_024_438_240_708_333_34,
        },
        Ref {
            nu: 0.5,
            x: 1.0,
            i: 0.937_674_888_245_487_646_72,
            k: 0.461_068_504_447_894_558_44,
        },
        Ref {
            nu: 0.25,
            x: 0.7,
            i: 0.934_040_055_447_586_657_68,
            k: 0.680_575_364_401_059_397_16,
        },
        Ref {
            nu: 4.75,
            x: 3.0,
            i: 0.127_442_351_562_793_374_88,
            k: 0.696_367_791_756_040_798_84,
        },
        Ref {
            nu: 0.9,
            x: 20.0,
            i: 42_662_389.615_483_696_757,
            k: 5.855_849_244_647_558_473e-10,
        },
    ];

    #[test]
    fn matches_reference_values() {
        for r in &REFS {
            let b = bessel_ik(r.nu, r.x).unwrap();
            assert!(
                (b.i - r.i).abs() / r.i.abs() < 1e-12,
                "I_{}({}) = {:e}, want {:e}",
                r.nu,
                r.x,
                b.i,
                r.i
            );
            assert!(
                (b.k - r.k).abs() / r.k.abs() < 1e-12,
                "K_{}({}) = {:e}, want {:e}",
                r.nu,
                r.x,
                b.k,
                r.k
            );
        }
    }

    #[test]
    fn k_one_at_one() {
        let b = bessel_ik(1.0f64, 1.0).unwrap();
        assert!((b.k - 0.601_907_230_197_234_574_74).abs() < 1e-13);
    }

    #[test]
    fn wronskian_identity() {
        // I_nu(x) K'_nu(x) - I'_nu(x) K_nu(x) = -1/x
        for &(nu, x) in &[(0.0f64, 0.3), (0.25, 1.0), (0.75, 2.5), (3.2, 7.0), (1.0, 0.05)] {
            let b = bessel_ik(nu, x).unwrap();
            let w = b.i * b.k_prime - b.i_prime * b.k;
            assert!(
                (w + 1.0 / x).abs() < 1e-13 * (1.0 / x),
                "Wronskian off at nu={nu}, x={x}: {w:e}"
            );
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for &(nu, x) in &[(0.25f64, 1.5), (1.0, 3.0), (2.5, 0.8)] {
            let b = bessel_ik(nu, x).unwrap();
            let kp_fd = (bessel_ik(nu, x + h).unwrap().k - bessel_ik(nu, x - h).unwrap().k)
                / (2.0 * h);
            assert!((b.k_prime - kp_fd).abs() < 1e-6 * b.k_prime.abs().max(1.0));
            let ip_fd = (bessel_ik(nu, x + h).unwrap().i - bessel_ik(nu, x - h).unwrap().i)
                / (2.0 * h);
            assert!((b.i_prime - ip_fd).abs() < 1e-6 * b.i_prime.abs().max(1.0));
        }
    }

    #[test]
    fn continuity_across_series_and_fraction() {
        for &nu in &[0.0f64, 0.25, 0.5, 1.3, 4.0] {
            let lo = bessel_ik(nu, 1.999_999).unwrap();
            let hi = bessel_ik(nu, 2.000_001).unwrap();
            assert!((lo.k - hi.k).abs() / hi.k < 1e-5);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_ik(0.5, 0.0).is_err());
        assert!(bessel_ik(0.5, -1.0).is_err());
        assert!(bessel_ik(-0.5, 1.0).is_err());
    }

    #[test]
    fn works_in_f32() {
        let b = bessel_ik(0.25f32, 0.7f32).unwrap();
        assert!((b.k - 0.680_575_4f32).abs() < 1e-5);
    }
}
