//! Gamma function and the small-order helpers used by the Bessel routines.

use crate::error::{Error, Result};
use crate::real::Real;

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(x) for real x, excluding the poles at x = 0, -1, -2, ...
pub fn gamma<F: Real>(x: F) -> Result<F> {
    if !x.is_finite() {
        return Err(Error::domain("gamma", "argument must be finite"));
    }
    if x <= F::zero() && x == x.floor() {
        return Err(Error::Pole {
            what: "gamma",
            location: x.as_f64(),
        });
    }
    if x < F::lit(0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let pi = F::PI();
        return Ok(pi / ((pi * x).sin() * gamma(F::one() - x)?));
    }
    let z = x - F::one();
    let mut acc = F::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + F::lit(c) / (z + F::lit(i as f64));
    }
    let g = F::lit(7.5);
    let t = z + g;
    let sqrt_two_pi = F::lit(2.506_628_274_631_000_5);
    Ok(sqrt_two_pi * t.powf(z + F::lit(0.5)) * (-t).exp() * acc)
}

/// Coefficients of 1 - zeta(k) for k = 2..=27, used to resum the log-gamma
/// Taylor series with the elementary part split off in closed form.
const ZETA_M1: [f64; 26] = [
    0.644_934_066_848_226_44,
    0.202_056_903_159_594_29,
    0.082_323_233_711_138_19,
    0.036_927_755_143_369_93,
    0.017_343_061_984_449_14,
    0.008_349_277_381_922_827,
    0.004_077_356_197_944_339,
    0.002_008_392_826_082_214,
    0.000_994_575_127_818_085_3,
    0.000_494_188_604_119_464_6,
    0.000_246_086_553_308_048_3,
    0.000_122_713_347_578_489_1,
    0.000_061_248_135_058_704_83,
    0.000_030_588_236_307_020_49,
    0.000_015_282_259_408_651_87,
    0.000_007_637_197_637_899_76,
    0.000_003_817_293_264_999_84,
    0.000_001_908_212_716_553_94,
    0.000_000_953_962_033_872_80,
    0.000_000_476_932_986_787_81,
    0.000_000_238_450_502_727_73,
    0.000_000_119_219_925_965_31,
    0.000_000_059_608_189_051_26,
    0.000_000_029_803_503_514_65,
    0.000_000_014_901_554_828_37,
    0.000_000_007_450_711_789_84,
];

/// Small-order gamma bundle for the Temme series, valid for |z| <= 0.5.
///
/// `g1 = [1/Gamma(1-z) - 1/Gamma(1+z)] / (2z)` (with the z -> 0 limit
/// -euler_gamma), `g2 = [1/Gamma(1-z) + 1/Gamma(1+z)] / 2`, and the two
/// reciprocals themselves. Computed from the Taylor series of ln Gamma split
/// into even and odd parts so g1 suffers no cancellation near z = 0.
pub struct GammaPair<F> {
    pub g1: F,
    pub g2: F,
    pub inv_gamma_plus: F,
    pub inv_gamma_minus: F,
}

pub fn gamma_pair<F: Real>(z: F) -> Result<GammaPair<F>> {
    if z.abs() > F::lit(0.5000000001) {
        return Err(Error::domain("gamma_pair", "|z| must not exceed 1/2"));
    }
    // ln(1/Gamma(1+z)) = E(z) + O(z) with E even and O odd:
    //   O(z) = gamma*z + atanh(z) - z + sum_{odd k>=3} (zeta(k)-1) z^k / k
    //   E(z) = ln(1-z^2)/2 - sum_{even k>=2} (zeta(k)-1) z^k / k
    let one = F::one();
    let mut odd_tail = F::zero();
    let mut even_tail = F::zero();
    let z2 = z * z;
    let mut zk = z2; // z^k starting at k = 2
    for (idx, &c) in ZETA_M1.iter().enumerate() {
        let k = idx + 2;
        let term = F::lit(c) * zk / F::lit(k as f64);
        if k % 2 == 0 {
            even_tail = even_tail + term;
        } else {
            odd_tail = odd_tail + term;
        }
        zk = zk * z;
    }
    let atanh_minus_z = if z.abs() < F::lit(1e-20) {
        F::zero()
    } else {
        F::lit(0.5) * ((one + z) / (one - z)).ln() - z
    };
    let o = F::euler_gamma() * z + atanh_minus_z + odd_tail;
    let e = F::lit(0.5) * (one - z2).ln() - even_tail;

    let exp_e = e.exp();
    let inv_gamma_plus = (e + o).exp();
    let inv_gamma_minus = (e - o).exp();

    // g1 = -exp(E) * sinh(O)/z; expand sinh(O)/z = (O/z) * sinh(O)/O to keep
    // the z -> 0 limit exact.
    let o_over_z = if z == F::zero() {
        F::euler_gamma()
    } else {
        o / z
    };
    let sinhc = if o.abs() < F::lit(1e-4) {
        let o2 = o * o;
        one + o2 / F::lit(6.0) + o2 * o2 / F::lit(120.0)
    } else {
        o.sinh() / o
    };
    let g1 = -exp_e * o_over_z * sinhc;
    let g2 = exp_e * o.cosh();

    Ok(GammaPair {
        g1,
        g2,
        inv_gamma_plus,
        inv_gamma_minus,
    })
}
