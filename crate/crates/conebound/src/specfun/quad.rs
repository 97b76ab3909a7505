//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! A 7-point Gauss rule embedded in a 15-point Kronrod rule gives the value
//! and an error estimate per panel; panels whose estimate exceeds the local
//! tolerance are bisected. This is the integration workhorse behind the
//! imaginary-order Bessel evaluations and the curvature checks.

use crate::error::{Error, Result};
use crate::real::Real;

/// Kronrod abscissae on [0, 1] (the positive half; the rule is symmetric).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

/// Weights of the 15-point Kronrod rule, matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

/// Weights of the embedded 7-point Gauss rule (odd-indexed abscissae).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<F> {
    pub value: F,
    pub error_estimate: F,
    pub panels: usize,
}

fn gk15<F: Real>(f: &mut impl FnMut(F) -> F, a: F, b: F) -> (F, F, F) {
    let half = F::lit(0.5);
    let center = half * (a + b);
    let hlen = half * (b - a);
    let fc = f(center);
    let mut kronrod = F::lit(WGK[7]) * fc;
    let mut gauss = F::lit(WG[3]) * fc;
    let mut l1 = F::lit(WGK[7]) * fc.abs();
    for j in 0..7 {
        let dx = hlen * F::lit(XGK[j]);
        let (fl, fr) = (f(center - dx), f(center + dx));
        let fsum = fl + fr;
        kronrod = kronrod + F::lit(WGK[j]) * fsum;
        l1 = l1 + F::lit(WGK[j]) * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            gauss = gauss + F::lit(WG[j / 2]) * fsum;
        }
    }
    (
        kronrod * hlen,
        (kronrod - gauss).abs() * hlen.abs(),
        l1 * hlen.abs(),
    )
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol` or relative
/// tolerance `rel_tol`, whichever is looser at the achieved magnitude.
pub fn integrate<F: Real>(
    mut f: impl FnMut(F) -> F,
    a: F,
    b: F,
    abs_tol: F,
    rel_tol: F,
) -> Result<Quadrature<F>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integrate", "interval endpoints must be finite"));
    }
    if a == b {
        return Ok(Quadrature {
            value: F::zero(),
            error_estimate: F::zero(),
            panels: 0,
        });
    }

    const MAX_DEPTH: u32 = 48;
    const MAX_PANELS: usize = 1 << 16;

    struct Stack<F> {
        total: F,
        err: F,
        panels: usize,
    }

    fn recurse<F: Real>(
        f: &mut impl FnMut(F) -> F,
        a: F,
        b: F,
        tol: F,
        depth: u32,
        acc: &mut Stack<F>,
    ) -> Result<()> {
        let (val, err, l1) = gk15(f, a, b);
        acc.panels += 1;
        if acc.panels > MAX_PANELS {
            return Err(Error::numeric("integrate", "panel budget exhausted"));
        }
        // the Kronrod-Gauss difference bottoms out at roundoff in the
        // panel's L1 mass, and past that point splitting shrinks the
        // estimate and the tolerance at the same rate, forever
        let floor = F::epsilon() * F::lit(50.0) * l1;
        if err <= tol.max(floor) || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && err > tol.max(floor) * F::lit(1e3) {
                return Err(Error::numeric(
                    "integrate",
                    "recursion depth exhausted without convergence",
                ));
            }
            acc.total = acc.total + val;
            acc.err = acc.err + err;
            return Ok(());
        }
        let mid = F::lit(0.5) * (a + b);
        let htol = F::lit(0.5) * tol;
        recurse(f, a, mid, htol, depth + 1, acc)?;
        recurse(f, mid, b, htol, depth + 1, acc)
    }

    let (rough, _, _) = gk15(&mut f, a, b);
    let scale = rough.abs().max(F::one());
    let tol = abs_tol.max(rel_tol * scale);
    if !tol.is_finite() || tol <= F::zero() {
        return Err(Error::domain("integrate", "tolerances must be positive"));
    }

    let mut acc = Stack {
        total: F::zero(),
        err: F::zero(),
        panels: 0,
    };
    recurse(&mut f, a, b, tol, 0, &mut acc)?;
    Ok(Quadrature {
        value: acc.total,
        error_estimate: acc.err,
        panels: acc.panels,
    })
}
