//! Boundary matching at the tip: deficiency check, extension parameter,
//! and the transcendental bound-state condition.
//!
//! Removing the tip leaves a radial operator that is not essentially
//! self-adjoint; its closure admits a one-parameter family of extensions
//! labelled by a phase eta. This module checks the deficiency subspaces
//! are one-dimensional, fits eta so that the extension reproduces the
//! tip-strength matching, and solves the resulting eigenvalue condition
//! numerically as an independent cross-check of the closed-form spectra.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{mu_squared, tip_strength, ConeGeometry, OrderKind, Theory};
use crate::real::Real;
use crate::spectra::{bracket, EnergyLevel, Method};
use crate::specfun::quad::integrate;
use crate::specfun::{gamma, log_deriv_k, BesselOrder};

/// Matching target lambda = (1 - alpha)/alpha + mu^2/2, the combined
/// strength of the tip delta and the induced-potential correction that the
/// boundary condition at the reference radius must reproduce.
pub fn lambda_target<F: Real>(alpha: F, mu_squared: F) -> F {
    tip_strength(alpha) + mu_squared * F::lit(0.5)
}

/// Small-argument model of the boundary log-derivative x K'_mu(x)/K_mu(x)
/// expressed through the scaled energy e < 0 (x = sqrt(2|e|)):
///
///   LHS(e) = mu (1 + W)/(W - 1),
///   W = [Gamma(1-mu)/Gamma(1+mu)] (|e|/2)^mu.
///
/// Runs from -mu (e -> 0-) to +mu (e -> -inf) with a pole where W = 1.
pub fn matching_lhs<F: Real>(e_scaled: F, mu: F) -> Result<F> {
    if !(e_scaled < F::zero()) || !e_scaled.is_finite() {
        return Err(Error::domain("matching_lhs", "scaled energy must be negative"));
    }
    if !(mu > F::zero() && mu < F::one()) {
        return Err(Error::OutOfWindow { mu_abs: mu.as_f64() });
    }
    let one = F::one();
    let ratio = gamma(one - mu)? / gamma(one + mu)?;
    let ln_w = ratio.ln() + mu * (e_scaled.abs() / F::lit(2.0)).ln();
    let w = ln_w.exp();
    let den = w - one;
    if den.abs() < F::epsilon() * F::lit(4.0) * (w + one) {
        return Err(Error::Pole {
            what: "matching_lhs",
            location: e_scaled.as_f64(),
        });
    }
    Ok(mu * (one + w) / den)
}

/// Canonical residual of the real-order matching condition,
/// matching_lhs(e) + lambda. Its root is the bound-state energy; the
/// endpoint limits are lambda - mu (e -> 0-) and lambda + mu (e -> -inf),
/// so a root exists exactly when |lambda| > mu, i.e. when the closed-form
/// bracket is positive.
pub fn matching_residual<F: Real>(e_scaled: F, mu: F, alpha: F) -> Result<F> {
    if !(alpha > F::zero()) || !alpha.is_finite() {
        return Err(Error::domain("matching_residual", "alpha must be positive"));
    }
    Ok(matching_lhs(e_scaled, mu)? + lambda_target(alpha, mu * mu))
}

/// Outcome of the numerical eigenvalue search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveOutcome<F> {
    Root(EnergyLevel<F>),
    /// No sign change: the residual limits at the two ends of the energy
    /// axis are reported for diagnosis.
    NoRoot {
        residual_at_origin: F,
        residual_at_infinity: F,
    },
}

fn bisect<F: Real>(
    mut f: impl FnMut(F) -> Result<F>,
    mut lo: F,
    mut hi: F,
    f_lo_sign: bool,
) -> Result<F> {
    for _ in 0..200 {
        let mid = F::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if (fm > F::zero()) == f_lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(F::lit(0.5) * (lo + hi))
}

fn count_sign_changes<F: Real>(values: &[F]) -> usize {
    let mut changes = 0;
    let mut prev: Option<bool> = None;
    for &v in values {
        if !v.is_finite() {
            continue;
        }
        let s = v > F::zero();
        if let Some(p) = prev {
            if p != s {
                changes += 1;
            }
        }
        prev = Some(s);
    }
    changes
}

/// Solves the boundary-matching condition for channel (theory, alpha, l).
///
/// Real order 0 < mu < 1 uses the canonical residual; mu = 0 (Klein-Gordon
/// l = 0) solves the full logarithmic matching x K_0'(x)/K_0(x) = lambda
/// with the complete Macdonald function, which is why its root differs
/// from the two-term closed form by a few percent at moderate alpha.
/// Imaginary order is out of scope for the matching analysis.
pub fn solve_energy<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<SolveOutcome<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    match momentum.order {
        OrderKind::ImaginaryOrder(_) => Err(Error::WrongBranch {
            what: "solve_energy",
            expected: "real-order or mu = 0",
            mu2: momentum.mu_squared.as_f64(),
        }),
        OrderKind::ZeroOrder => {
            if theory == Theory::KleinGordon && l == 0 {
                solve_log_matching(theory, alpha, l)
            } else {
                Err(Error::OutOfWindow { mu_abs: 0.0 })
            }
        }
        OrderKind::RealOrder(mu) => {
            if mu >= F::one() {
                return Err(Error::OutOfWindow { mu_abs: mu.as_f64() });
            }
            solve_real_order(theory, alpha, l, mu)
        }
    }
}

fn solve_real_order<F: Real>(
    theory: Theory,
    alpha: F,
    l: i32,
    mu: F,
) -> Result<SolveOutcome<F>> {
    let lambda = lambda_target(alpha, mu * mu);
    let res_origin = lambda - mu;
    let res_infinity = lambda + mu;
    // the residual runs lambda - mu -> -inf on the shallow side of its pole
    // and +inf -> lambda + mu on the deep side, so a crossing exists exactly
    // when |lambda| > mu, i.e. when both endpoint values share a sign
    if !(res_origin * res_infinity > F::zero()) {
        return Ok(SolveOutcome::NoRoot {
            residual_at_origin: res_origin,
            residual_at_infinity: res_infinity,
        });
    }

    // work in t = ln|e|; the residual has its pole at t_pole and is
    // monotone on each side of it
    let one = F::one();
    let ratio = gamma(one + mu)? / gamma(one - mu)?;
    let t_pole = F::lit(2.0).ln() + ratio.ln() / mu;
    let deep = res_infinity < F::zero(); // root on the |e| > |e_pole| side

    // seed the far end of the bracket from the bracket function itself so a
    // very deep root is still enclosed
    let b = bracket(mu, tip_strength(alpha))?;
    let t_root_guess = F::lit(2.0).ln() + b.ln() / mu;
    let cap = F::max_value().ln() * F::lit(0.985);
    if t_root_guess.abs() > cap {
        return Err(Error::numeric(
            "solve_energy",
            "matching root lies outside the representable energy range",
        ));
    }

    let margin = F::lit(1e-6) * t_pole.abs().max(one);
    let (lo, hi) = if deep {
        (
            t_pole + margin,
            (t_root_guess + F::lit(5.0)).max(F::lit(1e8).ln()).min(cap),
        )
    } else {
        (
            (t_root_guess - F::lit(5.0)).min(F::lit(-60.0)),
            t_pole - margin,
        )
    };

    let residual_at = |t: F| -> Result<F> {
        Ok(matching_lhs(-(t.exp()), mu)? + lambda)
    };

    // multiplicity guard: the residual is monotone between its endpoints,
    // so anything other than exactly one crossing is a logic failure
    let n = 64;
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = lo + (hi - lo) * F::lit(i as f64) / F::lit(n as f64);
        values.push(residual_at(t)?);
    }
    match count_sign_changes(&values) {
        0 => {
            return Err(Error::numeric(
                "solve_energy",
                "bracket analysis promised a root but the scan found none",
            ))
        }
        1 => {}
        k => {
            return Err(Error::MultipleRoots {
                what: "solve_energy",
                count: k,
            })
        }
    }

    let f_lo_sign = values[0] > F::zero();
    let mut lo_t = lo;
    let mut hi_t = hi;
    for (i, pair) in values.windows(2).enumerate() {
        if (pair[0] > F::zero()) != (pair[1] > F::zero()) {
            lo_t = lo + (hi - lo) * F::lit(i as f64) / F::lit(n as f64);
            hi_t = lo + (hi - lo) * F::lit((i + 1) as f64) / F::lit(n as f64);
            break;
        }
    }
    let t_star = bisect(residual_at, lo_t, hi_t, f_lo_sign)?;
    let e_star = -(t_star.exp());
    let check = residual_at(t_star)?;
    if check.abs() > F::lit(1e-8).max(F::epsilon() * F::lit(1e6)) * lambda.abs().max(one) {
        return Err(Error::numeric("solve_energy", "bisection failed to converge"));
    }
    Ok(SolveOutcome::Root(EnergyLevel {
        theory,
        l,
        method: Method::SaepRoot,
        e_scaled: e_star,
    }))
}

fn solve_log_matching<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<SolveOutcome<F>> {
    let lambda = tip_strength(alpha);
    if lambda >= F::zero() {
        return Ok(SolveOutcome::NoRoot {
            residual_at_origin: -lambda,
            residual_at_infinity: F::neg_infinity(),
        });
    }
    // seed from the two-term closed form, then solve with the full K_0
    let ln_abs_e =
        F::lit(2.0).ln() + F::lit(2.0) / lambda - F::lit(2.0) * F::euler_gamma();
    let cap = F::max_value().ln() * F::lit(0.985);
    if ln_abs_e < -cap {
        return Err(Error::numeric(
            "solve_energy",
            "scaled energy underflows to zero (alpha too close to 1)",
        ));
    }
    let t_seed = F::lit(0.5) * (F::lit(2.0).ln() + ln_abs_e); // ln x at the seed
    let residual_at = |t: F| -> Result<F> {
        let x = t.exp();
        Ok(log_deriv_k(BesselOrder::Real(F::zero()), x)? - lambda)
    };
    let mut lo = t_seed - F::lit(8.0);
    let mut hi = (t_seed + F::lit(8.0)).min(F::lit(600.0).ln());
    if !(residual_at(lo)? > F::zero() && residual_at(hi)? < F::zero()) {
        // fall back to a wide scan; the log-derivative is monotone
        lo = F::lit(-340.0);
        hi = F::lit(600.0).ln();
        if !(residual_at(lo)? > F::zero() && residual_at(hi)? < F::zero()) {
            return Ok(SolveOutcome::NoRoot {
                residual_at_origin: residual_at(lo)?,
                residual_at_infinity: residual_at(hi)?,
            });
        }
    }
    let t_star = bisect(residual_at, lo, hi, true)?;
    let x = t_star.exp();
    let e_star = -(x * x) * F::lit(0.5);
    Ok(SolveOutcome::Root(EnergyLevel {
        theory,
        l,
        method: Method::SaepRoot,
        e_scaled: e_star,
    }))
}

/// Parameters of the fitted self-adjoint extension: the boundary phase eta
/// and the reference spectral scale k0 (epsilon = 2 m k0 with m = 1 in
/// scaled units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParams<F> {
    pub eta: F,
    pub k0: F,
    pub epsilon: F,
}

fn deficiency_scale<F: Real>(k0: F) -> Result<F> {
    if !(k0 > F::zero()) || !k0.is_finite() {
        return Err(Error::domain("saep", "k0 must be positive and finite"));
    }
    Ok((F::lit(2.0) * k0).sqrt())
}

/// The two-term boundary element F(w) = P w^(-mu) - Q w^mu with
/// P = 2^mu / Gamma(1-mu), Q = 2^(-mu) / Gamma(1+mu): the small-argument
/// shape of K_mu up to overall normalization.
fn boundary_element<F: Real>(mu: F, w: Complex<F>) -> Result<Complex<F>> {
    let p = F::lit(2.0).powf(mu) / gamma(F::one() - mu)?;
    let q = F::lit(2.0).powf(-mu) / gamma(F::one() + mu)?;
    Ok(w.powf(-mu) * p - w.powf(mu) * q)
}

fn boundary_element_deriv<F: Real>(mu: F, w: Complex<F>) -> Result<Complex<F>> {
    let p = F::lit(2.0).powf(mu) / gamma(F::one() - mu)?;
    let q = F::lit(2.0).powf(-mu) / gamma(F::one() + mu)?;
    Ok(w.powf(-mu - F::one()) * (-mu * p) - w.powf(mu - F::one()) * (mu * q))
}

/// Boundary function of the extension labelled eta, evaluated at rho:
/// Omega_eta(rho) = F(rho s_minus) + e^(i eta) F(rho s_plus) with
/// s_{-,+} = sqrt(2 k0) e^(-+ i pi/4).
pub fn omega_eta<F: Real>(params: &ExtensionParams<F>, mu: F, rho: F) -> Result<Complex<F>> {
    if !(rho > F::zero()) {
        return Err(Error::domain("omega_eta", "rho must be positive"));
    }
    let s = deficiency_scale(params.k0)?;
    let half = F::FRAC_1_SQRT_2();
    let s_minus = Complex::new(s * half, -s * half);
    let s_plus = Complex::new(s * half, s * half);
    let phase = Complex::new(F::zero(), params.eta).exp();
    Ok(boundary_element(mu, s_minus * rho)? + phase * boundary_element(mu, s_plus * rho)?)
}

/// d Omega_eta / d rho.
pub fn omega_eta_deriv<F: Real>(
    params: &ExtensionParams<F>,
    mu: F,
    rho: F,
) -> Result<Complex<F>> {
    if !(rho > F::zero()) {
        return Err(Error::domain("omega_eta_deriv", "rho must be positive"));
    }
    let s = deficiency_scale(params.k0)?;
    let half = F::FRAC_1_SQRT_2();
    let s_minus = Complex::new(s * half, -s * half);
    let s_plus = Complex::new(s * half, s * half);
    let phase = Complex::new(F::zero(), params.eta).exp();
    Ok(s_minus * boundary_element_deriv(mu, s_minus * rho)?
        + phase * s_plus * boundary_element_deriv(mu, s_plus * rho)?)
}

/// rho Omega'/Omega at the reference radius; real (up to roundoff) once
/// eta has been fitted.
pub fn boundary_log_derivative<F: Real>(
    params: &ExtensionParams<F>,
    mu: F,
    geom: &ConeGeometry<F>,
) -> Result<Complex<F>> {
    let a = geom.radius();
    let omega = omega_eta(params, mu, a)?;
    let omega_d = omega_eta_deriv(params, mu, a)?;
    if omega.norm() == F::zero() {
        return Err(Error::Pole {
            what: "boundary_log_derivative",
            location: a.as_f64(),
        });
    }
    Ok(omega_d * Complex::new(a, F::zero()) / omega)
}

/// Fits the extension phase eta so that the boundary condition of the
/// extension reproduces the matching target lambda at the reference
/// radius. The scan-plus-bisection root is verified against the complex
/// boundary log-derivative before it is returned.
pub fn fit_eta<F: Real>(
    geom: &ConeGeometry<F>,
    theory: Theory,
    l: i32,
    k0: F,
) -> Result<ExtensionParams<F>> {
    let momentum = geom.momentum(theory, l);
    let mu = match momentum.order {
        OrderKind::RealOrder(mu) if mu < F::one() => mu,
        OrderKind::RealOrder(mu) => return Err(Error::OutOfWindow { mu_abs: mu.as_f64() }),
        _ => {
            return Err(Error::WrongBranch {
                what: "fit_eta",
                expected: "real-order (0 < mu < 1)",
                mu2: momentum.mu_squared.as_f64(),
            })
        }
    };
    let s = deficiency_scale(k0)?;
    let lambda = lambda_target(geom.alpha(), momentum.mu_squared);
    if (lambda - mu).abs() < F::epsilon() * F::lit(16.0) {
        return Err(Error::numeric(
            "fit_eta",
            "boundary condition degenerates at lambda = mu",
        ));
    }
    let g_target = (lambda + mu) / (lambda - mu);
    let u = geom.radius() * s;
    let r = (u * u / F::lit(4.0)).powf(mu) * gamma(F::one() - mu)? / gamma(F::one() + mu)?;
    let a_phase = mu * F::PI() * F::lit(0.25);

    // r cos(A + eta/2) - g cos(A - eta/2) has exactly one zero on (-pi, pi]
    let f = |eta: F| r * (a_phase + eta * F::lit(0.5)).cos()
        - g_target * (a_phase - eta * F::lit(0.5)).cos();
    let n = 720;
    let lo_edge = -F::PI();
    let step = F::lit(2.0) * F::PI() / F::lit(n as f64);
    let mut bracket_interval = None;
    let mut prev = f(lo_edge);
    for i in 1..=n {
        let eta = lo_edge + step * F::lit(i as f64);
        let cur = f(eta);
        if prev == F::zero() || (prev > F::zero()) != (cur > F::zero()) {
            bracket_interval = Some((lo_edge + step * F::lit((i - 1) as f64), eta));
            break;
        }
        prev = cur;
    }
    let (mut lo, mut hi) = bracket_interval.ok_or(Error::FitFailure {
        eta: f64::NAN,
        residual: f64::INFINITY,
    })?;
    let lo_positive = f(lo) > F::zero();
    for _ in 0..200 {
        let mid = F::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > F::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let eta = F::lit(0.5) * (lo + hi);

    let params = ExtensionParams {
        eta,
        k0,
        epsilon: F::lit(2.0) * k0,
    };
    let ld = boundary_log_derivative(&params, mu, geom)?;
    let tol = F::lit(1e-9).max(F::epsilon() * F::lit(1e4)) * lambda.abs().max(F::one());
    let residual = (ld.re - lambda).abs().max(ld.im.abs());
    if residual > tol {
        return Err(Error::FitFailure {
            eta: eta.as_f64(),
            residual: residual.as_f64(),
        });
    }
    Ok(params)
}

/// Result of the square-integrability check on the deficiency elements
/// K_mu(rho sqrt(2 k0) e^{+- i pi/4}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficiencyReport<F> {
    /// L2 norms (squared) of the plus and minus elements.
    pub norm_plus: F,
    pub norm_minus: F,
    /// Deficiency indices; (1, 1) whenever both norms are finite.
    pub indices: (u8, u8),
}

/// K_mu(w) for complex w with Re w > 0 and real mu >= 0, from the
/// integral representation. Quadrature-based; accurate to ~1e-10 relative,
/// which is all the diagnostic below needs.
fn k_complex<F: Real>(mu: F, w: Complex<F>) -> Result<Complex<F>> {
    let budget = -(F::min_positive_value().ln()) * F::lit(1.02);
    let ratio = (budget / w.re).max(F::lit(1.0001));
    let t_max = (ratio + (ratio * ratio - F::one()).sqrt()).ln();
    let re = integrate(
        |t: F| {
            let c = t.cosh();
            (-w.re * c).exp() * (w.im * c).cos() * (mu * t).cosh()
        },
        F::zero(),
        t_max,
        F::min_positive_value() * F::lit(1e6),
        F::lit(1e-11),
    )?;
    let im = integrate(
        |t: F| {
            let c = t.cosh();
            -(-w.re * c).exp() * (w.im * c).sin() * (mu * t).cosh()
        },
        F::zero(),
        t_max,
        F::min_positive_value() * F::lit(1e6),
        F::lit(1e-11),
    )?;
    Ok(Complex::new(re.value, im.value))
}

/// Checks square-integrability of the two deficiency elements near the
/// tip and reports their norms. The verdict comes from comparing the norm
/// accumulated over successive decades rho in [1e-3, 1e-2] and
/// [1e-4, 1e-3]: for an integrable singularity the increments shrink; if
/// they do not, the element is not square-integrable and the check fails
/// (which happens exactly for mu >= 1).
pub fn deficiency_subspaces_check<F: Real>(mu: F, k0: F) -> Result<DeficiencyReport<F>> {
    if !(mu >= F::zero()) || !mu.is_finite() {
        return Err(Error::domain(
            "deficiency_subspaces_check",
            "order must be non-negative real",
        ));
    }
    let s = deficiency_scale(k0)?;

    let norm_half = |sign_plus: bool| -> Result<(F, F, F)> {
        let half = F::FRAC_1_SQRT_2();
        let phase = if sign_plus {
            Complex::new(half, half)
        } else {
            Complex::new(half, -half)
        };
        // integrate rho |K(rho s phase)|^2 d rho in v = ln rho
        let g = |v: F| -> Result<F> {
            let rho = v.exp();
            let k = k_complex(mu, phase * (s * rho))?;
            Ok(rho * rho * k.norm_sqr())
        };
        let seg = |a: F, b: F| -> Result<F> {
            let mut failed = None;
            let q = integrate(
                |v: F| match g(v) {
                    Ok(y) => y,
                    Err(e) => {
                        failed = Some(e);
                        F::zero()
                    }
                },
                a,
                b,
                F::lit(1e-12),
                F::lit(1e-9),
            )?;
            if let Some(e) = failed {
                return Err(e);
            }
            Ok(q.value)
        };

        let d_outer = seg(F::lit(-3.0) * F::LN_10(), F::lit(-2.0) * F::LN_10())?;
        let d_inner = seg(F::lit(-4.0) * F::LN_10(), F::lit(-3.0) * F::LN_10())?;

        let v_top = (F::lit(370.0) / s).ln();
        let core = seg(F::lit(-2.0) * F::LN_10(), v_top)?;

        // remaining mass below rho = 1e-4, in chunks so nothing is skipped
        let mut tail = F::zero();
        if d_inner < d_outer {
            let decay = (d_outer / d_inner).ln() / F::LN_10(); // per-decade shrink exponent
            let decades_needed = (F::lit(16.0) / decay.max(F::lit(0.05))).min(F::lit(120.0));
            let mut hi = F::lit(-4.0) * F::LN_10();
            let lo_final = hi - decades_needed * F::LN_10();
            while hi > lo_final {
                let lo = (hi - F::lit(15.0) * F::LN_10()).max(lo_final);
                tail = tail + seg(lo, hi)?;
                hi = lo;
            }
        }
        Ok((core + d_outer + d_inner + tail, d_outer, d_inner))
    };

    let (n_plus, d1p, d2p) = norm_half(true)?;
    let (n_minus, d1m, d2m) = norm_half(false)?;

    if d2p >= d1p || d2m >= d1m {
        return Err(Error::IntegrabilityViolation { mu_abs: mu.as_f64() });
    }
    Ok(DeficiencyReport {
        norm_plus: n_plus,
        norm_minus: n_minus,
        indices: (1, 1),
    })
}
