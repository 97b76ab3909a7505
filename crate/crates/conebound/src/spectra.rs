//! Closed-form bound-state energies and the per-channel classification.
//!
//! Energies are reported in scaled units e = E m a^2 / hbar^2, always
//! negative for a bound state. Three closed forms cover the three order
//! kinds of the radial problem:
//!
//! * imaginary order (mu^2 < 0, the fall-to-center channel),
//! * real order 0 < mu < 1 (matching window),
//! * mu = 0 (logarithmic matching, Klein-Gordon l = 0).
//!
//! The real-order and mu = 0 formulas come from the small-argument matching
//! of K at the reference radius; the imaginary-order formula picks the
//! ground state of the infinite fall-to-center tower.

use crate::error::{Error, Result};
use crate::geometry::{mu_squared, tip_strength, EffectiveMomentum, OrderKind, Theory};
use crate::real::Real;
use crate::specfun::gamma;

/// How an energy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    SaepRoot,
    Oracle,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::SaepRoot => "saep",
            Method::Oracle => "oracle",
        }
    }
}

/// A single bound-state energy in scaled units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel<F> {
    pub theory: Theory,
    pub l: i32,
    pub method: Method,
    pub e_scaled: F,
}

impl<F: Real> EnergyLevel<F> {
    /// Dimensional energy E = e hbar^2 / (m a^2).
    pub fn physical_energy(&self, hbar: F, mass: F, radius: F) -> F {
        self.e_scaled * hbar * hbar / (mass * radius * radius)
    }
}

fn guard_exponent<F: Real>(what: &'static str, ln_abs_e: F) -> Result<F> {
    let cap = F::max_value().ln() * F::lit(0.985);
    if ln_abs_e > cap {
        return Err(Error::numeric(what, "scaled energy overflows the float range"));
    }
    if ln_abs_e < -cap {
        return Err(Error::numeric(
            what,
            "scaled energy underflows to zero (alpha too close to 1)",
        ));
    }
    Ok(-(ln_abs_e.exp()))
}

/// Ground-state energy of the imaginary-order (fall-to-center) channel:
///
///   e = -2 exp[ (2/nu) arccot( lambda0/nu - nu/2 ) - 2 gamma_e ]
///
/// with nu = sqrt(-mu^2), lambda0 = (1 - alpha)/alpha, and arccot taking
/// values in (0, pi). Requires |mu^2| < 1 for the boundary analysis behind
/// it to hold.
pub fn energy_imaginary_order<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<EnergyLevel<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    let nu = match momentum.order {
        OrderKind::ImaginaryOrder(nu) => nu,
        _ => {
            return Err(Error::WrongBranch {
                what: "energy_imaginary_order",
                expected: "imaginary-order (mu^2 < 0)",
                mu2: momentum.mu_squared.as_f64(),
            })
        }
    };
    if nu >= F::one() {
        return Err(Error::OutOfWindow { mu_abs: nu.as_f64() });
    }
    let lambda0 = tip_strength(alpha);
    let arg = lambda0 / nu - nu * F::lit(0.5);
    let arccot = F::PI() * F::lit(0.5) - arg.atan(); // in (0, pi)
    let ln_abs_e = F::lit(2.0).ln() + F::lit(2.0) / nu * arccot - F::lit(2.0) * F::euler_gamma();
    let e = guard_exponent("energy_imaginary_order", ln_abs_e)?;
    Ok(EnergyLevel {
        theory,
        l,
        method: Method::ClosedForm,
        e_scaled: e,
    })
}

/// The bracket whose sign decides whether the real-order matching has a
/// root:
///
///   B = [Gamma(1+mu)/Gamma(1-mu)] * (lambda - mu)/(lambda + mu),
///       lambda = lambda0 + mu^2/2.
///
/// B > 0 exactly when |lambda| > mu.
pub fn bracket<F: Real>(mu: F, lambda0: F) -> Result<F> {
    if !(mu > F::zero() && mu < F::one()) {
        return Err(Error::OutOfWindow { mu_abs: mu.as_f64() });
    }
    let lambda = lambda0 + mu * mu * F::lit(0.5);
    let r = gamma(F::one() + mu)? / gamma(F::one() - mu)?;
    Ok(r * (lambda - mu) / (lambda + mu))
}

/// Real-order closed-form energy, e = -2 B^(1/mu), valid for 0 < mu < 1
/// and B > 0.
pub fn energy_real_order<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<EnergyLevel<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    let mu = match momentum.order {
        OrderKind::RealOrder(mu) => mu,
        _ => {
            return Err(Error::WrongBranch {
                what: "energy_real_order",
                expected: "real-order (mu^2 > 0)",
                mu2: momentum.mu_squared.as_f64(),
            })
        }
    };
    if mu >= F::one() {
        return Err(Error::OutOfWindow { mu_abs: mu.as_f64() });
    }
    let b = bracket(mu, tip_strength(alpha))?;
    if b <= F::zero() {
        return Err(Error::NoRealClosedForm { bracket: b.as_f64() });
    }
    let ln_abs_e = F::lit(2.0).ln() + b.ln() / mu;
    let e = guard_exponent("energy_real_order", ln_abs_e)?;
    Ok(EnergyLevel {
        theory,
        l,
        method: Method::ClosedForm,
        e_scaled: e,
    })
}

/// mu = 0 closed-form energy from the logarithmic matching,
/// e = -2 exp(2/lambda0 - 2 gamma_e), for the Klein-Gordon l = 0 channel.
/// Only alpha > 1 binds (lambda0 < 0).
pub fn energy_mu_zero<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<EnergyLevel<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    if theory != Theory::KleinGordon || l != 0 {
        return Err(Error::WrongBranch {
            what: "energy_mu_zero",
            expected: "Klein-Gordon l = 0 (mu = 0)",
            mu2: momentum.mu_squared.as_f64(),
        });
    }
    let lambda0 = tip_strength(alpha);
    if lambda0 >= F::zero() {
        return Err(Error::NoBoundState {
            detail: format!("alpha = {} <= 1 gives a repulsive or absent tip term", alpha),
        });
    }
    let ln_abs_e =
        F::lit(2.0).ln() + F::lit(2.0) / lambda0 - F::lit(2.0) * F::euler_gamma();
    let e = guard_exponent("energy_mu_zero", ln_abs_e)?;
    Ok(EnergyLevel {
        theory,
        l,
        method: Method::ClosedForm,
        e_scaled: e,
    })
}

/// Dispatches to the closed form matching the order kind of (theory,
/// alpha, l).
pub fn closed_form_energy<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<EnergyLevel<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    match momentum.order {
        OrderKind::ImaginaryOrder(_) => energy_imaginary_order(theory, alpha, l),
        OrderKind::RealOrder(_) => energy_real_order(theory, alpha, l),
        OrderKind::ZeroOrder => {
            if theory == Theory::KleinGordon && l == 0 {
                energy_mu_zero(theory, alpha, l)
            } else {
                // da Costa mu = 0 sits exactly on a window edge; the real-order
                // formula degenerates there and no separate branch is defined
                Err(Error::OutOfWindow { mu_abs: 0.0 })
            }
        }
    }
}

/// alpha interval on which channel l is listed as bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaWindow<F> {
    /// Exclusive lower edge.
    pub lower: F,
    /// Upper edge; `F::infinity()` when unbounded above.
    pub upper: F,
    pub upper_inclusive: bool,
}

impl<F: Real> AlphaWindow<F> {
    pub fn contains(&self, alpha: F) -> bool {
        if alpha <= self.lower {
            return false;
        }
        if alpha < self.upper {
            return true;
        }
        self.upper_inclusive && alpha == self.upper
    }
}

/// Binding window for channel l, where one exists:
///
/// * da Costa, l = 0: bound for every alpha != 1 (no window; returns None),
/// * da Costa, l != 0: ( sqrt((4 l^2 + 1)/5), sqrt(4 l^2 + 1) ], with the
///   upper edge excluded for |l| = 3,
/// * Klein-Gordon: ( max(1, |l|), infinity ).
pub fn l_window<F: Real>(theory: Theory, l: i32) -> Option<AlphaWindow<F>> {
    match theory {
        Theory::DaCosta => {
            if l == 0 {
                return None;
            }
            let fl2 = F::lit((l as f64) * (l as f64));
            let top2 = F::lit(4.0) * fl2 + F::one();
            Some(AlphaWindow {
                lower: (top2 / F::lit(5.0)).sqrt(),
                upper: top2.sqrt(),
                upper_inclusive: l.abs() != 3,
            })
        }
        Theory::KleinGordon => Some(AlphaWindow {
            lower: F::lit((l.abs().max(1)) as f64),
            upper: F::infinity(),
            upper_inclusive: false,
        }),
    }
}

/// What the closed-form evaluator would do for a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormStatus {
    /// Imaginary-order formula applies.
    ImaginaryOrder,
    /// Real-order formula applies (0 < mu < 1 and B > 0).
    RealOrder,
    /// Logarithmic mu = 0 matching applies.
    LogMatching,
    /// 0 < mu < 1 but the bracket is non-positive: no real closed form.
    NegativeBracket,
    /// The order parameter left the validity window of every formula.
    OutOfWindow,
    /// No attractive tip term at all (flat plane, or repulsive side).
    NotApplicable,
}

impl ClosedFormStatus {
    pub fn label(self) -> &'static str {
        match self {
            ClosedFormStatus::ImaginaryOrder => "imaginary_order",
            ClosedFormStatus::RealOrder => "real_order",
            ClosedFormStatus::LogMatching => "log_matching",
            ClosedFormStatus::NegativeBracket => "negative_bracket",
            ClosedFormStatus::OutOfWindow => "out_of_window",
            ClosedFormStatus::NotApplicable => "not_applicable",
        }
    }
}

/// Per-channel classification entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelClassification<F> {
    pub l: i32,
    pub momentum: EffectiveMomentum<F>,
    /// Whether the channel is listed as bound by the window tables.
    pub allowed: bool,
    pub window: Option<AlphaWindow<F>>,
    pub closed_form: ClosedFormStatus,
    /// Whether the boundary-matching condition has a root; None where the
    /// matching analysis does not apply (imaginary order, mu >= 1).
    pub saep_root_exists: Option<bool>,
}

/// Full classification of a cone under one theory.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundStateReport<F> {
    pub theory: Theory,
    pub alpha: F,
    pub allowed_l: Vec<i32>,
    pub levels: Vec<LevelClassification<F>>,
}

fn channel_allowed<F: Real>(theory: Theory, alpha: F, l: i32) -> bool {
    match theory {
        Theory::DaCosta => {
            if l == 0 {
                alpha != F::one()
            } else {
                l_window::<F>(theory, l)
                    .map(|w| w.contains(alpha))
                    .unwrap_or(false)
            }
        }
        Theory::KleinGordon => alpha > F::one() && F::lit(l.abs() as f64) < alpha,
    }
}

fn classify_channel<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<LevelClassification<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    let lambda0 = tip_strength(alpha);
    let (closed_form, saep_root_exists) = match momentum.order {
        OrderKind::ImaginaryOrder(nu) => {
            if nu < F::one() {
                (ClosedFormStatus::ImaginaryOrder, None)
            } else {
                (ClosedFormStatus::OutOfWindow, None)
            }
        }
        OrderKind::ZeroOrder => {
            if theory == Theory::KleinGordon && l == 0 {
                if alpha > F::one() {
                    (ClosedFormStatus::LogMatching, Some(true))
                } else {
                    (ClosedFormStatus::NotApplicable, Some(false))
                }
            } else if alpha == F::one() {
                (ClosedFormStatus::NotApplicable, Some(false))
            } else {
                (ClosedFormStatus::OutOfWindow, None)
            }
        }
        OrderKind::RealOrder(mu) => {
            if mu >= F::one() {
                (ClosedFormStatus::OutOfWindow, None)
            } else {
                let b = bracket(mu, lambda0)?;
                if b > F::zero() {
                    (ClosedFormStatus::RealOrder, Some(true))
                } else {
                    (ClosedFormStatus::NegativeBracket, Some(false))
                }
            }
        }
    };
    Ok(LevelClassification {
        l,
        momentum,
        allowed: channel_allowed(theory, alpha, l),
        window: l_window(theory, l),
        closed_form,
        saep_root_exists,
    })
}

/// Classifies every angular channel of a cone under one theory: which l
/// are listed as bound by the window tables, side by side with what the
/// matching condition itself supports.
pub fn classify<F: Real>(theory: Theory, alpha: F) -> Result<BoundStateReport<F>> {
    if !(alpha > F::zero()) || !alpha.is_finite() {
        return Err(Error::domain("classify", "alpha must be positive and finite"));
    }

    // largest |l| that can be allowed: da Costa needs l^2 < (5 alpha^2 - 1)/4,
    // Klein-Gordon needs |l| < alpha
    let alpha64 = alpha.as_f64();
    let l_cap = match theory {
        Theory::DaCosta => (((5.0 * alpha64 * alpha64 - 1.0) / 4.0).max(0.0)).sqrt().ceil() as i32,
        Theory::KleinGordon => alpha64.ceil() as i32,
    };
    let span = l_cap.max(3) + 1;

    let mut allowed_l = Vec::new();
    let mut levels = Vec::new();
    for l in -span..=span {
        let entry = classify_channel(theory, alpha, l)?;
        if entry.allowed {
            allowed_l.push(l);
        }
        levels.push(entry);
    }
    Ok(BoundStateReport {
        theory,
        alpha,
        allowed_l,
        levels,
    })
}
