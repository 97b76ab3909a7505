//! Cone surface: metric, curvatures, effective potentials, and the
//! regularized-tip model.
//!
//! The surface is parametrized by the geodesic distance rho from the apex
//! and the azimuthal angle theta, with line element
//!
//!   ds^2 = d rho^2 + alpha^2 rho^2 d theta^2.
//!
//! alpha < 1 is a deficit (an ordinary paper cone), alpha > 1 an excess
//! (a saddle-like cone), alpha = 1 the flat plane. All curvature of the
//! ideal cone is concentrated at the apex.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::quad::integrate;

/// Which dynamics generates the effective radial problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Thin-layer confinement of the Schroedinger equation to the surface,
    /// which induces an attractive curvature potential.
    DaCosta,
    /// Nonrelativistic limit of the Klein-Gordon equation on the surface;
    /// no induced potential survives away from the tip.
    KleinGordon,
}

impl Theory {
    pub fn label(self) -> &'static str {
        match self {
            Theory::DaCosta => "da_costa",
            Theory::KleinGordon => "klein_gordon",
        }
    }
}

/// Strength of the tip delta in the Gaussian curvature,
/// K = 2 pi (1 - alpha) delta2(tip): returns (1 - alpha)/alpha, the
/// coefficient that enters the radial matching condition.
pub fn tip_strength<F: Real>(alpha: F) -> F {
    (F::one() - alpha) / alpha
}

/// Sign and magnitude of mu^2 classified into the three matching branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderKind<F> {
    /// mu^2 > 0; carries mu = sqrt(mu^2).
    RealOrder(F),
    /// mu^2 < 0; carries nu = sqrt(-mu^2), the order being i*nu.
    ImaginaryOrder(F),
    ZeroOrder,
}

impl<F: Real> OrderKind<F> {
    pub fn label(&self) -> &'static str {
        match self {
            OrderKind::RealOrder(_) => "real",
            OrderKind::ImaginaryOrder(_) => "imaginary",
            OrderKind::ZeroOrder => "zero",
        }
    }
}

/// Effective radial index for angular channel l: the order of the Bessel
/// functions the radial equation reduces to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveMomentum<F> {
    pub theory: Theory,
    pub l: i32,
    pub mu_squared: F,
    pub order: OrderKind<F>,
}

/// mu^2 for channel l:
///
///   da Costa:     mu^2 = l^2/alpha^2 - |1 - alpha^2| / (4 alpha^2)
///   Klein-Gordon: mu^2 = l^2/alpha^2
///
/// The da Costa curvature term always subtracts; for l = 0 and alpha != 1
/// the order is always imaginary (fall-to-center channel).
pub fn mu_squared<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<EffectiveMomentum<F>> {
    if !(alpha > F::zero()) || !alpha.is_finite() {
        return Err(Error::domain("mu_squared", "alpha must be positive and finite"));
    }
    let fl = F::lit(l as f64);
    let a2 = alpha * alpha;
    let angular = fl * fl / a2;
    let mu2 = match theory {
        Theory::DaCosta => angular - (F::one() - a2).abs() / (F::lit(4.0) * a2),
        Theory::KleinGordon => angular,
    };
    let order = if mu2 > F::zero() {
        OrderKind::RealOrder(mu2.sqrt())
    } else if mu2 < F::zero() {
        OrderKind::ImaginaryOrder((-mu2).sqrt())
    } else {
        OrderKind::ZeroOrder
    };
    Ok(EffectiveMomentum {
        theory,
        l,
        mu_squared: mu2,
        order,
    })
}

/// A cone of opening parameter alpha with a reference radius a (the
/// boundary where matching conditions are imposed; also the regulator
/// disk radius). Lengths are measured in units of a unless stated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGeometry<F> {
    alpha: F,
    a: F,
}

impl<F: Real> ConeGeometry<F> {
    pub fn new(alpha: F, a: F) -> Result<Self> {
        if !(alpha > F::zero()) || !alpha.is_finite() {
            return Err(Error::domain("ConeGeometry", "alpha must be positive and finite"));
        }
        if !(a > F::zero()) || !a.is_finite() {
            return Err(Error::domain("ConeGeometry", "radius must be positive and finite"));
        }
        Ok(ConeGeometry { alpha, a })
    }

    /// Cone with unit reference radius.
    pub fn unit(alpha: F) -> Result<Self> {
        Self::new(alpha, F::one())
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn radius(&self) -> F {
        self.a
    }

    /// Mean curvature of the embedded cone at distance rho from the tip,
    /// H = sqrt(|1 - alpha^2|) / (2 alpha rho). Vanishes identically for
    /// the plane alpha = 1.
    pub fn mean_curvature(&self, rho: F) -> Result<F> {
        if !(rho > F::zero()) {
            return Err(Error::domain("mean_curvature", "rho must be positive"));
        }
        let a2 = self.alpha * self.alpha;
        Ok((F::one() - a2).abs().sqrt() / (F::lit(2.0) * self.alpha * rho))
    }

    /// Coefficient of the tip delta in the Gaussian curvature.
    pub fn delta_strength(&self) -> F {
        tip_strength(self.alpha)
    }

    /// Induced potential away from the tip, in units of hbar^2/m:
    /// the da Costa surface potential -(1/2)(H^2 - K) equals
    /// -|1 - alpha^2| / (8 alpha^2 rho^2) and is always attractive; the
    /// Klein-Gordon reduction leaves no potential for rho > 0.
    pub fn geometric_potential(&self, theory: Theory, rho: F) -> Result<F> {
        if !(rho > F::zero()) {
            return Err(Error::domain("geometric_potential", "rho must be positive"));
        }
        match theory {
            Theory::DaCosta => {
                let a2 = self.alpha * self.alpha;
                Ok(-(F::one() - a2).abs() / (F::lit(8.0) * a2 * rho * rho))
            }
            Theory::KleinGordon => Ok(F::zero()),
        }
    }

    /// Effective radial order for channel l.
    pub fn momentum(&self, theory: Theory, l: i32) -> EffectiveMomentum<F> {
        mu_squared(theory, self.alpha, l).expect("geometry invariant: alpha > 0")
    }

    /// Regularized-tip model on this cone.
    pub fn regulator(&self, profile: RegulatorProfile) -> RegulatorModel<F> {
        let u0 = match profile {
            RegulatorProfile::UniformDisk => {
                F::lit(2.0) * (F::one() - self.alpha) / (self.alpha * self.a * self.a)
            }
        };
        RegulatorModel {
            profile,
            alpha: self.alpha,
            radius: self.a,
            curvature: u0,
        }
    }
}

/// How the tip curvature is smeared over a finite cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegulatorProfile {
    /// Constant Gaussian curvature on a disk of radius a.
    UniformDisk,
}

impl RegulatorProfile {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "uniform-disk" | "uniform_disk" | "uniform" => Ok(RegulatorProfile::UniformDisk),
            other => Err(Error::Config {
                what: "regulator profile",
                name: other.to_string(),
            }),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RegulatorProfile::UniformDisk => "uniform_disk",
        }
    }
}

/// Cone with its tip curvature spread over rho < radius. `curvature` is
/// the constant value U0 = 2 (1 - alpha) / (alpha a^2); it is negative for
/// alpha > 1, which is what produces an attractive regularized well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegulatorModel<F> {
    pub profile: RegulatorProfile,
    pub alpha: F,
    pub radius: F,
    pub curvature: F,
}

impl<F: Real> RegulatorModel<F> {
    /// Gaussian curvature at distance rho from the tip.
    pub fn curvature_at(&self, rho: F) -> F {
        if rho <= self.radius {
            self.curvature
        } else {
            F::zero()
        }
    }

    /// Analytic radial moment: integral of U(rho) rho d rho over the cap,
    /// equal to (1 - alpha)/alpha for every admissible profile.
    pub fn radial_moment(&self) -> F {
        match self.profile {
            RegulatorProfile::UniformDisk => {
                self.curvature * self.radius * self.radius * F::lit(0.5)
            }
        }
    }

    /// Total integrated curvature, closed form: 2 pi (1 - alpha).
    pub fn total_curvature_analytic(&self) -> F {
        F::lit(2.0) * F::PI() * (F::one() - self.alpha)
    }

    /// Total integrated curvature by numerical quadrature of
    /// integral over the surface of U dA with dA = alpha rho d rho d theta.
    pub fn total_curvature_quadrature(&self) -> Result<F> {
        let two_pi_alpha = F::lit(2.0) * F::PI() * self.alpha;
        let q = integrate(
            |rho: F| self.curvature_at(rho) * rho,
            F::zero(),
            self.radius,
            F::lit(1e-13),
            F::lit(1e-13),
        )?;
        Ok(two_pi_alpha * q.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_curvature_values() {
        let g = ConeGeometry::unit(0.5f64).unwrap();
        // sqrt(0.75) / (2 * 0.5 * 1)
        assert!((g.mean_curvature(1.0).unwrap() - 0.75f64.sqrt()).abs() < 1e-15);
        let flat = ConeGeometry::unit(1.0f64).unwrap();
        assert_eq!(flat.mean_curvature(2.0).unwrap(), 0.0);
        assert!(g.mean_curvature(0.0).is_err());
    }

    #[test]
    fn potential_is_attractive_and_scales_with_rho() {
        let g = ConeGeometry::unit(0.5f64).unwrap();
        let v = g.geometric_potential(Theory::DaCosta, 1.0).unwrap();
        assert!((v + 0.375).abs() < 1e-15);
        let v2 = g.geometric_potential(Theory::DaCosta, 2.0).unwrap();
        assert!((v2 - v / 4.0).abs() < 1e-15);
        assert_eq!(g.geometric_potential(Theory::KleinGordon, 1.0).unwrap(), 0.0);
        // attractive on both sides of alpha = 1
        let gex = ConeGeometry::unit(2.0f64).unwrap();
        assert!(gex.geometric_potential(Theory::DaCosta, 0.7).unwrap() < 0.0);
    }

    #[test]
    fn mu_squared_da_costa_examples() {
        let m = mu_squared(Theory::DaCosta, 2.0f64, 1).unwrap();
        assert!((m.mu_squared - 1.0 / 16.0).abs() < 1e-15);
        assert!(matches!(m.order, OrderKind::RealOrder(mu) if (mu - 0.25).abs() < 1e-15));

        let m = mu_squared(Theory::DaCosta, 0.5f64, 0).unwrap();
        assert!((m.mu_squared + 0.75).abs() < 1e-15);
        assert!(matches!(m.order, OrderKind::ImaginaryOrder(nu) if (nu - 0.75f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn mu_squared_klein_gordon_examples() {
        let m = mu_squared(Theory::KleinGordon, 2.0f64, 1).unwrap();
        assert!((m.mu_squared - 0.25).abs() < 1e-15);
        let m = mu_squared(Theory::KleinGordon, 1.5f64, 0).unwrap();
        assert_eq!(m.mu_squared, 0.0);
        assert!(matches!(m.order, OrderKind::ZeroOrder));
    }

    #[test]
    fn l_zero_da_costa_is_always_imaginary_off_the_plane() {
        for &alpha in &[0.3, 0.9, 1.1, 2.0, 7.0] {
            let m = mu_squared(Theory::DaCosta, alpha, 0).unwrap();
            assert!(m.mu_squared < 0.0, "alpha = {alpha}");
        }
        let m = mu_squared(Theory::DaCosta, 1.0f64, 0).unwrap();
        assert!(matches!(m.order, OrderKind::ZeroOrder));
    }

    #[test]
    fn regulator_strength_and_moment() {
        let g = ConeGeometry::new(2.0f64, 1.0).unwrap();
        let r = g.regulator(RegulatorProfile::UniformDisk);
        assert!((r.curvature + 1.0).abs() < 1e-15); // 2(1-2)/(2*1)
        assert!((r.radial_moment() - g.delta_strength()).abs() < 1e-15);
        // radius cancels from the moment
        let g2 = ConeGeometry::new(2.0f64, 3.7).unwrap();
        let r2 = g2.regulator(RegulatorProfile::UniformDisk);
        assert!((r2.radial_moment() - r.radial_moment()).abs() < 1e-15);
    }

    #[test]
    fn total_curvature_both_paths() {
        for &alpha in &[0.25f64, 0.5, 0.8, 1.0, 1.5, 2.0, 5.0] {
            let g = ConeGeometry::new(alpha, 1.3).unwrap();
            let r = g.regulator(RegulatorProfile::UniformDisk);
            let expected = 2.0 * std::f64::consts::PI * (1.0 - alpha);
            assert!((r.total_curvature_analytic() - expected).abs() < 1e-12);
            let quad = r.total_curvature_quadrature().unwrap();
            assert!(
                (quad - expected).abs() < 1e-10,
                "quadrature path off at alpha = {alpha}: {quad} vs {expected}"
            );
        }
    }

    #[test]
    fn profile_names() {
        assert_eq!(
            RegulatorProfile::from_name("uniform-disk").unwrap(),
            RegulatorProfile::UniformDisk
        );
        assert!(matches!(
            RegulatorProfile::from_name("gaussian-cap"),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(ConeGeometry::new(0.0f64, 1.0).is_err());
        assert!(ConeGeometry::new(-1.0f64, 1.0).is_err());
        assert!(ConeGeometry::new(1.0f64, 0.0).is_err());
        assert!(mu_squared(Theory::DaCosta, 0.0f64, 1).is_err());
    }
}
