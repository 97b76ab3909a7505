//! Bound states of a quantum particle on a cone.
//!
//! A cone of opening parameter alpha (flat plane at alpha = 1) carries
//! curvature concentrated at its tip. Depending on how the surface
//! dynamics is derived, the tip acts on the wave function through a delta
//! well plus an induced attractive potential (constrained-surface
//! dynamics) or through the delta well alone (the nonrelativistic limit
//! of a scalar wave equation on the cone). Either way the channel
//! problem reduces to Bessel analysis with an effective order mu that
//! may be real, zero, or imaginary.
//!
//! The crate computes, per angular channel:
//!
//! * the effective order and its classification ([`geometry`]),
//! * closed-form bound-state energies and the alpha windows where each
//!   channel supports one ([`spectra`]),
//! * the same energies from the self-adjoint-extension boundary
//!   matching, solved numerically, with the deficiency analysis and the
//!   fitted extension phase ([`saep`]),
//! * an independent cross-check that smooths the tip into a finite cap
//!   and solves the resulting well ([`oracle`]).
//!
//! Everything is generic over the scalar type through the [`Real`]
//! trait; `f64` is the intended precision and `f32` is supported for
//! quick scans. Energies are reported in scaled units e = E m a^2 / hbar^2
//! with a the reference radius.
//!
//! The special functions involved (modified Bessel of real and imaginary
//! order, Bessel J at real order, the gamma function, adaptive
//! Gauss-Kronrod quadrature) are implemented in [`specfun`] and validated
//! against high-precision references in the test suite.

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod real;
pub mod saep;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};
pub use geometry::{
    mu_squared, tip_strength, ConeGeometry, EffectiveMomentum, OrderKind, RegulatorModel,
    RegulatorProfile, Theory,
};
pub use oracle::{
    convergence_study, eigen_solve, regularized_problem, to_csv, ConvergenceRow,
    RegularizedEigenproblem,
};
pub use real::Real;
pub use saep::{
    deficiency_subspaces_check, fit_eta, matching_residual, solve_energy, DeficiencyReport,
    ExtensionParams, SolveOutcome,
};
pub use spectra::{
    classify, closed_form_energy, l_window, AlphaWindow, BoundStateReport, ClosedFormStatus,
    EnergyLevel, LevelClassification, Method,
};

pub type ConeGeometry64 = ConeGeometry<f64>;
pub type ConeGeometry32 = ConeGeometry<f32>;
pub type EnergyLevel64 = EnergyLevel<f64>;
pub type EnergyLevel32 = EnergyLevel<f32>;
pub type BoundStateReport64 = BoundStateReport<f64>;
pub type BoundStateReport32 = BoundStateReport<f32>;
pub type ExtensionParams64 = ExtensionParams<f64>;
pub type ExtensionParams32 = ExtensionParams<f32>;
