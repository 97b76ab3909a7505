//! Independent cross-check: the tip singularity is smoothed into a
//! uniform-curvature cap of the reference radius, which turns the channel
//! problem into a finite cylindrical well solved by elementary matching of
//! J_mu inside against K_mu outside. No small-argument expansion enters,
//! so agreement with the closed forms as the cap shrinks is meaningful
//! evidence rather than circular.

use crate::error::{Error, Result};
use crate::geometry::{mu_squared, ConeGeometry, OrderKind, RegulatorProfile, Theory};
use crate::real::Real;
use crate::saep::{solve_energy, SolveOutcome};
use crate::spectra::{closed_form_energy, EnergyLevel, Method};
use crate::specfun::{bessel_j, log_deriv_k, BesselOrder};

/// Channel eigenproblem on the regularized cone: a constant well of
/// dimensionless strength `well_depth` inside the cap, the free conical
/// channel outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedEigenproblem<F> {
    pub theory: Theory,
    pub l: i32,
    pub mu: F,
    /// c = 2 (alpha - 1)/alpha, the integrated strength of the smoothed
    /// tip curvature; non-positive means the cap repels.
    pub well_depth: F,
    pub alpha: F,
}

/// Builds the regularized channel problem. Imaginary-order channels have
/// no real matching index and are rejected; mu >= 1 is allowed here since
/// the smoothed problem stays regular where the point limit does not.
pub fn regularized_problem<F: Real>(
    theory: Theory,
    alpha: F,
    l: i32,
) -> Result<RegularizedEigenproblem<F>> {
    let momentum = mu_squared(theory, alpha, l)?;
    let mu = match momentum.order {
        OrderKind::RealOrder(mu) => mu,
        OrderKind::ZeroOrder => F::zero(),
        OrderKind::ImaginaryOrder(_) => {
            return Err(Error::WrongBranch {
                what: "regularized_problem",
                expected: "real or zero order",
                mu2: momentum.mu_squared.as_f64(),
            })
        }
    };
    let well_depth = F::lit(2.0) * (alpha - F::one()) / alpha;
    Ok(RegularizedEigenproblem {
        theory,
        l,
        mu,
        well_depth,
        alpha,
    })
}

impl<F: Real> RegularizedEigenproblem<F> {
    /// x J'_mu(x q a)/J_mu-style interior log-derivative at the cap edge,
    /// as a function of the decay variable x = kappa a. Inside the well
    /// the radial solution is J_mu(q rho) with (q a)^2 = c - x^2; past the
    /// well bottom (x^2 > c) it continues as I_mu.
    pub fn interior_log_deriv(&self, x: F) -> Result<F> {
        if !(x >= F::zero()) || !x.is_finite() {
            return Err(Error::domain("interior_log_deriv", "x must be non-negative"));
        }
        let s = self.well_depth - x * x;
        if s > F::zero() {
            let qa = s.sqrt();
            let j = bessel_j(self.mu, qa)?;
            if j.j == F::zero() {
                return Err(Error::Pole {
                    what: "interior_log_deriv",
                    location: qa.as_f64(),
                });
            }
            Ok(qa * j.j_prime / j.j)
        } else if s < F::zero() {
            let wa = (-s).sqrt();
            let ik = crate::specfun::bessel_ik(self.mu, wa)?;
            Ok(wa * ik.i_prime / ik.i)
        } else {
            Ok(self.mu)
        }
    }

    /// True when the well is strong enough to bind: the interior
    /// log-derivative at zero energy lies below the exterior limit -mu.
    pub fn binds(&self) -> Result<bool> {
        if self.well_depth <= F::zero() {
            return Ok(false);
        }
        let edge = self.well_depth.sqrt();
        let j = bessel_j(self.mu, edge)?;
        if j.j == F::zero() {
            return Err(Error::Pole {
                what: "binds",
                location: edge.as_f64(),
            });
        }
        Ok(edge * j.j_prime / j.j < -self.mu)
    }
}

/// Exterior log-derivative x K'_mu(x)/K_mu(x) of the decaying channel
/// solution outside the cap.
pub fn exterior_log_deriv<F: Real>(x: F, mu: F) -> Result<F> {
    log_deriv_k(BesselOrder::Real(mu), x)
}

/// Solves the regularized channel problem. Returns every matching root as
/// a scaled energy level, deepest first; an empty vector means the channel
/// does not bind. A repulsive cap (well_depth <= 0) never binds.
pub fn eigen_solve<F: Real>(prob: &RegularizedEigenproblem<F>) -> Result<Vec<EnergyLevel<F>>> {
    if prob.well_depth <= F::zero() {
        return Ok(Vec::new());
    }
    let x_max = prob.well_depth.sqrt();
    let pad = F::lit(1e-9);
    let lo = pad;
    let hi = x_max - pad;
    if !(hi > lo) {
        return Ok(Vec::new());
    }
    let f = |x: F| -> Result<F> {
        Ok(prob.interior_log_deriv(x)? - exterior_log_deriv(x, prob.mu)?)
    };
    let n = 2048usize;
    let step = (hi - lo) / F::lit(n as f64);
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo)?;
    for i in 1..=n {
        let x = lo + step * F::lit(i as f64);
        let cur_f = f(x)?;
        if !prev_f.is_finite() {
            prev_x = x;
            prev_f = cur_f;
            continue;
        }
        if cur_f.is_finite() && (prev_f > F::zero()) != (cur_f > F::zero()) {
            let positive_left = prev_f > F::zero();
            let mut a = prev_x;
            let mut b = x;
            for _ in 0..200 {
                let mid = F::lit(0.5) * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if (f(mid)? > F::zero()) == positive_left {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let x_root = F::lit(0.5) * (a + b);
            roots.push(EnergyLevel {
                theory: prob.theory,
                l: prob.l,
                method: Method::Oracle,
                e_scaled: -(x_root * x_root) * F::lit(0.5),
            });
        }
        prev_x = x;
        prev_f = cur_f;
    }
    roots.sort_by(|a, b| {
        a.e_scaled
            .partial_cmp(&b.e_scaled)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

/// One channel of a three-way comparison: closed form, boundary-matching
/// solver, and regularized oracle side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow<F> {
    pub alpha: F,
    pub l: i32,
    pub theory: Theory,
    pub profile: RegulatorProfile,
    pub mu_squared: F,
    pub order: &'static str,
    pub e_closed: Option<F>,
    pub status_closed: &'static str,
    pub e_saep: Option<F>,
    pub status_saep: &'static str,
    pub e_oracle: Option<F>,
    pub status_oracle: &'static str,
    pub gap_saep_closed: Option<F>,
    pub gap_oracle_closed: Option<F>,
}

fn closed_column<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<(Option<F>, &'static str)> {
    match closed_form_energy(theory, alpha, l) {
        Ok(level) => Ok((Some(level.e_scaled), "ok")),
        Err(Error::NoBoundState { .. }) => Ok((None, "no_root")),
        Err(Error::NoRealClosedForm { .. }) => Ok((None, "no_real_closed_form")),
        Err(Error::OutOfWindow { .. }) => Ok((None, "out_of_window")),
        Err(Error::Numeric { .. }) => Ok((None, "numeric_error")),
        Err(e) => Err(e),
    }
}

fn saep_column<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<(Option<F>, &'static str)> {
    match solve_energy(theory, alpha, l) {
        Ok(SolveOutcome::Root(level)) => Ok((Some(level.e_scaled), "ok")),
        Ok(SolveOutcome::NoRoot { .. }) => Ok((None, "no_root")),
        Err(Error::WrongBranch { .. }) | Err(Error::OutOfWindow { .. }) => {
            Ok((None, "out_of_window"))
        }
        Err(Error::Numeric { .. }) => Ok((None, "numeric_error")),
        Err(e) => Err(e),
    }
}

fn oracle_column<F: Real>(theory: Theory, alpha: F, l: i32) -> Result<(Option<F>, &'static str)> {
    let prob = match regularized_problem(theory, alpha, l) {
        Ok(p) => p,
        Err(Error::WrongBranch { .. }) => return Ok((None, "out_of_window")),
        Err(e) => return Err(e),
    };
    match eigen_solve(&prob) {
        Ok(levels) => match levels.first() {
            Some(level) => Ok((Some(level.e_scaled), "ok")),
            None => Ok((None, "no_root")),
        },
        Err(Error::Numeric { .. }) => Ok((None, "numeric_error")),
        Err(e) => Err(e),
    }
}

/// Runs the three methods over the channel grid and collects one row per
/// (alpha, l, profile). Rows come back in grid order, so equal inputs give
/// byte-identical CSV output.
pub fn convergence_study<F: Real>(
    theory: Theory,
    alphas: &[F],
    ls: &[i32],
    profiles: &[RegulatorProfile],
) -> Result<Vec<ConvergenceRow<F>>> {
    let mut rows = Vec::with_capacity(alphas.len() * ls.len() * profiles.len());
    for &alpha in alphas {
        let geom = ConeGeometry::unit(alpha)?;
        for &l in ls {
            let momentum = geom.momentum(theory, l);
            for &profile in profiles {
                let (e_closed, status_closed) = closed_column(theory, alpha, l)?;
                let (e_saep, status_saep) = saep_column(theory, alpha, l)?;
                let (e_oracle, status_oracle) = oracle_column(theory, alpha, l)?;
                let rel_gap = |a: Option<F>, b: Option<F>| match (a, b) {
                    (Some(x), Some(y)) => Some((x - y).abs() / y.abs()),
                    _ => None,
                };
                rows.push(ConvergenceRow {
                    alpha,
                    l,
                    theory,
                    profile,
                    mu_squared: momentum.mu_squared,
                    order: momentum.order.label(),
                    e_closed,
                    status_closed,
                    e_saep,
                    status_saep,
                    e_oracle,
                    status_oracle,
                    gap_saep_closed: rel_gap(e_saep, e_closed),
                    gap_oracle_closed: rel_gap(e_oracle, e_closed),
                });
            }
        }
    }
    Ok(rows)
}

fn push_float<F: Real>(out: &mut String, v: Option<F>) {
    use std::fmt::Write;
    if let Some(v) = v {
        let _ = write!(out, "{:.16e}", v.as_f64());
    }
}

/// Renders convergence rows as CSV with a fixed header and full-precision
/// floats; optional cells are left empty.
pub fn to_csv<F: Real>(rows: &[ConvergenceRow<F>]) -> String {
    use std::fmt::Write;
    let mut out = String::from(
        "alpha,l,theory,profile,mu2,order,e_closed,status_closed,e_saep,status_saep,\
         e_oracle,status_oracle,gap_saep_closed,gap_oracle_closed\n",
    );
    for row in rows {
        let _ = write!(
            out,
            "{:.16e},{},{},{},{:.16e},{}",
            row.alpha.as_f64(),
            row.l,
            row.theory.label(),
            row.profile.label(),
            row.mu_squared.as_f64(),
            row.order,
        );
        out.push(',');
        push_float(&mut out, row.e_closed);
        out.push(',');
        out.push_str(row.status_closed);
        out.push(',');
        push_float(&mut out, row.e_saep);
        out.push(',');
        out.push_str(row.status_saep);
        out.push(',');
        push_float(&mut out, row.e_oracle);
        out.push(',');
        out.push_str(row.status_oracle);
        out.push(',');
        push_float(&mut out, row.gap_saep_closed);
        out.push(',');
        push_float(&mut out, row.gap_oracle_closed);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deepest(theory: Theory, alpha: f64, l: i32) -> Option<f64> {
        let prob = regularized_problem(theory, alpha, l).unwrap();
        eigen_solve(&prob).unwrap().first().map(|lvl| lvl.e_scaled)
    }

    #[test]
    fn problem_parameters() {
        let p = regularized_problem(Theory::KleinGordon, 2.0f64, 0).unwrap();
        assert_eq!(p.mu, 0.0);
        assert!((p.well_depth - 1.0).abs() < 1e-15);

        let p = regularized_problem(Theory::DaCosta, 2.2f64, 1).unwrap();
        assert!((p.mu * p.mu - 8.264_462_809_917_355_371_9e-3).abs() < 1e-15);
        assert!((p.well_depth - 1.090_909_090_909_090_909_1).abs() < 1e-15);
    }

    #[test]
    fn rejects_imaginary_order_channels() {
        assert!(matches!(
            regularized_problem(Theory::DaCosta, 2.0f64, 0),
            Err(Error::WrongBranch { .. })
        ));
    }

    #[test]
    fn frozen_ground_states() {
        // reference roots of the J/K matching condition, solved with
        // 40-digit arithmetic
        let cases = [
            (Theory::KleinGordon, 2.0, 0, -0.020_475_211_018_423_930_187),
            (Theory::KleinGordon, 1.5, 0, -0.002_638_356_747_375_307_692_7),
            (Theory::DaCosta, 2.2, 1, -0.009_593_544_546_941_218_831_4),
            (Theory::KleinGordon, 5.0, 1, -0.019_936_689_978_707_335_821),
            (Theory::KleinGordon, 10.0, 1, -0.087_551_417_716_655_437_288),
        ];
        for &(theory, alpha, l, want) in &cases {
            let got = deepest(theory, alpha, l).expect("channel must bind");
            assert!(
                (got - want).abs() < 1e-12 * want.abs(),
                "{theory:?} alpha={alpha} l={l}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn channels_that_do_not_bind() {
        let cases = [
            (Theory::KleinGordon, 2.0, 1),
            (Theory::KleinGordon, 3.0, 1),
            (Theory::DaCosta, 2.0, 1),
            (Theory::KleinGordon, 2.0, 2),
            (Theory::KleinGordon, 2.0, 3),
        ];
        for &(theory, alpha, l) in &cases {
            assert_eq!(
                deepest(theory, alpha, l),
                None,
                "{theory:?} alpha={alpha} l={l} must not bind"
            );
        }
    }

    #[test]
    fn repulsive_cap_never_binds() {
        let p = regularized_problem(Theory::KleinGordon, 1.0f64, 0).unwrap();
        assert_eq!(p.well_depth, 0.0);
        assert!(eigen_solve(&p).unwrap().is_empty());

        let p = regularized_problem(Theory::DaCosta, 0.8f64, 1).unwrap();
        assert!(p.well_depth < 0.0);
        assert!(eigen_solve(&p).unwrap().is_empty());
        assert!(!p.binds().unwrap());
    }

    #[test]
    fn binding_criterion_matches_root_existence() {
        let cases = [
            (Theory::KleinGordon, 2.0, 0),
            (Theory::KleinGordon, 2.0, 1),
            (Theory::KleinGordon, 5.0, 1),
            (Theory::DaCosta, 2.0, 1),
            (Theory::DaCosta, 2.2, 1),
        ];
        for &(theory, alpha, l) in &cases {
            let p = regularized_problem(theory, alpha, l).unwrap();
            let has_root = !eigen_solve(&p).unwrap().is_empty();
            assert_eq!(
                p.binds().unwrap(),
                has_root,
                "{theory:?} alpha={alpha} l={l}"
            );
        }
    }

    #[test]
    fn interior_log_deriv_continues_past_the_well_bottom() {
        let p = regularized_problem(Theory::KleinGordon, 2.0f64, 1).unwrap();
        let edge = p.well_depth.sqrt();
        let below = p.interior_log_deriv(edge - 1e-7).unwrap();
        let at = p.interior_log_deriv(edge).unwrap();
        let above = p.interior_log_deriv(edge + 1e-7).unwrap();
        assert!((at - p.mu).abs() < 1e-15);
        assert!((below - at).abs() < 1e-6);
        assert!((above - at).abs() < 1e-6);
    }

    #[test]
    fn oracle_tracks_the_full_log_matching_root() {
        // the mu = 0 channel of the smoothed problem should land near the
        // point-limit answer, a few percent off at moderate alpha
        let got = deepest(Theory::KleinGordon, 1.5, 0).unwrap();
        let full = -1.627_332_582_797_196_201_9e-3;
        let gap = (got - full).abs() / full.abs();
        assert!(gap < 0.75, "oracle/full-matching gap: {gap}");
    }

    #[test]
    fn study_statuses_on_the_alpha_2_grid() {
        let rows = convergence_study(
            Theory::DaCosta,
            &[2.0f64],
            &[0, 1, 2, 3],
            &[RegulatorProfile::UniformDisk],
        )
        .unwrap();
        assert_eq!(rows.len(), 4);

        let by_l = |l: i32| rows.iter().find(|r| r.l == l).unwrap();
        let r0 = by_l(0);
        assert_eq!(r0.status_closed, "ok");
        assert_eq!(r0.status_saep, "out_of_window");
        assert_eq!(r0.status_oracle, "out_of_window");
        assert_eq!(r0.order, "imaginary");

        let r1 = by_l(1);
        assert_eq!(r1.status_closed, "ok");
        assert_eq!(r1.status_saep, "ok");
        assert_eq!(r1.status_oracle, "no_root");
        let gap = r1.gap_saep_closed.unwrap();
        assert!(gap < 1e-10, "solver/closed-form gap: {gap}");

        let r2 = by_l(2);
        assert_eq!(r2.status_closed, "no_real_closed_form");
        assert_eq!(r2.status_saep, "no_root");

        let r3 = by_l(3);
        assert_eq!(r3.status_closed, "out_of_window");
        assert_eq!(r3.status_saep, "out_of_window");
    }

    #[test]
    fn csv_shape_and_determinism() {
        let run = || {
            let rows = convergence_study(
                Theory::KleinGordon,
                &[1.5f64, 2.0],
                &[0, 1],
                &[RegulatorProfile::UniformDisk],
            )
            .unwrap();
            to_csv(&rows)
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        let lines: Vec<&str> = a.trim_end().lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].starts_with("alpha,l,theory,profile,mu2,order,"));
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 14);
        }
        // KG alpha=2 l=0 binds in all three columns
        let row = lines
            .iter()
            .find(|l| l.starts_with("2.0000000000000000e0,0,"))
            .unwrap();
        assert!(row.contains(",ok,"));
        assert!(!row.contains("out_of_window"));
    }
}
