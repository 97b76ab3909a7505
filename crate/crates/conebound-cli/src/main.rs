//! Command-line front end for the cone bound-state library.
//!
//! Energies are printed in scaled units e = E m a^2 / hbar^2 unless the
//! energy subcommand is given --physical. CSV floats carry 17 significant
//! digits so output round-trips losslessly; reruns of the same command are
//! byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use conebound::{
    classify, closed_form_energy, eigen_solve, mu_squared, regularized_problem, solve_energy,
    BoundStateReport, ConeGeometry, Error, Method, RegulatorProfile, Result, SolveOutcome, Theory,
};

#[derive(Parser)]
#[command(name = "conebound", version, about = "Bound states of a quantum particle on a cone")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print mu^2 and the order kind for one angular channel
    Mu(Channel),
    /// Classify every angular channel of a cone, as JSON
    Classify {
        /// dacosta or kg
        #[arg(long)]
        theory: String,
        /// Opening parameter of the cone
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Bound-state energy of one channel by the chosen method(s)
    Energy(EnergyArgs),
    /// Scan alpha and emit one row per (alpha, l, method)
    Sweep(SweepArgs),
    /// Self-checks on the cone geometry
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// All bound states of the smoothed-tip reference problem
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Channel {
    /// dacosta or kg
    #[arg(long)]
    theory: String,
    /// Opening parameter of the cone
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Angular momentum quantum number
    #[arg(long, allow_negative_numbers = true)]
    l: i32,
}

#[derive(Args)]
struct EnergyArgs {
    /// dacosta or kg
    #[arg(long)]
    theory: String,
    /// Opening parameter of the cone
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Angular momentum quantum number
    #[arg(long, allow_negative_numbers = true)]
    l: i32,
    /// closed-form, saep, oracle, or all
    #[arg(long, default_value = "all")]
    method: String,
    /// json or csv
    #[arg(long, default_value = "json")]
    format: String,
    /// Also report E = e hbar^2/(m a^2) with hbar = 1 (json output only)
    #[arg(long, requires = "mass", requires = "radius")]
    physical: bool,
    /// Particle mass m for --physical
    #[arg(long)]
    mass: Option<f64>,
    /// Tip radius a for --physical
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// dacosta or kg
    #[arg(long)]
    theory: String,
    /// First alpha grid point
    #[arg(long, allow_negative_numbers = true)]
    alpha_min: f64,
    /// Last alpha grid point
    #[arg(long, allow_negative_numbers = true)]
    alpha_max: f64,
    /// Number of alpha grid points, endpoints included (at least 2)
    #[arg(long)]
    steps: usize,
    /// Channels run from -l-max through l-max
    #[arg(long)]
    l_max: u32,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Total integrated curvature against the closed form 2 pi (1 - alpha)
    GaussBonnet {
        /// Opening parameter of the cone
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
}

#[derive(Args)]
struct OracleArgs {
    /// dacosta or kg
    #[arg(long)]
    theory: String,
    /// Opening parameter of the cone
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Angular momentum quantum number
    #[arg(long, allow_negative_numbers = true)]
    l: i32,
    /// json or csv
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Clone, Copy)]
enum OutFormat {
    Csv,
    Json,
}

/// One output row. Fields are declared in alphabetical order so that JSON
/// emitted here survives a parse/re-serialize cycle byte-for-byte (serde_json
/// sorts object keys when round-tripping through Value).
#[derive(Serialize)]
struct LevelRow {
    alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_physical: Option<f64>,
    e_scaled: Option<f64>,
    l: i32,
    method: &'static str,
    mu2: f64,
    order_kind: &'static str,
    status: &'static str,
    theory: &'static str,
}

#[derive(Serialize)]
struct WindowOut {
    lower: f64,
    /// None when the window is unbounded above.
    upper: Option<f64>,
    upper_inclusive: bool,
}

#[derive(Serialize)]
struct ChannelOut {
    allowed: bool,
    closed_form: &'static str,
    l: i32,
    mu2: f64,
    order_kind: &'static str,
    saep_root_exists: Option<bool>,
    window: Option<WindowOut>,
}

#[derive(Serialize)]
struct ReportOut {
    allowed_l: Vec<i32>,
    alpha: f64,
    levels: Vec<ChannelOut>,
    theory: &'static str,
}

fn parse_theory(name: &str) -> Result<Theory> {
    match name.to_ascii_lowercase().as_str() {
        "dacosta" | "da-costa" | "da_costa" => Ok(Theory::DaCosta),
        "kg" | "klein-gordon" | "klein_gordon" => Ok(Theory::KleinGordon),
        _ => Err(Error::Config {
            what: "theory",
            name: name.to_string(),
        }),
    }
}

fn parse_format(name: &str) -> Result<OutFormat> {
    match name.to_ascii_lowercase().as_str() {
        "csv" => Ok(OutFormat::Csv),
        "json" => Ok(OutFormat::Json),
        _ => Err(Error::Config {
            what: "format",
            name: name.to_string(),
        }),
    }
}

fn parse_methods(name: &str) -> Result<Vec<Method>> {
    match name.to_ascii_lowercase().as_str() {
        "closed-form" | "closed_form" => Ok(vec![Method::ClosedForm]),
        "saep" => Ok(vec![Method::SaepRoot]),
        "oracle" => Ok(vec![Method::Oracle]),
        "all" => Ok(vec![Method::ClosedForm, Method::Oracle, Method::SaepRoot]),
        _ => Err(Error::Config {
            what: "method",
            name: name.to_string(),
        }),
    }
}

/// Evaluates one method on one channel, reducing the outcome to an optional
/// scaled energy plus a status word. Physics verdicts (no root, no real
/// closed form, out of window) are data, not process errors. Numeric
/// failures become a status inside a scan but abort a single-channel query.
fn method_cell(
    theory: Theory,
    alpha: f64,
    l: i32,
    method: Method,
    scan: bool,
) -> Result<(Option<f64>, &'static str)> {
    let numeric = |e: Error| -> Result<(Option<f64>, &'static str)> {
        if scan {
            Ok((None, "numeric_error"))
        } else {
            Err(e)
        }
    };
    match method {
        Method::ClosedForm => match closed_form_energy(theory, alpha, l) {
            Ok(level) => Ok((Some(level.e_scaled), "ok")),
            Err(Error::NoBoundState { .. }) => Ok((None, "no_root")),
            Err(Error::NoRealClosedForm { .. }) => Ok((None, "no_real_closed_form")),
            Err(Error::OutOfWindow { .. }) | Err(Error::WrongBranch { .. }) => {
                Ok((None, "out_of_window"))
            }
            Err(e @ Error::Numeric { .. }) => numeric(e),
            Err(e) => Err(e),
        },
        Method::SaepRoot => match solve_energy(theory, alpha, l) {
            Ok(SolveOutcome::Root(level)) => Ok((Some(level.e_scaled), "ok")),
            Ok(SolveOutcome::NoRoot { .. }) => Ok((None, "no_root")),
            Err(Error::WrongBranch { .. }) | Err(Error::OutOfWindow { .. }) => {
                Ok((None, "out_of_window"))
            }
            Err(e @ Error::Numeric { .. }) => numeric(e),
            Err(e) => Err(e),
        },
        Method::Oracle => {
            let problem = match regularized_problem(theory, alpha, l) {
                Ok(p) => p,
                Err(Error::WrongBranch { .. }) => return Ok((None, "out_of_window")),
                Err(e) => return Err(e),
            };
            match eigen_solve(&problem) {
                Ok(levels) => match levels.first() {
                    Some(level) => Ok((Some(level.e_scaled), "ok")),
                    None => Ok((None, "no_root")),
                },
                Err(e @ Error::Numeric { .. }) => numeric(e),
                Err(e) => Err(e),
            }
        }
    }
}

fn channel_rows(
    theory: Theory,
    alpha: f64,
    l: i32,
    methods: &[Method],
    scan: bool,
) -> Result<Vec<LevelRow>> {
    let momentum = mu_squared(theory, alpha, l)?;
    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let (e_scaled, status) = method_cell(theory, alpha, l, method, scan)?;
        rows.push(LevelRow {
            alpha,
            e_physical: None,
            e_scaled,
            l,
            method: method.label(),
            mu2: momentum.mu_squared,
            order_kind: momentum.order.label(),
            status,
            theory: theory.label(),
        });
    }
    Ok(rows)
}

const CSV_HEADER: &str = "alpha,l,theory,mu2,order_kind,e_scaled,method,status";

fn rows_to_csv(rows: &[LevelRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96 + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{:.16e},{},{},{:.16e},{},",
            r.alpha, r.l, r.theory, r.mu2, r.order_kind
        );
        if let Some(e) = r.e_scaled {
            let _ = write!(out, "{:.16e}", e);
        }
        let _ = writeln!(out, ",{},{}", r.method, r.status);
    }
    out
}

fn rows_to_text(rows: &[LevelRow], format: OutFormat) -> String {
    match format {
        OutFormat::Csv => rows_to_csv(rows),
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
    }
}

fn report_out(report: &BoundStateReport<f64>) -> ReportOut {
    ReportOut {
        allowed_l: report.allowed_l.clone(),
        alpha: report.alpha,
        levels: report
            .levels
            .iter()
            .map(|level| ChannelOut {
                allowed: level.allowed,
                closed_form: level.closed_form.label(),
                l: level.l,
                mu2: level.momentum.mu_squared,
                order_kind: level.momentum.order.label(),
                saep_root_exists: level.saep_root_exists,
                window: level.window.map(|w| WindowOut {
                    lower: w.lower,
                    upper: w.upper.is_finite().then_some(w.upper),
                    upper_inclusive: w.upper_inclusive,
                }),
            })
            .collect(),
        theory: report.theory.label(),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Mu(ch) => {
            let theory = parse_theory(&ch.theory)?;
            let momentum = mu_squared(theory, ch.alpha, ch.l)?;
            println!("mu2 = {:.16e}", momentum.mu_squared);
            println!("order = {}", momentum.order.label());
            Ok(())
        }
        Command::Classify { theory, alpha } => {
            let theory = parse_theory(&theory)?;
            let report = classify(theory, alpha)?;
            let text = serde_json::to_string_pretty(&report_out(&report)).expect("report serializes");
            println!("{text}");
            Ok(())
        }
        Command::Energy(args) => {
            let theory = parse_theory(&args.theory)?;
            let format = parse_format(&args.format)?;
            let methods = parse_methods(&args.method)?;
            let scan = methods.len() > 1;
            let mut rows = channel_rows(theory, args.alpha, args.l, &methods, scan)?;
            if args.physical {
                if matches!(format, OutFormat::Csv) {
                    return Err(Error::Domain {
                        what: "energy",
                        detail: "the csv schema carries scaled units only; use --format json with --physical".into(),
                    });
                }
                let mass = args.mass.expect("clap enforces --mass");
                let radius = args.radius.expect("clap enforces --radius");
                if !(mass > 0.0) || !(radius > 0.0) {
                    return Err(Error::Domain {
                        what: "energy",
                        detail: "mass and radius must be positive".into(),
                    });
                }
                for row in &mut rows {
                    row.e_physical = row.e_scaled.map(|e| e / (mass * radius * radius));
                }
            }
            print!("{}", rows_to_text(&rows, format));
            Ok(())
        }
        Command::Sweep(args) => {
            let theory = parse_theory(&args.theory)?;
            let format = parse_format(&args.format)?;
            if args.steps < 2 {
                return Err(Error::Domain {
                    what: "sweep",
                    detail: "steps must be at least 2".into(),
                });
            }
            if !(args.alpha_min > 0.0) || !(args.alpha_max >= args.alpha_min) || !args.alpha_max.is_finite() {
                return Err(Error::Domain {
                    what: "sweep",
                    detail: "need 0 < alpha-min <= alpha-max, both finite".into(),
                });
            }
            let l_max = i32::try_from(args.l_max).map_err(|_| Error::Domain {
                what: "sweep",
                detail: "l-max is too large".into(),
            })?;
            let methods = [Method::ClosedForm, Method::Oracle, Method::SaepRoot];
            let span = args.alpha_max - args.alpha_min;
            let mut points = Vec::with_capacity(args.steps * (2 * l_max as usize + 1));
            for i in 0..args.steps {
                let alpha = args.alpha_min + span * i as f64 / (args.steps - 1) as f64;
                for l in -l_max..=l_max {
                    points.push((alpha, l));
                }
            }
            let per_point: Vec<Result<Vec<LevelRow>>> = points
                .par_iter()
                .map(|&(alpha, l)| channel_rows(theory, alpha, l, &methods, true))
                .collect();
            let mut rows = Vec::with_capacity(points.len() * methods.len());
            for point in per_point {
                rows.extend(point?);
            }
            let text = rows_to_text(&rows, format);
            match args.output {
                Some(path) => fs::write(&path, text).map_err(|e| Error::Domain {
                    what: "sweep",
                    detail: format!("cannot write {}: {e}", path.display()),
                })?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Check { what } => match what {
            CheckCommand::GaussBonnet { alpha } => {
                let geom = ConeGeometry::unit(alpha)?;
                let model = geom.regulator(RegulatorProfile::UniformDisk);
                let analytic = model.total_curvature_analytic();
                let quadrature = model.total_curvature_quadrature()?;
                println!("analytic   = {:.16e}", analytic);
                println!("quadrature = {:.16e}", quadrature);
                println!("residual   = {:.16e}", (quadrature - analytic).abs());
                Ok(())
            }
        },
        Command::Oracle(args) => {
            let theory = parse_theory(&args.theory)?;
            let format = parse_format(&args.format)?;
            let momentum = mu_squared(theory, args.alpha, args.l)?;
            let problem = regularized_problem(theory, args.alpha, args.l)?;
            let levels = eigen_solve(&problem)?;
            let rows: Vec<LevelRow> = levels
                .iter()
                .map(|level| LevelRow {
                    alpha: args.alpha,
                    e_physical: None,
                    e_scaled: Some(level.e_scaled),
                    l: args.l,
                    method: Method::Oracle.label(),
                    mu2: momentum.mu_squared,
                    order_kind: momentum.order.label(),
                    status: "ok",
                    theory: theory.label(),
                })
                .collect();
            print!("{}", rows_to_text(&rows, format));
            Ok(())
        }
    }
}

fn exit_class(err: &Error) -> u8 {
    match err {
        Error::Domain { .. }
        | Error::Config { .. }
        | Error::WrongBranch { .. }
        | Error::OutOfWindow { .. }
        | Error::NoRealClosedForm { .. }
        | Error::NoBoundState { .. } => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}
