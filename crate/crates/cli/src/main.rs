//! Command-line front end: verification suites, parameter sweeps, and
//! machine-readable reports for the deformed-potential library.
//!
//! Verification subcommands print a JSON report to stdout and a human
//! summary to stderr; data subcommands print their document to stdout.
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage or constraint errors.

mod commands;
mod pool;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::{CubicFamily, CubicMode, GridSpec, LemmaFamily, Output, PolyFormat};
use xell::report::{Check, Residual, Status};
use xell::ring::{parse_rational, Rational};
use xell::systems::SystemKind;

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_system(s: &str) -> Result<SystemKind, String> {
    SystemKind::from_name(s)
        .ok_or_else(|| format!("unknown system `{s}` (expected radial, trig-dpt, or hyp-dpt)"))
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [lo, hi, points] = parts.as_slice() else {
        return Err(format!("expected `lo,hi,N`, got `{s}`"));
    };
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("grid lower end `{lo}` is not a number"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("grid upper end `{hi}` is not a number"))?;
    let points: usize = points
        .trim()
        .parse()
        .map_err(|_| format!("grid point count `{points}` is not a positive integer"))?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(format!("grid ends must be finite with lo < hi, got {lo},{hi}"));
    }
    if points < 3 {
        return Err(format!("grid needs at least 3 points, got {points}"));
    }
    Ok(GridSpec { lo, hi, points })
}

#[derive(Parser)]
#[command(
    name = "xell",
    version,
    about = "Construct and verify shape-invariant deformed potentials and their \
             exceptional orthogonal polynomials"
)]
struct Cli {
    /// Worker threads for independent checks (default: XELL_JOBS, then logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for deterministic point sampling.
    #[arg(long, global = true, default_value_t = 0)]
    rng_seed: u64,

    /// Append a synthetic failing check to the report (exit-code plumbing test).
    #[arg(long, global = true, hide = true)]
    inject_failure: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verification suites; JSON report on stdout.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exact polynomial data emitters.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Plot-ready x,U(x) samples of a deformed potential (CSV on stdout).
    Potential(PotentialArgs),
    /// Finite-difference spectrum against the closed-form levels.
    Spectrum(SpectrumArgs),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Contiguity relations of the classical families, symbolically.
    Lemmas {
        /// Largest polynomial degree to check.
        #[arg(long)]
        n_max: u32,
        /// Which relations: the single-parameter pair, the two-parameter pair, or all.
        #[arg(long, value_enum, default_value_t = LemmaFamily::All)]
        family: LemmaFamily,
    },
    /// The degree-3ell five-summand cubic identities.
    Cubic {
        #[arg(long, value_enum)]
        family: CubicFamily,
        /// Largest deformation degree to check.
        #[arg(long)]
        ell_max: u32,
        #[arg(long, value_enum, default_value_t = CubicMode::Both)]
        mode: CubicMode,
    },
    /// Shape invariance of the deformed potential: exact residual plus
    /// pointwise defect samples.
    Shape {
        #[arg(long, value_parser = parse_system)]
        system: SystemKind,
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = parse_rat)]
        g: Rational,
        #[arg(long, value_parser = parse_rat)]
        h: Option<Rational>,
        /// Number of sampled interior points for the pointwise defect.
        #[arg(long, default_value_t = 20)]
        seeds: u32,
    },
    /// Orthogonality of the deformed family under its own measure.
    Orthogonality {
        #[arg(long, value_parser = parse_system)]
        system: SystemKind,
        #[arg(long)]
        ell: u32,
        /// Largest level in the Gram matrix.
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_parser = parse_rat)]
        g: Rational,
        #[arg(long, value_parser = parse_rat)]
        h: Option<Rational>,
    },
    /// Exact root counts of the deformed polynomials in the physical domain.
    Zeros {
        #[arg(long, value_parser = parse_system)]
        system: SystemKind,
        #[arg(long)]
        ell: u32,
        /// Largest level to count roots for.
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_parser = parse_rat)]
        g: Rational,
        #[arg(long, value_parser = parse_rat)]
        h: Option<Rational>,
    },
    /// The deforming polynomial's second-order differential equation.
    Ode {
        #[arg(long, value_parser = parse_system)]
        system: SystemKind,
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = parse_rat)]
        g: Rational,
        #[arg(long, value_parser = parse_rat)]
        h: Option<Rational>,
    },
    /// Confluence of the two-parameter cubic identity onto the one-parameter one.
    Limit {
        /// Identity index to track through the limit.
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_rat)]
        alpha: Rational,
        /// First beta of the doubling ladder beta, 2 beta, 4 beta.
        #[arg(long, value_parser = parse_rat)]
        beta_start: Rational,
    },
    /// The full acceptance suite.
    All {
        /// Reduced sweep depths for a fast smoke run; elided ranges are
        /// reported as skipped checks.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Exact coefficients of one deformed orthogonal polynomial.
    Xell {
        #[arg(long, value_parser = parse_system)]
        system: SystemKind,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_rat)]
        g: Rational,
        #[arg(long, value_parser = parse_rat)]
        h: Option<Rational>,
        #[arg(long, value_enum, default_value_t = PolyFormat::Json)]
        format: PolyFormat,
    },
}

#[derive(Args)]
struct PotentialArgs {
    #[arg(long, value_parser = parse_system)]
    system: SystemKind,
    #[arg(long)]
    ell: u32,
    #[arg(long, value_parser = parse_rat)]
    g: Rational,
    #[arg(long, value_parser = parse_rat)]
    h: Option<Rational>,
    /// Number of sample points across the plot window.
    #[arg(long)]
    samples: u32,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_parser = parse_system)]
    system: SystemKind,
    #[arg(long)]
    ell: u32,
    #[arg(long, value_parser = parse_rat)]
    g: Rational,
    #[arg(long, value_parser = parse_rat)]
    h: Option<Rational>,
    /// Number of low-lying levels to compare.
    #[arg(long)]
    levels: u32,
    /// Finite-difference grid as `lo,hi,N` (default chosen per system).
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, String> {
    let jobs = match flag {
        Some(jobs) => jobs,
        None => match std::env::var("XELL_JOBS") {
            Ok(text) => text
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("XELL_JOBS must be a positive integer, got `{text}`"))?,
            Err(_) => std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        },
    };
    if jobs == 0 {
        return Err("--jobs must be at least 1".to_string());
    }
    Ok(jobs)
}

fn run(cli: &Cli, jobs: usize) -> Result<Output, String> {
    match &cli.command {
        Command::Verify(verify) => match verify {
            VerifyCommand::Lemmas { n_max, family } => commands::verify_lemmas(*n_max, *family),
            VerifyCommand::Cubic {
                family,
                ell_max,
                mode,
            } => commands::verify_cubic(*family, *ell_max, *mode),
            VerifyCommand::Shape {
                system,
                ell,
                g,
                h,
                seeds,
            } => commands::verify_shape(*system, *ell, g, h.as_ref(), *seeds, cli.rng_seed),
            VerifyCommand::Orthogonality {
                system,
                ell,
                n_max,
                g,
                h,
            } => commands::verify_orthogonality(*system, *ell, *n_max, g, h.as_ref()),
            VerifyCommand::Zeros {
                system,
                ell,
                n_max,
                g,
                h,
            } => commands::verify_zeros(*system, *ell, *n_max, g, h.as_ref()),
            VerifyCommand::Ode { system, ell, g, h } => {
                commands::verify_ode(*system, *ell, g, h.as_ref())
            }
            VerifyCommand::Limit {
                n,
                alpha,
                beta_start,
            } => commands::verify_limit(*n, alpha, beta_start),
            VerifyCommand::All { quick } => commands::verify_all(*quick, cli.rng_seed, jobs),
        },
        Command::Poly(PolyCommand::Xell {
            system,
            ell,
            n,
            g,
            h,
            format,
        }) => commands::poly_xell(*system, *ell, *n, g, h.as_ref(), *format),
        Command::Potential(args) => {
            commands::potential(args.system, args.ell, &args.g, args.h.as_ref(), args.samples)
        }
        Command::Spectrum(args) => commands::spectrum(
            args.system,
            args.ell,
            &args.g,
            args.h.as_ref(),
            args.levels,
            args.grid,
        ),
    }
}

fn usage_error(message: String) -> ! {
    eprintln!("error: {message}");
    std::process::exit(2);
}

fn main() {
    let started = Instant::now();
    let cli = Cli::parse();
    let jobs = match resolve_jobs(cli.jobs) {
        Ok(jobs) => jobs,
        Err(message) => usage_error(message),
    };
    match run(&cli, jobs) {
        Ok(Output::Report(mut report)) => {
            if cli.inject_failure {
                report.push(Check::failed(
                    "injected/forced-failure",
                    Residual::Value(1.0),
                    "synthetic failing check requested by --inject-failure",
                ));
            }
            report.finalize(started);
            let json = serde_json::to_string_pretty(&report)
                .expect("report serialization cannot fail");
            println!("{json}");
            eprintln!("{}", report.summary_line());
            for check in report.checks.iter().filter(|c| c.status == Status::Fail) {
                eprintln!("  FAIL {}: {}", check.name, check.detail);
            }
            std::process::exit(report.exit_code());
        }
        Ok(Output::Data { stdout, note }) => {
            print!("{stdout}");
            eprintln!("{note}");
        }
        Err(message) => usage_error(message),
    }
}
