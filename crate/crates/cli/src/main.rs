//! `pathring`: homology tables, presentation checks and geometry checks.
//!
//! Exit status is 0 when every check passes, 1 when a mathematical
//! discrepancy is found and 2 for usage or runtime errors, whatever the
//! output format.

mod commands;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pathring_core::geometry::Tolerances;

use render::{write_report, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "pathring", version, about = "Checks for the F2 path homology algebra of (CP^n, RP^n)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Seed for the randomized geometry checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coeff {
    #[value(name = "Z")]
    Z,
    #[value(name = "F2")]
    F2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homology of P_n and of the unit tangent bundle of RP^n.
    Homology {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(0..))]
        max_degree: i64,
    },
    /// Compare the presented algebra with homology and run the structural checks.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(i64).range(0..))]
        max_degree: i64,
    },
    /// Numerical geometry checks.
    Geom {
        #[command(subcommand)]
        check: GeomCommand,
    },
    /// Named generators by degree and level.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Number of level columns; with --golden defaults to the levels the
        /// shipped table covers.
        #[arg(long)]
        levels: Option<u32>,
        /// Compare with the shipped transcription (n = 1..4).
        #[arg(long)]
        golden: bool,
    },
}

#[derive(Debug, Args)]
struct Trials {
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
}

#[derive(Debug, Args)]
struct TolArgs {
    /// Hessian finite-difference step [env PATHRING_FD_STEP].
    #[arg(long)]
    fd_step: Option<f64>,
    /// Gradient finite-difference step [env PATHRING_GRAD_STEP].
    #[arg(long)]
    grad_step: Option<f64>,
    /// Largest accepted gradient norm [env PATHRING_GRAD_TOL].
    #[arg(long)]
    grad_tol: Option<f64>,
    /// Relative null-eigenvalue threshold [env PATHRING_ZERO_TOL].
    #[arg(long)]
    zero_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum GeomCommand {
    /// Index and nullity of the critical geodesic of length k*pi/2.
    Index {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Segments of the broken geodesic; at least 4k (default max(8, 4k+4)).
        #[arg(long)]
        segments: Option<u64>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Minimum-energy concatenation: additivity, associativity, reversal.
    ConcatCheck {
        #[command(flatten)]
        trials: Trials,
    },
    /// Vertical half-circles: endpoints, norm and its maximum in theta.
    HalfcircleCheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        trials: Trials,
    },
    /// Norms of the k-fold geodesic families.
    YkCheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[command(flatten)]
        trials: Trials,
    },
}

fn env_f64(name: &str) -> Result<Option<f64>> {
    match std::env::var(name) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("{name}={s:?} is not a number"))?)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => bail!("{name}: {e}"),
    }
}

/// Defaults, then environment, then flags.
fn tolerances(args: &TolArgs) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    let fields: [(&str, Option<f64>, &mut f64); 4] = [
        ("PATHRING_FD_STEP", args.fd_step, &mut tol.fd_step),
        ("PATHRING_GRAD_STEP", args.grad_step, &mut tol.grad_step),
        ("PATHRING_GRAD_TOL", args.grad_tol, &mut tol.grad_tol),
        ("PATHRING_ZERO_TOL", args.zero_tol, &mut tol.zero_tol),
    ];
    for (env, flag, slot) in fields {
        if let Some(v) = flag.or(env_f64(env)?) {
            if !(v.is_finite() && v > 0.0) {
                bail!("tolerance {env} must be positive, got {v}");
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.seed;
    match &cli.command {
        Command::Homology { n, coeff, max_degree } => commands::homology(*n, *coeff == Coeff::Z, *max_degree),
        Command::Verify { n, max_degree } => commands::verify(*n, *max_degree),
        Command::Table { n, levels, golden } => commands::table(*n, *levels, *golden),
        Command::Geom { check } => match check {
            GeomCommand::Index { n, k, segments, tol } => {
                let segments = segments.unwrap_or((4 * k + 4).max(8));
                commands::geom_index(*n as usize, *k as usize, segments as usize, &tolerances(tol)?)
            }
            GeomCommand::ConcatCheck { trials } => commands::geom_concat(trials.trials as usize, seed),
            GeomCommand::HalfcircleCheck { n, trials } => commands::geom_halfcircle(*n as usize, trials.trials as usize, seed),
            GeomCommand::YkCheck { n, k, trials } => {
                commands::geom_yk(*n as usize, *k as usize, trials.trials as usize, seed)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut buf = Vec::new();
    if let Err(e) = write_report(&mut buf, &report, cli.format) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(if report.passed { 0 } else { 1 })
}
