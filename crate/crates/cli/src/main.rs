use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod sweep;

use error::CliError;

#[derive(Parser)]
#[command(name = "pizza", version, about = "Even-minus-odd slice area of an off-centre cut pizza")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Target absolute truncation error for series evaluation.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    /// Interpret angle arguments in degrees.
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Table of exact power-series coefficients c_2j(m).
    Coeff {
        #[arg(long)]
        m: u64,
        #[arg(long = "j-max", default_value_t = 10)]
        j_max: u64,
        /// Check that m is an odd multiple of this n.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Evaluate the inequity g(alpha, a, n).
    Inequity {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Extremum M_a, its location and sign, and the closed-form bounds.
    Extremum(OffsetArgs),
    /// Closed-form upper bounds on M_a and |g|, checked against M_a.
    Bound(OffsetArgs),
    /// Sweep alpha or a and write a CSV table.
    Sweep {
        #[arg(long, value_enum)]
        param: sweep::SweepParam,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Fixed alpha when sweeping a.
        #[arg(long)]
        alpha: Option<f64>,
        /// Fixed offset when sweeping alpha.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the cross-check suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct OffsetArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Series,
    Quadrature,
    ClosedForm,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let policy = commands::policy(cli.tol)?;
    match cli.command {
        Command::Coeff { m, j_max, n } => commands::coeff(out, m, j_max, n),
        Command::Inequity { point, method } => {
            let alpha = to_radians(point.alpha, cli.degrees);
            let methods: &[commands::Method] = match method {
                Method::Series => &[commands::Method::Series],
                Method::Quadrature => &[commands::Method::Quadrature],
                Method::ClosedForm => &[commands::Method::ClosedForm],
                Method::All => &commands::Method::ALL,
            };
            commands::inequity(out, alpha, point.a, point.n, methods, &policy)
        }
        Command::Extremum(args) => commands::extremum(out, args.a, args.n, &policy),
        Command::Bound(args) => commands::bound(out, args.a, args.n, &policy),
        Command::Sweep {
            param,
            start,
            stop,
            steps,
            alpha,
            a,
            n,
            out: path,
        } => {
            let (start, stop, alpha) = match param {
                sweep::SweepParam::Alpha => (
                    to_radians(start, cli.degrees),
                    to_radians(stop, cli.degrees),
                    alpha,
                ),
                sweep::SweepParam::A => (start, stop, alpha.map(|x| to_radians(x, cli.degrees))),
            };
            let spec = sweep::SweepSpec::new(param, start, stop, steps, alpha, a, n, path)?;
            let rows = sweep::write_sweep(&spec, &policy)?;
            writeln!(out, "wrote {rows} rows to {}", spec.output_path.display())?;
            Ok(())
        }
        Command::Verify { level } => {
            let level = match level {
                Level::Quick => pizza_core::verify::VerifyLevel::Quick,
                Level::Full => pizza_core::verify::VerifyLevel::Full,
            };
            let opts = pizza_core::verify::VerifyOptions {
                policy,
                ..Default::default()
            };
            commands::verify(out, level, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
