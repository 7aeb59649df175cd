use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod io;

use io::CliError;

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Build and verify quasi-Hopf algebras exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Hps,
    Aq,
    SkewHopf,
    #[value(name = "twist-A", alias = "twist-a")]
    TwistA,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CocycleAction {
    Check,
    Triviality,
    Restrict,
}

#[derive(Subcommand)]
enum Command {
    /// Write an algebra file for one of the built-in families.
    Build {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// `q = ζ_{p²}^k`.
        #[arg(long = "q-exp", allow_negative_numbers = true)]
        q_exp: Option<i64>,
        /// Skew-primitive datum JSON, for `skew-hopf` and `twist-A`.
        #[arg(long)]
        datum: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the axiom checks on an algebra file.
    Verify {
        input: PathBuf,
        /// `all`, or a comma-separated list of axiom names.
        #[arg(long, default_value = "all")]
        axioms: String,
        #[arg(long, short)]
        report: Option<PathBuf>,
    },
    /// Read the associator of an algebra file as a group 3-cocycle.
    Cocycle {
        input: PathBuf,
        action: CocycleAction,
        /// Generator index of the cyclic subgroup for `restrict`.
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Twist a skew-primitive Hopf algebra and extract the subalgebra.
    Twist {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustive modular checks and the family dichotomy, as JSON.
    Classify {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<u32>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the reproduction suite.
    Repro {
        /// Run only steps with this key or criterion number.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Build {
            family,
            p,
            s,
            q_exp,
            datum,
            out,
        } => commands::build(family, p, s, q_exp, datum.as_deref(), out.as_deref()),
        Command::Verify { input, axioms, report } => commands::verify(&input, &axioms, report.as_deref()),
        Command::Cocycle {
            input,
            action,
            axis,
            out,
        } => commands::cocycle(&input, action, axis, out.as_deref()),
        Command::Twist { datum, out, report } => commands::twist(&datum, out.as_deref(), report.as_deref()),
        Command::Classify { primes, out } => commands::classify(&primes, out.as_deref()),
        Command::Repro { only, fixtures } => commands::repro(only.as_deref(), fixtures),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
