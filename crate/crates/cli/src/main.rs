use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use closext::{DEFAULT_GUARD, MAX_GUARD};

mod commands;
mod io;

#[derive(Parser, Debug)]
#[command(
    name = "closext",
    version,
    about = "Largest extensions of finite closure systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest ground set the brute-force commands will enumerate
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD as u64,
          value_parser = clap::value_parser!(u64).range(0..=MAX_GUARD as u64))]
    guard: u64,

    /// Seed for the random generators
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also emit the per-step trace (extend)
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Implicational base (.imp)
    #[arg(long)]
    base: Option<PathBuf>,
    /// Meet-irreducible family (.meets)
    #[arg(long)]
    meets: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OptionalInput {
    #[arg(long)]
    base: Option<PathBuf>,
    #[arg(long)]
    meets: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure of a set of elements
    Closure {
        #[command(flatten)]
        input: Input,
        /// Space-separated element tokens; "" or "{}" for the empty set
        #[arg(long = "set", allow_hyphen_values = true)]
        set: String,
    },
    /// Every closed set, by brute force
    Enumerate {
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether the non-unitary part of a base yields the largest extension
    CheckLargest {
        #[arg(long)]
        base: PathBuf,
    },
    /// Largest extension as a base (--base) or meet family (--meets)
    Extend {
        #[command(flatten)]
        input: Input,
    },
    /// Meet-irreducible sets of the closure system, by brute force
    Meets {
        #[command(flatten)]
        input: Input,
    },
    /// Largest extension by brute force
    OracleLargest {
        #[command(flatten)]
        input: Input,
    },
    /// Compare the fast pipelines against the brute-force largest extension
    Verify {
        #[command(flatten)]
        input: Input,
        /// Claimed largest extension (.imp or .meets) to check as well
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Seeded random base, written as <out>.imp and <out>.meets
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Growth of the meet family along the extension, over random instances or one input
    Growth {
        #[command(flatten)]
        input: OptionalInput,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Rules per instance (default: n)
        #[arg(long)]
        k: Option<usize>,
    },
}

pub struct Config {
    pub guard: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub trace: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        guard: cli.guard as usize,
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
        trace: cli.trace,
    };
    let (name, result) = match cli.command {
        Command::Closure { input, set } => ("closure", commands::closure(&config, &input, &set)),
        Command::Enumerate { input } => ("enumerate", commands::enumerate(&config, &input)),
        Command::CheckLargest { base } => {
            ("check-largest", commands::check_largest(&config, &base))
        }
        Command::Extend { input } => ("extend", commands::extend(&config, &input)),
        Command::Meets { input } => ("meets", commands::meets(&config, &input)),
        Command::OracleLargest { input } => {
            ("oracle-largest", commands::oracle_largest(&config, &input))
        }
        Command::Verify { input, expected } => (
            "verify",
            commands::verify(&config, &input, expected.as_deref()),
        ),
        Command::GenRandom { n, k } => ("gen-random", commands::gen_random(&config, n, k)),
        Command::Growth {
            input,
            n,
            trials,
            k,
        } => ("growth", commands::growth(&config, &input, n, trials, k)),
    };
    let code = io::finish(&config, name, result);
    ExitCode::from(code)
}
