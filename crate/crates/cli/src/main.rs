//! `qpi`: statevector-simulated Monte Carlo pi estimation.
//!
//! Subcommands: `pi` (run experiments, emit CSV), `selftest` (exhaustive
//! arithmetic oracle suites), `gatecount` (builder gate-count table).
//!
//! Exit codes: 0 success, 1 oracle mismatch or internal failure, 2 invalid
//! flags, 3 resource refusal.

mod gatecount;
mod pi_cmd;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use qpi_core::mlqae::SampleMode;

#[derive(Parser)]
#[command(name = "qpi", version, about = "Monte Carlo pi estimation on a statevector simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run pi-estimation experiments and emit one CSV row per repetition
    Pi(PiArgs),
    /// Exhaustive arithmetic self-tests against the classical integer oracle
    Selftest(SelftestArgs),
    /// Gate-count table for every arithmetic builder (build only)
    Gatecount(GatecountArgs),
}

#[derive(Args)]
struct PiArgs {
    /// Lattice bits per axis; accepts a comma-separated list (e.g. 2,3,4)
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,

    /// Largest schedule index; accepts a comma-separated list (e.g. 1,5)
    #[arg(long, value_delimiter = ',', default_value = "1")]
    kmax: Vec<u32>,

    /// Shots per circuit
    #[arg(long, default_value_t = 100)]
    shots: u64,

    /// Repetitions per (n, kmax) combination
    #[arg(long, default_value_t = 100)]
    reps: u64,

    /// Base seed; repetition r uses RNG substream r
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Hit counts: Bernoulli-sampled or exact fractional expectations
    #[arg(long, value_enum, default_value_t = Mode::Sampled)]
    mode: Mode,

    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Allow n >= 6 (25 qubits, 512 MiB of amplitudes at n = 6)
    #[arg(long)]
    allow_big: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sampled,
    Exact,
}

impl From<Mode> for SampleMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Sampled => SampleMode::Sampled,
            Mode::Exact => SampleMode::Exact,
        }
    }
}

#[derive(Args)]
struct SelftestArgs {
    /// Register size of the exhaustive suites (1 to 3)
    #[arg(long, default_value_t = 2)]
    n: u32,

    /// Negative control: flip one rotation sign; the suites must then fail
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Args)]
struct GatecountArgs {
    #[arg(long, default_value_t = 2)]
    min_n: u32,

    #[arg(long, default_value_t = 8)]
    max_n: u32,
}

/// Reports a bad flag value through clap (usage text, exit code 2).
fn invalid_value(message: String) -> ! {
    Cli::command()
        .error(ErrorKind::InvalidValue, message)
        .exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Pi(args) => {
            if args.n.contains(&0) {
                invalid_value("--n must be at least 1".into());
            }
            if args.shots == 0 {
                invalid_value("--shots must be at least 1".into());
            }
            if args.reps == 0 {
                invalid_value("--reps must be at least 1".into());
            }
            pi_cmd::run(&pi_cmd::PiParams {
                ns: args.n,
                kmaxes: args.kmax,
                shots: args.shots,
                reps: args.reps,
                seed: args.seed,
                mode: args.mode.into(),
                out: args.out,
                allow_big: args.allow_big,
            })
        }
        Command::Selftest(args) => {
            if !(1..=3).contains(&args.n) {
                invalid_value("--n must be 1, 2 or 3 (exhaustive suites)".into());
            }
            let results = selftest::run_suites(args.n as usize, args.inject_fault);
            selftest::report(&results)
        }
        Command::Gatecount(args) => {
            if args.min_n < 1 || args.min_n > args.max_n || args.max_n > 16 {
                invalid_value("need 1 <= min-n <= max-n <= 16".into());
            }
            gatecount::run(args.min_n as usize, args.max_n as usize)
        }
    };
    ExitCode::from(code as u8)
}
