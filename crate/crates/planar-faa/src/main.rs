//! Command-line front end over the batch experiment runners.
//!
//! Every subcommand shares the same flags: `--config <path>` (JSON, defaults
//! apply when omitted), `--out <dir>`, `--seed <u64>` (overrides the config
//! seed), and `--threads <n>` (0 = one worker per core; the thread count
//! never changes output bytes). Exit codes: 0 success, 2 configuration
//! error, 3 infeasible request, 4 i/o failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use planar_faa::experiments::{self, ExperimentError};

#[derive(Parser)]
#[command(
    name = "planar-faa",
    version,
    about = "Spacing statistics, estimation bounds, port placement, and beam maps \
             for finite planar fluid antenna arrays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo minimum-spacing histogram against the closed-form law.
    McSpacing(RunArgs),
    /// Estimation-bound sweep over SNR for greedy, uniform, and random layouts.
    CrbSweep(RunArgs),
    /// Regularizer sweep: determinant, bound, and interior-port trade-off.
    Tradeoff(RunArgs),
    /// One greedy layout with a summary report and baseline comparison.
    Place(RunArgs),
    /// Beam map and peak-sidelobe analysis for one layout.
    Beam(RunArgs),
    /// Greedy layouts and beam maps for every weight in the comparison list.
    PlaceAndBeam(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment config; built-in defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed from the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 means one per core. Never affects output bytes.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn run(command: &Command) -> Result<Vec<PathBuf>, ExperimentError> {
    let args = match command {
        Command::McSpacing(a)
        | Command::CrbSweep(a)
        | Command::Tradeoff(a)
        | Command::Place(a)
        | Command::Beam(a)
        | Command::PlaceAndBeam(a) => a,
    };
    let cfg = experiments::load_config(args.config.as_deref(), args.seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    let out = args.out.clone();
    pool.install(|| match command {
        Command::McSpacing(_) => experiments::run_mc_spacing(&cfg, &out),
        Command::CrbSweep(_) => experiments::run_crb_sweep(&cfg, &out),
        Command::Tradeoff(_) => experiments::run_tradeoff(&cfg, &out),
        Command::Place(_) => experiments::run_place(&cfg, &out),
        Command::Beam(_) => experiments::run_beam(&cfg, &out),
        Command::PlaceAndBeam(_) => experiments::run_place_and_beam(&cfg, &out),
    })
}

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(files) => {
            for file in files {
                println!("wrote {}", file.display());
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
