use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equiareal::cli::{self, ExitStatus, Options};
use equiareal::witness::Tolerances;

#[derive(Parser)]
#[command(name = "equiareal", version, about = "Tetrahedra with equal-area faces")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON lines.
    #[arg(long, global = true)]
    json: bool,
    /// Inputs are squared lengths.
    #[arg(long, global = true)]
    squared: bool,
    /// Permit floating-point classification of non-decimal coordinates.
    #[arg(long, global = true)]
    approx: bool,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Witness tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Oracle scan resolution (at least 1000).
    #[arg(long, global = true, default_value_t = equiareal::oracle::DEFAULT_GRID)]
    grid: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify JSON-lines records from a file or stdin.
    Classify { file: Option<String> },
    /// Enumerate completions of the face with sides a, b, c.
    Complete {
        #[arg(num_args = 3, allow_negative_numbers = true)]
        face: Vec<String>,
    },
    /// Realize six edges (a b c x y z) or one JSON record as coordinates.
    Realize {
        #[arg(num_args = 1..=6, allow_negative_numbers = true)]
        values: Vec<String>,
        /// Also run the projection witness.
        #[arg(long)]
        witness: bool,
    },
    /// Run the property suites.
    Check,
    /// Numeric cross-check for one face, or a random fuzz when no face is given.
    Oracle {
        #[arg(num_args = 0..=3, allow_negative_numbers = true)]
        face: Vec<String>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut opts = Options {
        json: args.json,
        squared: args.squared,
        approx: args.approx,
        trials: args.trials,
        seed: args.seed,
        tolerances: Tolerances {
            witness: args.tol,
            ..Tolerances::default()
        },
        grid: args.grid,
        witness: false,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let result = match args.command {
        Command::Classify { file } => {
            let text = match file {
                Some(path) => std::fs::read_to_string(path),
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s).map(|_| s)
                }
            };
            text.and_then(|t| cli::cmd_classify(&mut t.as_bytes(), &mut out, &opts))
        }
        Command::Complete { face } => cli::cmd_complete(&face, &mut out, &mut err, &opts),
        Command::Realize { values, witness } => {
            opts.witness = witness;
            cli::cmd_realize(&values, &mut out, &mut err, &opts)
        }
        Command::Check => cli::cmd_check(&mut out, &mut err, &opts),
        Command::Oracle { face } => cli::cmd_oracle(&face, &mut out, &mut err, &opts),
    };
    match result {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ExitStatus::RecordError.code() as u8)
        }
    }
}
