use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use popcount_cli::{exit, run_bench, run_count, run_verify, BenchConfig, CliError, VerifyMode};
use popcount_core::Algorithm;

#[derive(Parser)]
#[command(
    name = "popcount",
    version,
    about = "Unit-cost popcount algorithms: count, verify, bench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the ones of a single word.
    Count {
        #[arg(long)]
        hex: String,
        #[arg(long)]
        width: usize,
        /// ref, wegner, tree, gm or nonoblivious
        #[arg(long, default_value = "nonoblivious")]
        algo: Algorithm,
        /// Print one line per loop iteration (nonoblivious only).
        #[arg(long)]
        trace: bool,
    },
    /// Check every algorithm against the bit-loop oracle.
    Verify {
        #[arg(long)]
        width: usize,
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        exhaustive: bool,
        /// Number of seeded random inputs.
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a CSV of iteration and unit-op statistics.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        widths: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        ones: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "ref,wegner,tree,gm,nonoblivious"
        )]
        algos: Vec<Algorithm>,
        /// Output file, `-` for stdout.
        #[arg(long)]
        output: PathBuf,
    },
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Count {
            hex,
            width,
            algo,
            trace,
        } => {
            print!("{}", run_count(&hex, width, algo, trace)?);
            Ok(exit::OK)
        }
        Command::Verify {
            width,
            exhaustive,
            random,
            seed,
        } => {
            let mode = match (exhaustive, random) {
                (true, _) => VerifyMode::Exhaustive,
                (false, Some(samples)) => VerifyMode::Random { samples, seed },
                (false, None) => unreachable!("clap requires one of the modes"),
            };
            let report = run_verify(width, mode)?;
            if report.passed() {
                println!("{}", report.summary());
                Ok(exit::OK)
            } else {
                println!("FAIL: {}", report.summary());
                if let Some(c) = &report.first_failure {
                    println!("first counterexample: {c}");
                }
                Ok(exit::MISMATCH)
            }
        }
        Command::Bench {
            widths,
            ones,
            trials,
            seed,
            algos,
            output,
        } => {
            let cfg = BenchConfig {
                widths,
                ones_values: ones,
                trials,
                seed,
                algos,
                output_path: output,
            };
            let rows = run_bench(&cfg)?;
            let bad = rows.iter().filter(|r| !r.all_correct).count();
            if cfg.output_path.as_os_str() != "-" {
                eprintln!("wrote {} rows to {}", rows.len(), cfg.output_path.display());
            }
            if bad > 0 {
                eprintln!("{bad} rows disagreed with the oracle");
                Ok(exit::MISMATCH)
            } else {
                Ok(exit::OK)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
