//! Harness behind the `popcount` binary: seeded inputs, single counts,
//! oracle verification sweeps and CSV benchmark grids.

pub mod bench;
pub mod count;
pub mod input;
pub mod verify;

use thiserror::Error;

pub use bench::{bench_rows, read_csv, run_bench, BenchConfig, CsvRow};
pub use count::run_count;
pub use input::gen_input;
pub use verify::{run_verify, VerifyMode, VerifyReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Exit status: 0 success, 1 oracle mismatch, 2 usage or I/O error.
pub mod exit {
    pub const OK: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const USAGE: u8 = 2;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        exit::USAGE
    }
}
