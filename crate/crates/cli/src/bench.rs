//! Seeded benchmark sweeps emitting one CSV row per (algorithm, width, ones) cell.
//!
//! The measured quantity is the unit-cost operation count, not wall-clock time.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use popcount_core::parallel::map_reduce;
use popcount_core::{popcount_reference, Algorithm};
use serde::{Deserialize, Serialize};

use crate::input::{gen_input, mix_seed, GENERATOR};
use crate::verify::validate_width;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub widths: Vec<usize>,
    pub ones_values: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub algos: Vec<Algorithm>,
    /// `-` writes to stdout.
    pub output_path: PathBuf,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.widths.is_empty() || self.ones_values.is_empty() || self.algos.is_empty() {
            return Err(CliError::Usage(
                "widths, ones and algos must be non-empty".into(),
            ));
        }
        if self.trials == 0 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        for &w in &self.widths {
            validate_width(w)?;
        }
        let min_width = *self.widths.iter().min().expect("non-empty");
        if let Some(&ones) = self.ones_values.iter().find(|&&b| b > min_width) {
            return Err(CliError::Usage(format!(
                "ones value {ones} exceeds the smallest width {min_width}"
            )));
        }
        Ok(())
    }
}

/// One CSV row; field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub algo: String,
    pub width: usize,
    pub ones: usize,
    pub trials: u64,
    pub mean_iterations: f64,
    pub max_iterations: u64,
    pub mean_unit_ops: f64,
    pub max_unit_ops: u64,
    pub all_correct: bool,
}

#[derive(Debug, Clone, Copy, Default)]
struct CellTally {
    trials: u64,
    sum_iterations: u64,
    max_iterations: u64,
    sum_unit_ops: u64,
    max_unit_ops: u64,
    mismatches: u64,
}

impl CellTally {
    fn merge(self, o: CellTally) -> CellTally {
        CellTally {
            trials: self.trials + o.trials,
            sum_iterations: self.sum_iterations + o.sum_iterations,
            max_iterations: self.max_iterations.max(o.max_iterations),
            sum_unit_ops: self.sum_unit_ops + o.sum_unit_ops,
            max_unit_ops: self.max_unit_ops.max(o.max_unit_ops),
            mismatches: self.mismatches + o.mismatches,
        }
    }
}

/// Seed of trial `trial` in the `(width, ones)` cell. Shared across algorithms,
/// so every algorithm sees the same inputs.
pub fn trial_seed(seed: u64, width: usize, ones: usize, trial: u64) -> u64 {
    mix_seed(&[seed, width as u64, ones as u64, trial])
}

pub fn run_cell(algo: Algorithm, width: usize, ones: usize, trials: u64, seed: u64) -> CsvRow {
    let tally = map_reduce(
        0..trials,
        CellTally::default,
        |t| {
            let x =
                gen_input(width, ones, trial_seed(seed, width, ones, t)).expect("config validated");
            match algo.run(&x) {
                Ok(r) => CellTally {
                    trials: 1,
                    sum_iterations: r.stats.iterations,
                    max_iterations: r.stats.iterations,
                    sum_unit_ops: r.stats.total_unit_ops(),
                    max_unit_ops: r.stats.total_unit_ops(),
                    mismatches: (r.count != popcount_reference(&x)) as u64,
                },
                Err(_) => CellTally {
                    trials: 1,
                    mismatches: 1,
                    ..CellTally::default()
                },
            }
        },
        CellTally::merge,
    );
    CsvRow {
        algo: algo.name().to_string(),
        width,
        ones,
        trials,
        mean_iterations: tally.sum_iterations as f64 / trials as f64,
        max_iterations: tally.max_iterations,
        mean_unit_ops: tally.sum_unit_ops as f64 / trials as f64,
        max_unit_ops: tally.max_unit_ops,
        all_correct: tally.mismatches == 0,
    }
}

/// Runs every cell in `algo, width, ones` order.
pub fn bench_rows(cfg: &BenchConfig) -> Result<Vec<CsvRow>, CliError> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &algo in &cfg.algos {
        for &width in &cfg.widths {
            for &ones in &cfg.ones_values {
                rows.push(run_cell(algo, width, ones, cfg.trials, cfg.seed));
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(out: W, cfg: &BenchConfig, rows: &[CsvRow]) -> Result<(), CliError> {
    let mut out = out;
    writeln!(
        out,
        "# popcount bench: generator={GENERATOR} seed={} trials={}",
        cfg.seed, cfg.trials
    )?;
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads rows back, skipping `#` comment lines.
pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<CsvRow>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    reader
        .deserialize()
        .collect::<Result<Vec<CsvRow>, _>>()
        .map_err(CliError::from)
}

/// Runs the sweep and writes the CSV. Returns the rows; callers map any
/// `all_correct == false` row to a failing exit.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<CsvRow>, CliError> {
    cfg.validate()?;
    let sink: Box<dyn Write> = if cfg.output_path.as_os_str() == "-" {
        Box::new(io::stdout().lock())
    } else {
        Box::new(File::create(&cfg.output_path).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", cfg.output_path.display()))
        })?)
    };
    let rows = bench_rows(cfg)?;
    write_csv(sink, cfg, &rows)?;
    Ok(rows)
}
