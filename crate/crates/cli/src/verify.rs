//! Differential verification of every algorithm against the bit-loop oracle.

use std::fmt;

use popcount_core::parallel::map_reduce;
use popcount_core::{exit_level, popcount_reference, Algorithm, Word};

use crate::input::{gen_input, mix_seed, uniform_word};
use crate::CliError;

/// Largest width accepted for exhaustive runs.
pub const MAX_EXHAUSTIVE_WIDTH: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Count {
        algo: Algorithm,
        expected: u64,
        got: Option<u64>,
    },
    IterationLaw {
        expected: u64,
        got: u64,
    },
    WegnerIterations {
        expected: u64,
        got: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub input: Word,
    pub failure: Failure,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} ", self.input)?;
        match &self.failure {
            Failure::Count {
                algo,
                expected,
                got: Some(got),
            } => write!(f, "algo={algo} expected={expected} got={got}"),
            Failure::Count {
                algo,
                expected,
                got: None,
            } => write!(f, "algo={algo} expected={expected} got=error"),
            Failure::IterationLaw { expected, got } => {
                write!(f, "iteration law expected={expected} got={got}")
            }
            Failure::WegnerIterations { expected, got } => {
                write!(f, "wegner iterations expected={expected} got={got}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub width: usize,
    pub total: u64,
    /// Inputs on which every algorithm matched the oracle.
    pub counts_ok: u64,
    pub law_ok: bool,
    /// Lowest-index failing input.
    pub first_failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} values, {} algorithms, iteration law: {}",
            self.counts_ok,
            self.total,
            Algorithm::CHECKED.len(),
            if self.law_ok { "pass" } else { "fail" }
        )
    }
}

#[derive(Debug, Default)]
struct Tally {
    total: u64,
    counts_ok: u64,
    law_ok: bool,
    first: Option<Counterexample>,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        let first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        Tally {
            total: self.total + other.total,
            counts_ok: self.counts_ok + other.counts_ok,
            law_ok: self.law_ok && other.law_ok,
            first,
        }
    }
}

/// Checks one input: oracle agreement for all algorithms, the iteration law
/// for the non-oblivious count, and Wegner's one-iteration-per-one.
fn check_input(index: u64, x: Word) -> Tally {
    let expected = popcount_reference(&x);
    let mut failures = Vec::new();
    let mut counts_ok = true;
    let mut law_ok = true;
    for algo in Algorithm::CHECKED {
        let result = algo.run(&x);
        let got = result.as_ref().ok().map(|r| r.count);
        if got != Some(expected) {
            counts_ok = false;
            failures.push(Failure::Count {
                algo,
                expected,
                got,
            });
            continue;
        }
        let iterations = result.expect("count matched").stats.iterations;
        match algo {
            Algorithm::NonOblivious => {
                let predicted = exit_level(expected).map_or(0, u64::from);
                if iterations != predicted {
                    law_ok = false;
                    failures.push(Failure::IterationLaw {
                        expected: predicted,
                        got: iterations,
                    });
                }
            }
            Algorithm::Wegner if iterations != expected => {
                counts_ok = false;
                failures.push(Failure::WegnerIterations {
                    expected,
                    got: iterations,
                });
            }
            _ => {}
        }
    }
    Tally {
        total: 1,
        counts_ok: counts_ok as u64,
        law_ok,
        first: failures.into_iter().next().map(|failure| Counterexample {
            index,
            input: x,
            failure,
        }),
    }
}

/// The `index`-th random verification input: even indices are uniform words,
/// odd indices have a uniformly drawn number of ones so sparse inputs are covered.
pub fn random_input(width: usize, seed: u64, index: u64) -> Word {
    let s = mix_seed(&[seed, width as u64, index]);
    if index.is_multiple_of(2) {
        uniform_word(width, s)
    } else {
        let ones = (mix_seed(&[s]) % (width as u64 + 1)) as usize;
        gen_input(width, ones, s).expect("ones bounded by width")
    }
}

pub fn validate_width(width: usize) -> Result<(), CliError> {
    if width < 4 || !width.is_power_of_two() {
        return Err(CliError::Usage(format!(
            "width {width} must be a power of two >= 4"
        )));
    }
    Ok(())
}

pub fn run_verify(width: usize, mode: VerifyMode) -> Result<VerifyReport, CliError> {
    validate_width(width)?;
    let identity = || Tally {
        law_ok: true,
        ..Tally::default()
    };
    let tally = match mode {
        VerifyMode::Exhaustive => {
            if width > MAX_EXHAUSTIVE_WIDTH {
                return Err(CliError::Usage(format!(
                    "exhaustive verification needs width <= {MAX_EXHAUSTIVE_WIDTH}, got {width}"
                )));
            }
            map_reduce(
                0..1u64 << width,
                identity,
                |v| check_input(v, Word::from_u64(v, width).expect("v < 2^width")),
                Tally::merge,
            )
        }
        VerifyMode::Random { samples, seed } => map_reduce(
            0..samples,
            identity,
            |i| check_input(i, random_input(width, seed, i)),
            Tally::merge,
        ),
    };
    Ok(VerifyReport {
        width,
        total: tally.total,
        counts_ok: tally.counts_ok,
        law_ok: tally.law_ok,
        first_failure: tally.first,
    })
}
