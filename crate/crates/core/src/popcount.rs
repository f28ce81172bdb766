//! Population count algorithms under the unit-cost model.
//!
//! [`popcount_nonoblivious`] is the multiply-fold count whose loop length
//! depends only on the number of ones `b` in the input, taking
//! `O(log log b)` iterations. Three baselines are provided for comparison:
//! Wegner's lowest-bit deletion ([`popcount_wegner`], `b` iterations), the
//! block tree ([`popcount_tree`], `log2 W` iterations) and the oblivious
//! multiply-fold ([`popcount_gm_oblivious`], a fixed `O(log log W)`
//! schedule). [`popcount_reference`] is the bit-loop oracle.
//!
//! All algorithms work on a [`Word`] of width `W`; the multiply-fold ones
//! keep their product at width `2W` and read the total from the block that
//! ends at the midpoint of the product.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::masks::{mask_h, mask_m};
use crate::stats::{Meter, OpStats};
use crate::word::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PopcountError {
    #[error("width {width} must be a power of two and at least {min}")]
    UnsupportedWidth { width: usize, min: usize },
    #[error("block level {k} out of range for width {width}")]
    LevelOutOfRange { k: u32, width: usize },
    #[error("product width {got} is not twice the input width {input}")]
    ProductWidth { got: usize, input: usize },
    #[error("exit level is undefined for zero ones")]
    ZeroOnes,
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Loop state after one iteration of [`popcount_nonoblivious`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Level after the increment; `x_after` holds `2^k`-bit partial counts.
    pub k: u32,
    pub x_after: Word,
    /// Fold product, width `2W`.
    pub p_after: Word,
    /// Overflow guard evaluated on `p_after` at level `k`.
    pub guard: bool,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} x={} p={} guard={}",
            self.k, self.x_after, self.p_after, self.guard
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    pub stats: OpStats,
    pub trace: Option<Vec<TraceStep>>,
}

/// Selectable algorithms. Names parse from `ref`, `wegner`, `tree`, `gm`, `nonoblivious`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Reference,
    Wegner,
    Tree,
    GmOblivious,
    NonOblivious,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Reference,
        Algorithm::Wegner,
        Algorithm::Tree,
        Algorithm::GmOblivious,
        Algorithm::NonOblivious,
    ];

    /// Everything except the oracle.
    pub const CHECKED: [Algorithm; 4] = [
        Algorithm::Wegner,
        Algorithm::Tree,
        Algorithm::GmOblivious,
        Algorithm::NonOblivious,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Reference => "ref",
            Algorithm::Wegner => "wegner",
            Algorithm::Tree => "tree",
            Algorithm::GmOblivious => "gm",
            Algorithm::NonOblivious => "nonoblivious",
        }
    }

    pub fn run(self, x: &Word) -> Result<CountResult, PopcountError> {
        match self {
            Algorithm::Reference => Ok(reference_metered(x)),
            Algorithm::Wegner => popcount_wegner(x),
            Algorithm::Tree => popcount_tree(x),
            Algorithm::GmOblivious => popcount_gm_oblivious(x),
            Algorithm::NonOblivious => popcount_nonoblivious(x),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = PopcountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| PopcountError::UnknownAlgorithm(s.to_string()))
    }
}

/// Number of set bits, one bit at a time. Ground truth for everything else.
pub fn popcount_reference(x: &Word) -> u64 {
    (0..x.width()).filter(|&i| x.bit(i)).count() as u64
}

// The oracle charged as a plain bit loop: per bit one shift, one and, one add.
fn reference_metered(x: &Word) -> CountResult {
    let w = x.width() as u64;
    CountResult {
        count: popcount_reference(x),
        stats: OpStats {
            logical_ops: w,
            add_ops: w,
            shift_ops: w,
            iterations: w,
            ..OpStats::default()
        },
        trace: None,
    }
}

/// Wegner's method: clear the lowest one with `x & (x - 1)` until nothing is left.
pub fn popcount_wegner(x: &Word) -> Result<CountResult, PopcountError> {
    let mut meter = Meter::default();
    let one = Word::from_u64(1, x.width())?;
    let mut x = x.clone();
    let mut count = 0;
    while meter.is_nonzero(&x) {
        let lowered = meter.sub(&x, &one)?;
        x = meter.and(&x, &lowered)?;
        count += 1;
        meter.iteration();
    }
    Ok(CountResult {
        count,
        stats: meter.stats,
        trace: None,
    })
}

fn log2_width(width: usize, min: usize) -> Result<u32, PopcountError> {
    if width < min || !width.is_power_of_two() {
        return Err(PopcountError::UnsupportedWidth { width, min });
    }
    Ok(width.trailing_zeros())
}

/// Block tree: `log2 W` rounds of [`step_reduce`], after which the whole word is the count.
pub fn popcount_tree(x: &Word) -> Result<CountResult, PopcountError> {
    let levels = log2_width(x.width(), 2)?;
    let mut meter = Meter::default();
    let mut x = x.clone();
    for k in 0..levels {
        x = step_reduce_metered(&x, k, &mut meter)?;
        meter.iteration();
    }
    let count = x.to_u64().expect("tree total is at most the width");
    Ok(CountResult {
        count,
        stats: meter.stats,
        trace: None,
    })
}

/// Pairwise block addition: `(x & m[k]) + ((x >> 2^k) & m[k])`.
///
/// Turns `2^k`-bit partial counts into `2^(k+1)`-bit partial counts.
/// Requires `2^(k+1) <= W`.
pub fn step_reduce(x: &Word, k: u32) -> Result<Word, PopcountError> {
    step_reduce_metered(x, k, &mut Meter::default())
}

fn step_reduce_metered(x: &Word, k: u32, meter: &mut Meter) -> Result<Word, PopcountError> {
    let width = x.width();
    if k >= usize::BITS - 1 || (1usize << (k + 1)) > width {
        return Err(PopcountError::LevelOutOfRange { k, width });
    }
    let m = mask_m(k, width);
    let low = meter.and(x, &m)?;
    // the shift distance is the block length 2^k
    let shifted = meter.shr(x, 1 << k)?;
    let high = meter.and(&shifted, &m)?;
    Ok(meter.add(&low, &high)?)
}

/// The fold multiplier `(2·h[j] + 1) mod 2^W`: ones at every multiple of `2^j`.
pub fn fold_multiplier(j: u32, width: usize) -> Word {
    let h = mask_h(j, width);
    let one = Word::from_u64(1, width).expect("width is positive");
    h.shl(1)
        .and_then(|h2| h2.add_mod(&one))
        .expect("shift by one within a positive width")
}

/// Multiplies `x` (holding `2^j`-bit blocks) by the fold multiplier.
///
/// Block `t` of the `2W`-bit product receives the sum of all input blocks
/// `i <= t` (for `t` in the low half) as long as no block sum carries.
/// Requires `2^j <= W`.
pub fn fold_multiply(x: &Word, j: u32) -> Result<Word, PopcountError> {
    fold_multiply_metered(x, j, &mut Meter::default())
}

fn fold_multiply_metered(x: &Word, j: u32, meter: &mut Meter) -> Result<Word, PopcountError> {
    let width = x.width();
    if j >= usize::BITS || (1usize << j) > width {
        return Err(PopcountError::LevelOutOfRange { k: j, width });
    }
    Ok(meter.mul_wide(x, &fold_multiplier(j, width))?)
}

/// `(p & h[k]) != 0` with `h[k]` taken at the full width of `p`.
pub fn overflow_guard(p: &Word, k: u32) -> bool {
    overflow_guard_metered(p, k, &mut Meter::default())
}

fn overflow_guard_metered(p: &Word, k: u32, meter: &mut Meter) -> bool {
    let h = mask_h(k, p.width());
    let hit = meter.and(p, &h).expect("mask built at the width of p");
    meter.is_nonzero(&hit)
}

/// Reads the `2^k`-bit block ending at the midpoint of the `2W`-bit product.
pub fn extract_total(p: &Word, k: u32, width: usize) -> Result<u64, PopcountError> {
    extract_total_metered(p, k, width, &mut Meter::default())
}

fn extract_total_metered(
    p: &Word,
    k: u32,
    width: usize,
    meter: &mut Meter,
) -> Result<u64, PopcountError> {
    if p.width() != 2 * width {
        return Err(PopcountError::ProductWidth {
            got: p.width(),
            input: width,
        });
    }
    if k >= usize::BITS || (1usize << k) > width {
        return Err(PopcountError::LevelOutOfRange { k, width });
    }
    let block = 1usize << k;
    // shift then mask: two unit operations
    meter.stats.shift_ops += 1;
    meter.stats.logical_ops += 1;
    let field = p.extract_bits(width - block, block)?;
    Ok(field
        .to_u64()
        .expect("block total is bounded by the input width"))
}

/// The non-oblivious multiply-fold count.
///
/// Starting from `p = -x`, each iteration doubles the block length and
/// refolds, stopping as soon as no block of the product uses its top bit.
/// The number of iterations is [`exit_level`]`(b)` for `b` ones, independent
/// of `W`. Requires `W = 2^K >= 4`.
pub fn popcount_nonoblivious(x: &Word) -> Result<CountResult, PopcountError> {
    nonoblivious(x, false)
}

/// [`popcount_nonoblivious`] with a [`TraceStep`] recorded per iteration.
pub fn popcount_nonoblivious_traced(x: &Word) -> Result<CountResult, PopcountError> {
    nonoblivious(x, true)
}

fn nonoblivious(x: &Word, record: bool) -> Result<CountResult, PopcountError> {
    let width = x.width();
    log2_width(width, 4)?;
    let mut meter = Meter::default();
    let mut trace: Option<Vec<TraceStep>> = record.then(Vec::new);

    let mut k = 0u32;
    let mut x = x.clone();
    let mut p = meter.neg(&x).resize(2 * width)?;
    loop {
        let guard = overflow_guard_metered(&p, k, &mut meter);
        if let Some(last) = trace.as_mut().and_then(|t| t.last_mut()) {
            last.guard = guard;
        }
        if !guard {
            break;
        }
        x = step_reduce_metered(&x, k, &mut meter)?;
        p = fold_multiply_metered(&x, k + 1, &mut meter)?;
        k += 1;
        meter.iteration();
        if let Some(t) = trace.as_mut() {
            t.push(TraceStep {
                k,
                x_after: x.clone(),
                p_after: p.clone(),
                guard: false,
            });
        }
    }
    let count = extract_total_metered(&p, k, width, &mut meter)?;
    Ok(CountResult {
        count,
        stats: meter.stats,
        trace,
    })
}

/// Fixed level of the oblivious schedule: `min { k : 2^(2^k) > W }`.
pub fn oblivious_level(width: usize) -> u32 {
    (0u32..)
        .find(|&k| {
            let bits = 1u64 << k;
            bits >= usize::BITS as u64 || (1usize << bits) > width
        })
        .expect("some level exceeds any width")
}

/// Oblivious multiply-fold: reduce to `2^k*`-bit blocks, fold once, extract.
///
/// Always takes [`oblivious_level`]`(W)` iterations. Requires `W = 2^K >= 4`.
pub fn popcount_gm_oblivious(x: &Word) -> Result<CountResult, PopcountError> {
    let width = x.width();
    log2_width(width, 4)?;
    let level = oblivious_level(width);
    let mut meter = Meter::default();
    let mut x = x.clone();
    for k in 0..level {
        x = step_reduce_metered(&x, k, &mut meter)?;
        meter.iteration();
    }
    let p = fold_multiply_metered(&x, level, &mut meter)?;
    let count = extract_total_metered(&p, level, width, &mut meter)?;
    Ok(CountResult {
        count,
        stats: meter.stats,
        trace: None,
    })
}

/// Predicted iteration count of [`popcount_nonoblivious`] for an input with `b >= 1` ones:
/// `min { k >= 1 : b < 2^(2^k - 1) }`.
pub fn exit_level(b: u64) -> Result<u32, PopcountError> {
    if b == 0 {
        return Err(PopcountError::ZeroOnes);
    }
    Ok((1u32..)
        .find(|&k| {
            let exp = (1u64 << k) - 1;
            exp >= 64 || b < (1u64 << exp)
        })
        .expect("b fits in 64 bits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: u64, width: usize) -> Word {
        Word::from_u64(v, width).unwrap()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(popcount_reference(&w(0, 8)), 0);
        assert_eq!(popcount_reference(&w(0, 300)), 0);
        assert_eq!(popcount_reference(&w(0xFF, 8)), 8);
        assert_eq!(popcount_reference(&w(0xDEADBEEF, 32)), 24);
    }

    #[test]
    fn wegner_examples() {
        let r = popcount_wegner(&w(0, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (0, 0));
        let r = popcount_wegner(&w(0xFF, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (8, 8));
        let r = popcount_wegner(&w(0x50, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (2, 2));
        // compare per test (b+1), sub and and per deletion
        assert_eq!(r.stats.total_unit_ops(), 3 + 2 * 2);
    }

    #[test]
    fn tree_examples() {
        let r = popcount_tree(&w(0xFF, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (8, 3));
        let r = popcount_tree(&w(0, 16)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (0, 4));
        let r = popcount_tree(&w(0x8000, 16)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (1, 4));
        assert_eq!(r.stats.total_unit_ops(), 4 * 4);
        assert_eq!(
            popcount_tree(&w(0, 12)),
            Err(PopcountError::UnsupportedWidth { width: 12, min: 2 })
        );
    }

    #[test]
    fn step_reduce_examples() {
        assert_eq!(step_reduce(&w(0xFF, 8), 0).unwrap(), w(0xAA, 8));
        // nibbles of 0xAA each hold 2+0 and 2+0 in their 2-bit halves: 0b10_10 -> 0b0100
        assert_eq!(step_reduce(&w(0xAA, 8), 1).unwrap(), w(0x44, 8));
        for (k, width) in [(0, 8), (1, 8), (2, 8), (3, 16)] {
            assert_eq!(step_reduce(&w(0, width), k).unwrap(), w(0, width));
        }
        assert_eq!(
            step_reduce(&w(0xFF, 8), 3),
            Err(PopcountError::LevelOutOfRange { k: 3, width: 8 })
        );
    }

    #[test]
    fn fold_multiply_examples() {
        assert_eq!(fold_multiplier(2, 8), w(0x11, 8));
        assert_eq!(fold_multiplier(1, 8), w(0x55, 8));
        assert_eq!(fold_multiplier(3, 8), w(0x01, 8));
        assert_eq!(fold_multiply(&w(0x11, 8), 2).unwrap(), w(0x0121, 16));
        assert_eq!(fold_multiply(&w(0xAA, 8), 1).unwrap(), w(0x3872, 16));
        assert_eq!(fold_multiply(&w(0, 8), 3).unwrap(), w(0, 16));
        assert!(fold_multiply(&w(0, 8), 4).is_err());
    }

    #[test]
    fn overflow_guard_examples() {
        assert!(overflow_guard(&w(0x3872, 16), 1));
        assert!(!overflow_guard(&w(0x0121, 16), 2));
        for k in 0..5 {
            assert!(!overflow_guard(&w(0, 16), k));
        }
    }

    #[test]
    fn extract_total_examples() {
        assert_eq!(extract_total(&w(0x0121, 16), 2, 8).unwrap(), 2);
        assert_eq!(extract_total(&w(0x0008, 16), 3, 8).unwrap(), 8);
        assert_eq!(extract_total(&w(0, 16), 1, 8).unwrap(), 0);
        assert_eq!(
            extract_total(&w(0, 8), 1, 8),
            Err(PopcountError::ProductWidth { got: 8, input: 8 })
        );
        assert!(extract_total(&w(0, 16), 4, 8).is_err());
    }

    #[test]
    fn nonoblivious_examples() {
        let r = popcount_nonoblivious_traced(&w(0x11, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (2, 2));
        let trace = r.trace.unwrap();
        assert_eq!(trace.last().unwrap().p_after, w(0x0121, 16));

        let r = popcount_nonoblivious(&w(0, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (0, 0));
        assert!(r.trace.is_none());

        let r = popcount_nonoblivious(&w(0xFFFF, 16)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (16, 3));

        for width in [2usize, 6, 12] {
            assert!(matches!(
                popcount_nonoblivious(&w(1, width)),
                Err(PopcountError::UnsupportedWidth { .. })
            ));
        }
    }

    #[test]
    fn nonoblivious_costs() {
        // neg, then per iteration: guard (and, compare), reduce (and, shift, and, add), mul;
        // a final guard and the extraction (shift, and)
        let r = popcount_nonoblivious(&w(0x11, 8)).unwrap();
        assert_eq!(r.stats.total_unit_ops(), 1 + 2 * (2 + 4 + 1) + 2 + 2);
        assert_eq!(r.stats.mul_ops, 2);
        let zero = popcount_nonoblivious(&w(0, 8)).unwrap();
        assert_eq!(zero.stats.total_unit_ops(), 1 + 2 + 2);
    }

    #[test]
    fn gm_examples() {
        let r = popcount_gm_oblivious(&w(0xFF, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (8, 2));
        let r = popcount_gm_oblivious(&w(0, 64)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (0, 3));
        let r = popcount_gm_oblivious(&w(1, 8)).unwrap();
        assert_eq!((r.count, r.stats.iterations), (1, 2));
        assert!(popcount_gm_oblivious(&w(1, 2)).is_err());
    }

    #[test]
    fn oblivious_levels() {
        assert_eq!(oblivious_level(4), 2);
        assert_eq!(oblivious_level(8), 2);
        assert_eq!(oblivious_level(16), 3);
        assert_eq!(oblivious_level(64), 3);
        assert_eq!(oblivious_level(256), 4);
        assert_eq!(oblivious_level(65536), 5);
    }

    #[test]
    fn exit_level_examples() {
        assert_eq!(exit_level(1).unwrap(), 1);
        assert_eq!(exit_level(3).unwrap(), 2);
        assert_eq!(exit_level(200).unwrap(), 4);
        assert_eq!(exit_level(0), Err(PopcountError::ZeroOnes));
        assert_eq!(exit_level(u64::MAX).unwrap(), 7);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("hakmem".parse::<Algorithm>().is_err());
    }
}
