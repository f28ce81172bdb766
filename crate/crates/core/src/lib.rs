//! Population count over fixed-width words under the unit-cost RAM model.
//!
//! The crate provides exact arbitrary-width [`Word`]s, the [`masks`]
//! families `m[k]` and `h[k]`, and instrumented popcount algorithms in
//! [`popcount`], including the non-oblivious multiply-fold count whose
//! iteration count grows as `O(log log b)` in the number of ones `b`.
//!
//! ```
//! use popcount_core::{popcount_nonoblivious, Word};
//!
//! let x = Word::from_hex("0x11", 8).unwrap();
//! let r = popcount_nonoblivious(&x).unwrap();
//! assert_eq!((r.count, r.stats.iterations), (2, 2));
//! ```

pub mod masks;
pub mod parallel;
pub mod popcount;
pub mod stats;
pub mod word;

pub use masks::{mask_h, mask_m, pow2};
pub use popcount::{
    exit_level, extract_total, fold_multiplier, fold_multiply, oblivious_level, overflow_guard,
    popcount_gm_oblivious, popcount_nonoblivious, popcount_nonoblivious_traced, popcount_reference,
    popcount_tree, popcount_wegner, step_reduce, Algorithm, CountResult, PopcountError, TraceStep,
};
pub use stats::OpStats;
pub use word::{Word, WordError};
