//! Unit-cost operation accounting.

use std::fmt;
use std::ops::AddAssign;

use crate::word::{Word, WordError};

/// Counts of word-level primitives charged under the unit-cost model.
///
/// Every primitive costs one unit regardless of width; mask constants are free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpStats {
    /// and / or / xor
    pub logical_ops: u64,
    /// add, subtract, negate
    pub add_ops: u64,
    pub shift_ops: u64,
    pub mul_ops: u64,
    /// comparisons against zero
    pub compare_ops: u64,
    pub iterations: u64,
}

impl OpStats {
    pub fn total_unit_ops(&self) -> u64 {
        self.logical_ops + self.add_ops + self.shift_ops + self.mul_ops + self.compare_ops
    }
}

impl AddAssign for OpStats {
    fn add_assign(&mut self, rhs: Self) {
        self.logical_ops += rhs.logical_ops;
        self.add_ops += rhs.add_ops;
        self.shift_ops += rhs.shift_ops;
        self.mul_ops += rhs.mul_ops;
        self.compare_ops += rhs.compare_ops;
        self.iterations += rhs.iterations;
    }
}

impl fmt::Display for OpStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "logical={} add={} shift={} mul={} compare={} iterations={} total={}",
            self.logical_ops,
            self.add_ops,
            self.shift_ops,
            self.mul_ops,
            self.compare_ops,
            self.iterations,
            self.total_unit_ops()
        )
    }
}

/// Word primitives that charge their cost to a per-call [`OpStats`].
#[derive(Debug, Default)]
pub(crate) struct Meter {
    pub(crate) stats: OpStats,
}

impl Meter {
    pub(crate) fn and(&mut self, a: &Word, b: &Word) -> Result<Word, WordError> {
        self.stats.logical_ops += 1;
        a.bitand(b)
    }

    pub(crate) fn add(&mut self, a: &Word, b: &Word) -> Result<Word, WordError> {
        self.stats.add_ops += 1;
        a.add_mod(b)
    }

    pub(crate) fn sub(&mut self, a: &Word, b: &Word) -> Result<Word, WordError> {
        self.stats.add_ops += 1;
        a.sub_mod(b)
    }

    pub(crate) fn neg(&mut self, a: &Word) -> Word {
        self.stats.add_ops += 1;
        a.neg_mod()
    }

    pub(crate) fn shr(&mut self, a: &Word, s: usize) -> Result<Word, WordError> {
        self.stats.shift_ops += 1;
        a.shr(s)
    }

    pub(crate) fn mul_wide(&mut self, a: &Word, b: &Word) -> Result<Word, WordError> {
        self.stats.mul_ops += 1;
        a.mul_wide(b)
    }

    pub(crate) fn is_nonzero(&mut self, a: &Word) -> bool {
        self.stats.compare_ops += 1;
        !a.is_zero()
    }

    pub(crate) fn iteration(&mut self) {
        self.stats.iterations += 1;
    }
}
