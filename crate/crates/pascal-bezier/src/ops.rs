//! Arithmetic operation accounting.
//!
//! The cost comparisons against de Casteljau's algorithm hinge on operation
//! counts, so the hot kernels tally what they execute. Counts are
//! accumulated in bulk (once per sweep or FFT stage, from the actual loop
//! trip counts), which keeps the overhead far below the arithmetic itself.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

/// Tally of floating-point operations performed by an evaluation path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    pub adds: u64,
    pub muls: u64,
    pub divs: u64,
}

impl OpCount {
    pub const ZERO: OpCount = OpCount {
        adds: 0,
        muls: 0,
        divs: 0,
    };

    /// Sum of all counted operations.
    pub fn total(&self) -> u64 {
        self.adds + self.muls + self.divs
    }
}

impl Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            adds: self.adds + rhs.adds,
            muls: self.muls + rhs.muls,
            divs: self.divs + rhs.divs,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

impl Sum for OpCount {
    fn sum<I: Iterator<Item = OpCount>>(iter: I) -> OpCount {
        iter.fold(OpCount::ZERO, |acc, c| acc + c)
    }
}
