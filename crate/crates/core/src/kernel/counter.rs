//! Rational-operation accounting.
//!
//! Every arithmetic operation on [`Rational`](super::Rational) bumps a
//! thread-local tally. A computation is measured by taking the difference of
//! two snapshots, so nested measurements compose and nothing is shared
//! across threads.

use std::cell::Cell;
use std::ops::{Add, AddAssign, Sub};

/// Counts of rational operations and a bit-length cost proxy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpCounter {
    pub rational_ops: u64,
    /// Sum of operand bit lengths over all counted operations.
    pub bit_ops_proxy: u64,
}

thread_local! {
    static TALLY: Cell<OpCounter> = const { Cell::new(OpCounter { rational_ops: 0, bit_ops_proxy: 0 }) };
}

pub(crate) fn record(bits: u64) {
    TALLY.with(|t| {
        let mut c = t.get();
        c.rational_ops += 1;
        c.bit_ops_proxy = c.bit_ops_proxy.saturating_add(bits);
        t.set(c);
    });
}

/// Current running totals for this thread.
pub fn snapshot() -> OpCounter {
    TALLY.with(|t| t.get())
}

/// Runs `f` and returns its result with the operations it performed.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, OpCounter) {
    let before = snapshot();
    let out = f();
    (out, snapshot() - before)
}

impl Add for OpCounter {
    type Output = OpCounter;
    fn add(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            rational_ops: self.rational_ops + rhs.rational_ops,
            bit_ops_proxy: self.bit_ops_proxy.saturating_add(rhs.bit_ops_proxy),
        }
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: OpCounter) {
        *self = *self + rhs;
    }
}

impl Sub for OpCounter {
    type Output = OpCounter;
    fn sub(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            rational_ops: self.rational_ops - rhs.rational_ops,
            bit_ops_proxy: self.bit_ops_proxy - rhs.bit_ops_proxy,
        }
    }
}
