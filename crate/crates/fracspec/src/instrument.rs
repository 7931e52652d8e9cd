//! Thread-local operation counters, compiled only with the `countops`
//! feature.
//!
//! The spectrum and oracle paths report how many trigonometric evaluations
//! and multiply-add operations they perform. Counters are per thread:
//! reset and read them on the thread that runs the instrumented
//! computation. Work farmed out to other threads (for example a parallel
//! modulus scan) is counted on the worker threads, not the caller's.

use std::cell::Cell;

thread_local! {
    static TRIG_EVALS: Cell<u64> = const { Cell::new(0) };
    static MULTIPLY_ADDS: Cell<u64> = const { Cell::new(0) };
}

/// Snapshot of the current thread's operation counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounts {
    /// Sine/cosine evaluations.
    pub trig_evals: u64,
    /// Multiply-accumulate operations (one per accumulated product term).
    pub multiply_adds: u64,
}

/// Zeroes the current thread's counters.
pub fn reset() {
    TRIG_EVALS.with(|c| c.set(0));
    MULTIPLY_ADDS.with(|c| c.set(0));
}

/// Reads the current thread's counters.
pub fn snapshot() -> OpCounts {
    OpCounts {
        trig_evals: TRIG_EVALS.with(Cell::get),
        multiply_adds: MULTIPLY_ADDS.with(Cell::get),
    }
}

pub(crate) fn record_trig(n: u64) {
    TRIG_EVALS.with(|c| c.set(c.get() + n));
}

pub(crate) fn record_madd(n: u64) {
    MULTIPLY_ADDS.with(|c| c.set(c.get() + n));
}
