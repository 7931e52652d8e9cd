//! Internal operation-count hooks. With the `countops` feature these feed
//! the thread-local counters in [`crate::instrument`]; without it they
//! compile to nothing.

#[cfg(feature = "countops")]
#[inline]
pub(crate) fn trig(n: u64) {
    crate::instrument::record_trig(n);
}

#[cfg(feature = "countops")]
#[inline]
pub(crate) fn madd(n: u64) {
    crate::instrument::record_madd(n);
}

#[cfg(not(feature = "countops"))]
#[inline(always)]
pub(crate) fn trig(_n: u64) {}

#[cfg(not(feature = "countops"))]
#[inline(always)]
pub(crate) fn madd(_n: u64) {}
