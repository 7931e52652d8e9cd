//! Benchmark harness: quantifies what the folding method saves over
//! evaluating a naive DFT at each frequency of the same `(l, k)` set.
//!
//! Both methods compute every `FPS(l/k)` for `k = 1..=floor(l/2)` on the
//! same padded input and must agree on a checksum before any timing is
//! reported — a benchmark of wrong answers is meaningless. Operation
//! counts come from the `countops` instrumentation of `fracspec`; the
//! counting pass runs separately from the timed passes so timings stay
//! clean. Runs are single-threaded and in a fixed order.

use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use fracspec::instrument;
use fracspec::oracle;
use fracspec::spectra::{self, CosineTable};
use fracspec::{pad_to_multiple, RealSequence};

/// Relative tolerance for the two methods' checksums.
pub const CHECKSUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("repeats must be at least 3, got {0}")]
    TooFewRepeats(usize),

    #[error("no sequence lengths or no moduli given")]
    EmptyInput,

    #[error("checksum mismatch at m = {m}, l = {l}: naive {naive}, folded {folded}")]
    ChecksumMismatch {
        m: usize,
        l: usize,
        naive: f64,
        folded: f64,
    },

    #[error(transparent)]
    Spectra(#[from] fracspec::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Literal DFT summation at each frequency k*n of the padded input.
    NaiveDft,
    /// Fold, shift sums, cosine table, then one combination pass per k.
    Folded,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::NaiveDft => write!(f, "naive-dft"),
            Method::Folded => write!(f, "folded"),
        }
    }
}

/// One method's measured run at one `(m, l)` configuration.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub m: usize,
    pub l: usize,
    pub method: Method,
    pub trig_evals: u64,
    pub multiply_adds: u64,
    pub ns_median: u64,
    pub ns_min: u64,
    pub ns_max: u64,
    /// Sum of all FPS(l/k) the method produced.
    pub checksum: f64,
}

/// Deterministic pseudo-random input for a given length, uniform in
/// [-10, 10].
pub fn bench_input(m: usize) -> RealSequence {
    let mut rng = StdRng::seed_from_u64(0xbe9c_0000 ^ m as u64);
    RealSequence::new((0..m).map(|_| rng.gen_range(-10.0..10.0)).collect())
        .expect("generated samples are finite")
}

fn folded_run(padded: &RealSequence, l: usize) -> Result<f64, fracspec::Error> {
    let y = spectra::fold(padded, l)?;
    let sums = spectra::shift_sums(&y);
    // A fresh table per run: building it is part of the method's cost.
    let table = CosineTable::new(l)?;
    let mut checksum = spectra::fps_integer(&sums, &table)?;
    for k in 2..=l / 2 {
        checksum += spectra::fps_fractional(&sums, &table, k)?;
    }
    Ok(checksum)
}

fn naive_run(padded: &RealSequence, l: usize) -> Result<f64, fracspec::Error> {
    let n = padded.len() / l;
    let mut checksum = 0.0;
    for k in 1..=l / 2 {
        checksum += oracle::naive_fps(padded, k * n)?;
    }
    Ok(checksum)
}

fn measure(
    run: impl Fn() -> Result<f64, fracspec::Error>,
    repeats: usize,
) -> Result<(f64, instrument::OpCounts, u64, u64, u64), BenchError> {
    // Counting pass, untimed.
    instrument::reset();
    let checksum = run()?;
    let counts = instrument::snapshot();

    let mut timings = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let started = Instant::now();
        let _ = run()?;
        timings.push(started.elapsed().as_nanos() as u64);
    }
    timings.sort_unstable();
    let mid = timings.len() / 2;
    let median = if timings.len() % 2 == 1 {
        timings[mid]
    } else {
        (timings[mid - 1] + timings[mid]) / 2
    };
    Ok((
        checksum,
        counts,
        median,
        timings[0],
        timings[timings.len() - 1],
    ))
}

/// Runs both methods for every `(m, l)` pair, in order. Aborts on a
/// checksum mismatch.
pub fn run_bench(
    ms: &[usize],
    ls: &[usize],
    repeats: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    if repeats < 3 {
        return Err(BenchError::TooFewRepeats(repeats));
    }
    if ms.is_empty() || ls.is_empty() {
        return Err(BenchError::EmptyInput);
    }
    let mut records = Vec::with_capacity(ms.len() * ls.len() * 2);
    for &m in ms {
        let x = bench_input(m);
        for &l in ls {
            let padded = pad_to_multiple(&x, l)?;

            let (naive_sum, naive_counts, naive_median, naive_min, naive_max) =
                measure(|| naive_run(&padded, l), repeats)?;
            let (folded_sum, folded_counts, folded_median, folded_min, folded_max) =
                measure(|| folded_run(&padded, l), repeats)?;

            let scale = naive_sum.abs().max(1.0);
            if (naive_sum - folded_sum).abs() > CHECKSUM_TOLERANCE * scale {
                return Err(BenchError::ChecksumMismatch {
                    m,
                    l,
                    naive: naive_sum,
                    folded: folded_sum,
                });
            }

            records.push(BenchRecord {
                m,
                l,
                method: Method::NaiveDft,
                trig_evals: naive_counts.trig_evals,
                multiply_adds: naive_counts.multiply_adds,
                ns_median: naive_median,
                ns_min: naive_min,
                ns_max: naive_max,
                checksum: naive_sum,
            });
            records.push(BenchRecord {
                m,
                l,
                method: Method::Folded,
                trig_evals: folded_counts.trig_evals,
                multiply_adds: folded_counts.multiply_adds,
                ns_median: folded_median,
                ns_min: folded_min,
                ns_max: folded_max,
                checksum: folded_sum,
            });
        }
    }
    Ok(records)
}

/// CSV with columns `m,l,method,trig_count,madd_count,ns_median,checksum`.
pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "m,l,method,trig_count,madd_count,ns_median,checksum")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.m, r.l, r.method, r.trig_evals, r.multiply_adds, r.ns_median, r.checksum
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_too_few_repeats() {
        assert!(matches!(
            run_bench(&[100], &[6], 2),
            Err(BenchError::TooFewRepeats(2))
        ));
    }

    #[test]
    fn rejects_empty_lists() {
        assert!(matches!(
            run_bench(&[], &[6], 3),
            Err(BenchError::EmptyInput)
        ));
        assert!(matches!(
            run_bench(&[100], &[], 3),
            Err(BenchError::EmptyInput)
        ));
    }

    #[test]
    fn records_come_in_method_pairs_with_matching_checksums() {
        let records = run_bench(&[240, 600], &[6, 9], 3).unwrap();
        assert_eq!(records.len(), 8);
        for pair in records.chunks(2) {
            assert_eq!(pair[0].method, Method::NaiveDft);
            assert_eq!(pair[1].method, Method::Folded);
            assert_eq!(pair[0].m, pair[1].m);
            assert_eq!(pair[0].l, pair[1].l);
            let scale = pair[0].checksum.abs().max(1.0);
            assert!((pair[0].checksum - pair[1].checksum).abs() <= CHECKSUM_TOLERANCE * scale);
        }
    }

    #[test]
    fn identity_fold_boundary_is_recorded() {
        let records = run_bench(&[36], &[36], 3).unwrap();
        assert_eq!(records.len(), 2);
        let folded = &records[1];
        assert_eq!(folded.method, Method::Folded);
        // floor(36/2) + 1 cosines regardless of the degenerate fold.
        assert_eq!(folded.trig_evals, 19);
    }

    #[test]
    fn csv_has_contract_columns() {
        let records = run_bench(&[120], &[4], 3).unwrap();
        let mut buffer = Vec::new();
        write_csv(&records, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("m,l,method,trig_count,madd_count,ns_median,checksum")
        );
        let first = lines.next().unwrap();
        assert!(first.starts_with("120,4,naive-dft,"));
        assert_eq!(first.split(',').count(), 7);
    }
}
