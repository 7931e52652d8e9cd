//! Power spectra at an integer period and its associated fractional
//! periods, computed from the congruence-folded form of the signal.
//!
//! For a modulus `l` the pipeline is: pad the signal with trailing zeros
//! to a multiple of `l`, fold it into the length-`l` congruence sequence
//! (samples with indices congruent mod `l` are summed), take circular
//! self-shift sums of the fold, and combine those with a table of
//! `cos(2*pi*q/l)` values. One table of `floor(l/2) + 1` cosines serves
//! every frequency index `k`: the coefficient needed at lag `q` is the
//! table entry at `t = min(p, l - p)` with `p = k*q mod l`, so computing
//! the whole family `FPS(l/k)`, `k = 1..=floor(l/2)`, performs no further
//! trigonometric work after the table is built.
//!
//! Reported powers are unnormalized squared DFT magnitudes of the padded
//! signal; nothing is divided by the sequence length.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::count;
use crate::error::{Error, Result};
use crate::sequence::{pad_to_multiple, RealSequence};

/// Rounding floor for clamping squared magnitudes: values in
/// `[-POWER_CLAMP_RELATIVE * z0, 0)` are reported as zero, anything more
/// negative is an internal-consistency error (`z0` is the fold's energy).
pub const POWER_CLAMP_RELATIVE: f64 = 1e-9;

/// The length-`l` sequence whose entry `t` is the sum of all samples with
/// index congruent to `t` modulo `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct CongruenceSequence {
    values: Vec<f64>,
    modulus: usize,
    folds: usize,
    source_length: usize,
}

impl CongruenceSequence {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Number of length-`l` blocks summed into the fold.
    pub fn folds(&self) -> usize {
        self.folds
    }

    /// Length of the (padded) sequence the fold was built from.
    pub fn source_length(&self) -> usize {
        self.source_length
    }
}

/// Folds `x` into its congruence sequence for modulus `l`. The caller must
/// have padded `x` so that `l` divides its length (see
/// [`pad_to_multiple`]).
pub fn fold(x: &RealSequence, l: usize) -> Result<CongruenceSequence> {
    if l < 2 {
        return Err(Error::ModulusTooSmall(l));
    }
    let m = x.len();
    if !m.is_multiple_of(l) {
        return Err(Error::UnalignedFold {
            modulus: l,
            length: m,
        });
    }
    let mut values = vec![0.0; l];
    for block in x.samples().chunks_exact(l) {
        for (acc, &sample) in values.iter_mut().zip(block) {
            *acc += sample;
        }
    }
    count::madd(m as u64);
    Ok(CongruenceSequence {
        values,
        modulus: l,
        folds: m / l,
        source_length: m,
    })
}

/// Circular self-shift sums of a congruence sequence.
///
/// `lag(q)` is the circular sum over `t` of `y[t] * y[(t + q) mod l]` for
/// `q = 0..=floor(l/2)`. For even `l` the extra `half_sum` holds the
/// non-circular half-lag sum over `t < l/2` only; the circular lag at
/// `l/2` counts every product twice, so `lag(l/2) == 2 * half_sum` up to
/// rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSums {
    modulus: usize,
    z: Vec<f64>,
    half_sum: Option<f64>,
}

impl ShiftSums {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// All circular lags `q = 0..=floor(l/2)`.
    pub fn lags(&self) -> &[f64] {
        &self.z
    }

    pub fn lag(&self, q: usize) -> f64 {
        self.z[q]
    }

    /// Non-circular half-lag sum; present exactly when the modulus is even.
    pub fn half_sum(&self) -> Option<f64> {
        self.half_sum
    }
}

/// Computes the circular self-shift sums of `y`, plus the non-circular
/// half-lag sum when the modulus is even.
pub fn shift_sums(y: &CongruenceSequence) -> ShiftSums {
    let l = y.modulus;
    let values = y.values();
    let half = l / 2;
    let mut z = Vec::with_capacity(half + 1);
    for q in 0..=half {
        let mut acc = 0.0;
        for t in 0..l {
            let u = t + q;
            let u = if u >= l { u - l } else { u };
            acc += values[t] * values[u];
        }
        z.push(acc);
    }
    let half_sum = l
        .is_multiple_of(2)
        .then(|| (0..half).map(|t| values[t] * values[t + half]).sum());
    count::madd(((half + 1) * l + if l.is_multiple_of(2) { half } else { 0 }) as u64);
    ShiftSums {
        modulus: l,
        z,
        half_sum,
    }
}

/// Precomputed `cos(2*pi*q/l)` for `q = 0..=floor(l/2)` — the only
/// trigonometric evaluations on the folded spectrum path.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineTable {
    modulus: usize,
    c: Vec<f64>,
}

impl CosineTable {
    /// Builds the table directly, performing exactly `floor(l/2) + 1`
    /// cosine evaluations. Use [`cosine_table`] to share tables per
    /// modulus instead.
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::ModulusTooSmall(l));
        }
        let half = l / 2;
        let mut c = Vec::with_capacity(half + 1);
        for q in 0..=half {
            count::trig(1);
            c.push((std::f64::consts::TAU * q as f64 / l as f64).cos());
        }
        Ok(Self { modulus: l, c })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    /// `cos(2*pi*q/l)`; `q` must be at most `floor(l/2)`.
    pub fn coefficient(&self, q: usize) -> f64 {
        self.c[q]
    }
}

/// Concurrent per-modulus cache of cosine tables. Readers share a lock;
/// on a miss the table is computed outside the lock and the first writer
/// wins (a duplicate computation loses and is dropped).
#[derive(Debug, Default)]
pub struct CosineCache {
    tables: RwLock<HashMap<usize, Arc<CosineTable>>>,
}

impl CosineCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, l: usize) -> Result<Arc<CosineTable>> {
        if let Some(table) = self.tables.read().expect("cosine cache poisoned").get(&l) {
            return Ok(Arc::clone(table));
        }
        let table = Arc::new(CosineTable::new(l)?);
        let mut tables = self.tables.write().expect("cosine cache poisoned");
        Ok(Arc::clone(tables.entry(l).or_insert(table)))
    }
}

static GLOBAL_TABLES: OnceLock<CosineCache> = OnceLock::new();

/// The cosine table for `l` from a process-wide cache; repeated calls for
/// the same modulus perform no trigonometric evaluation.
pub fn cosine_table(l: usize) -> Result<Arc<CosineTable>> {
    GLOBAL_TABLES.get_or_init(CosineCache::new).get(l)
}

fn ensure_same_modulus(sums: &ShiftSums, table: &CosineTable) -> Result<usize> {
    if sums.modulus != table.modulus {
        return Err(Error::ModulusMismatch {
            sums: sums.modulus,
            table: table.modulus,
        });
    }
    Ok(sums.modulus)
}

fn clamp_power(value: f64, energy: f64) -> Result<f64> {
    if value >= 0.0 {
        return Ok(value);
    }
    let floor = -POWER_CLAMP_RELATIVE * energy;
    if value >= floor {
        Ok(0.0)
    } else {
        Err(Error::Internal(format!(
            "computed power {value:e} is below the rounding floor {floor:e}"
        )))
    }
}

/// `FPS(l/1)`: the power spectrum at the integer period `l` itself.
///
/// Combines the stored lags with the cosine table directly: for odd `l`
/// the lags `q = 1..=floor(l/2)` each contribute `2 * lag(q) * c[q]`; for
/// even `l` the final term uses the non-circular half sum,
/// `2 * half_sum * c[l/2]`.
pub fn fps_integer(sums: &ShiftSums, table: &CosineTable) -> Result<f64> {
    let l = ensure_same_modulus(sums, table)?;
    let half = l / 2;
    let mut acc = sums.z[0];
    if l % 2 == 1 {
        for q in 1..=half {
            acc += 2.0 * sums.z[q] * table.c[q];
        }
    } else {
        for q in 1..half {
            acc += 2.0 * sums.z[q] * table.c[q];
        }
        let half_sum = sums.half_sum.expect("even modulus stores a half sum");
        acc += 2.0 * half_sum * table.c[half];
    }
    count::madd(half as u64);
    clamp_power(acc, sums.z[0])
}

/// `FPS(l/k)` for `2 <= k <= floor(l/2)`, reusing the lags and cosine
/// table assembled for the integer period.
///
/// The coefficient at lag `q` is `cos(2*pi*k*q/l)`, which folds back into
/// the table as entry `t = min(p, l - p)` with `p = k*q mod l`; no cosine
/// is evaluated at call time.
pub fn fps_fractional(sums: &ShiftSums, table: &CosineTable, k: usize) -> Result<f64> {
    let l = ensure_same_modulus(sums, table)?;
    let half = l / 2;
    if k < 2 || k > half {
        return Err(Error::FrequencyOutOfRange {
            k,
            min: 2,
            max: half,
            modulus: l,
        });
    }
    let even = l % 2 == 0;
    let mut acc = sums.z[0];
    for q in 1..=half {
        let p = (k * q) % l;
        let t = p.min(l - p);
        let term = if even && q == half {
            sums.half_sum.expect("even modulus stores a half sum")
        } else {
            sums.z[q]
        };
        acc += 2.0 * term * table.c[t];
    }
    count::madd(half as u64);
    clamp_power(acc, sums.z[0])
}

/// Exact rational period `l/k`, kept unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Period {
    pub numerator: usize,
    pub denominator: usize,
}

impl Period {
    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Power spectrum of one modulus: `powers()[k - 1]` is `FPS(l/k)` for
/// `k = 1..=floor(l/2)`. The remaining frequency indices are mirror
/// images: `FPS(l/k) = FPS(l/(l-k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodSpectrum {
    modulus: usize,
    powers: Vec<f64>,
    source_length: usize,
}

impl PeriodSpectrum {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// `FPS(l/k)` for `k = 1..=floor(l/2)`, indexed by `k - 1`.
    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    /// Length of the original (pre-padding) input.
    pub fn source_length(&self) -> usize {
        self.source_length
    }

    /// Length after padding to the next multiple of the modulus.
    pub fn padded_length(&self) -> usize {
        self.source_length.div_ceil(self.modulus) * self.modulus
    }

    /// Number of blocks summed by the fold.
    pub fn folds(&self) -> usize {
        self.padded_length() / self.modulus
    }

    /// `FPS(l/k)` for any `k` in `1..l`, using the mirror symmetry for
    /// `k > floor(l/2)`. `None` outside that range.
    pub fn power(&self, k: usize) -> Option<f64> {
        if k == 0 || k >= self.modulus {
            return None;
        }
        Some(self.powers[k.min(self.modulus - k) - 1])
    }
}

/// One entry of a symmetrically expanded spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub k: usize,
    pub period: Period,
    pub power: f64,
}

/// Pads, folds, and evaluates `FPS(l/k)` for every `k = 1..=floor(l/2)`.
/// The shift sums are computed once and the cosine table comes from the
/// process-wide cache.
pub fn spectrum_for_modulus(x: &RealSequence, l: usize) -> Result<PeriodSpectrum> {
    let padded = pad_to_multiple(x, l)?;
    let y = fold(&padded, l)?;
    let sums = shift_sums(&y);
    let table = cosine_table(l)?;
    let half = l / 2;
    let mut powers = Vec::with_capacity(half);
    powers.push(fps_integer(&sums, &table)?);
    for k in 2..=half {
        powers.push(fps_fractional(&sums, &table, k)?);
    }
    Ok(PeriodSpectrum {
        modulus: l,
        powers,
        source_length: x.len(),
    })
}

/// Expands the stored half-spectrum to all `k = 1..l-1` via
/// `FPS(l/k) = FPS(l/(l-k))`; the mirrored powers are equal by
/// construction.
pub fn expand_symmetric(spectrum: &PeriodSpectrum) -> Vec<SpectrumEntry> {
    let l = spectrum.modulus;
    (1..l)
        .map(|k| SpectrumEntry {
            k,
            period: Period {
                numerator: l,
                denominator: k,
            },
            power: spectrum.powers[k.min(l - k) - 1],
        })
        .collect()
}

/// One [`PeriodSpectrum`] per modulus in `l_min..=l_max`, each padded
/// independently. Moduli are evaluated in parallel; the result order is
/// always ascending `l`.
pub fn scan(x: &RealSequence, l_min: usize, l_max: usize) -> Result<Vec<PeriodSpectrum>> {
    if l_min < 2 || l_min > l_max || l_max > x.len() {
        return Err(Error::InvalidScanRange {
            l_min,
            l_max,
            length: x.len(),
        });
    }
    (l_min..=l_max)
        .into_par_iter()
        .map(|l| spectrum_for_modulus(x, l))
        .collect()
}
