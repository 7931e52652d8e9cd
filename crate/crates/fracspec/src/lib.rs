//! Fourier power spectra of real sequences at an integer period and all
//! of its associated fractional periods.
//!
//! For a signal of length `m` and a modulus `l`, the spectrum values
//! `FPS(l/k)` for `k = 1..=floor(l/2)` are the squared DFT magnitudes of
//! the zero-padded signal at the exact rational frequencies `k/l`. Rather
//! than transforming the full signal once per frequency, [`spectra`]
//! folds it into a length-`l` congruence sequence, takes circular
//! self-shift sums, and combines them with a single table of
//! `floor(l/2) + 1` cosines that serves every `k`.
//!
//! [`oracle`] holds deliberately naive reference implementations (direct
//! DFT summation and a Toeplitz quadratic form) that share nothing with
//! the fast path and exist to verify it. [`seqmap`] feeds the pipeline
//! from FASTA or numeric files via hydropathy or indicator mappings.
//!
//! ```
//! use fracspec::{spectrum_for_modulus, RealSequence};
//!
//! let x = RealSequence::new(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0])?;
//! let spectrum = spectrum_for_modulus(&x, 3)?;
//! assert!((spectrum.powers()[0] - 12.0).abs() < 1e-9);
//! # Ok::<(), fracspec::Error>(())
//! ```
//!
//! Powers are unnormalized (no division by the sequence length), matching
//! the plain `|X(k)|^2` convention.

#![forbid(unsafe_code)]

pub mod error;
pub mod oracle;
pub mod seqmap;
pub mod sequence;
pub mod spectra;

mod count;
#[cfg(feature = "countops")]
pub mod instrument;

pub use error::{Error, Result};
pub use sequence::{pad_to_multiple, RealSequence};
pub use spectra::{
    cosine_table, expand_symmetric, fold, fps_fractional, fps_integer, scan, shift_sums,
    spectrum_for_modulus, CongruenceSequence, CosineCache, CosineTable, Period, PeriodSpectrum,
    ShiftSums, SpectrumEntry,
};
