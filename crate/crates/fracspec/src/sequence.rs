//! Real-valued input signals.

use crate::error::{Error, Result};

/// A finite, non-empty real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence {
    samples: Vec<f64>,
}

impl RealSequence {
    /// Validates that `samples` is non-empty and every value is finite.
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (index, &value) in samples.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteSample { index, value });
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// The same signal with its arithmetic mean subtracted from every sample.
    pub fn centered(&self) -> RealSequence {
        let mean = self.samples.iter().sum::<f64>() / self.samples.len() as f64;
        RealSequence {
            samples: self.samples.iter().map(|v| v - mean).collect(),
        }
    }
}

/// Extends `x` with trailing zeros until its length is a multiple of `l`.
/// Returns the sequence unchanged when `l` already divides its length.
pub fn pad_to_multiple(x: &RealSequence, l: usize) -> Result<RealSequence> {
    if l < 2 {
        return Err(Error::ModulusTooSmall(l));
    }
    let m = x.len();
    let remainder = m % l;
    if remainder == 0 {
        return Ok(x.clone());
    }
    let mut samples = x.samples.clone();
    samples.resize(m + (l - remainder), 0.0);
    Ok(RealSequence { samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_input() {
        assert!(matches!(
            RealSequence::new(Vec::new()),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn rejects_non_finite_samples() {
        let err = RealSequence::new(vec![1.0, f64::NAN, 3.0]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { index: 1, .. }));
        let err = RealSequence::new(vec![f64::INFINITY]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { index: 0, .. }));
    }

    #[test]
    fn pad_extends_with_trailing_zeros() {
        let x = RealSequence::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let padded = pad_to_multiple(&x, 3).unwrap();
        assert_eq!(padded.samples(), &[1.0, 2.0, 3.0, 4.0, 5.0, 0.0]);
    }

    #[test]
    fn pad_is_identity_when_length_divides() {
        let x = RealSequence::new((1..=6).map(f64::from).collect()).unwrap();
        let padded = pad_to_multiple(&x, 3).unwrap();
        assert_eq!(padded, x);
    }

    #[test]
    fn pad_length_17_modulus_5() {
        let x = RealSequence::new(vec![1.0; 17]).unwrap();
        let padded = pad_to_multiple(&x, 5).unwrap();
        assert_eq!(padded.len(), 20);
        assert_eq!(&padded.samples()[17..], &[0.0, 0.0, 0.0]);
        assert_eq!(&padded.samples()[..17], x.samples());
    }

    #[test]
    fn pad_rejects_small_modulus() {
        let x = RealSequence::new(vec![1.0]).unwrap();
        assert!(matches!(
            pad_to_multiple(&x, 1),
            Err(Error::ModulusTooSmall(1))
        ));
        assert!(matches!(
            pad_to_multiple(&x, 0),
            Err(Error::ModulusTooSmall(0))
        ));
    }

    #[test]
    fn centering_zeroes_the_mean() {
        let x = RealSequence::new(vec![1.0, 2.0, 3.0, 6.0]).unwrap();
        let centered = x.centered();
        let mean: f64 = centered.samples().iter().sum::<f64>() / 4.0;
        assert!(mean.abs() < 1e-15);
    }
}
