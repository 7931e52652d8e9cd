//! Brute-force reference implementations used to verify the folded
//! spectrum path.
//!
//! Everything here evaluates its defining sum literally, term by term,
//! with each twiddle factor computed fresh from its angle. Nothing is
//! shared with the fast path in [`crate::spectra`]; that independence is
//! what makes agreement between the two meaningful. Performance is a
//! non-goal.

use std::f64::consts::TAU;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::count;
use crate::error::{Error, Result};
use crate::sequence::RealSequence;
use crate::spectra::CongruenceSequence;

/// Largest imaginary residual tolerated from the quadratic form, relative
/// to the form's magnitude scale.
pub const IMAGINARY_RESIDUAL_TOLERANCE: f64 = 1e-9;

/// A complex number as an explicit (re, im) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn magnitude_squared(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn conjugate(self) -> ComplexValue {
        ComplexValue {
            re: self.re,
            im: -self.im,
        }
    }
}

/// DFT of `x` at frequency `k` by literal summation; O(m) per call.
pub fn naive_dft(x: &RealSequence, k: usize) -> Result<ComplexValue> {
    let m = x.len();
    if k >= m {
        return Err(Error::FrequencyOutOfRange {
            k,
            min: 0,
            max: m - 1,
            modulus: m,
        });
    }
    let mut re = 0.0;
    let mut im = 0.0;
    for (j, &sample) in x.samples().iter().enumerate() {
        // The phase index k*j is exact in integer arithmetic; reduce it
        // modulo m before forming the angle so the argument stays small.
        let phase = (k * j) % m;
        let angle = -TAU * phase as f64 / m as f64;
        re += sample * angle.cos();
        im += sample * angle.sin();
    }
    count::trig(2 * m as u64);
    count::madd(2 * m as u64);
    Ok(ComplexValue { re, im })
}

/// Squared DFT magnitude of `x` at frequency `k`.
pub fn naive_fps(x: &RealSequence, k: usize) -> Result<f64> {
    Ok(naive_dft(x, k)?.magnitude_squared())
}

/// Ground-truth `FPS(l/k)`: pads `x` with trailing zeros to a multiple of
/// `l` (independently of the fast path's padding) and evaluates the DFT of
/// the padded sequence at frequency `k * n`, where `n` is the fold count.
pub fn oracle_fps_at_period(x: &RealSequence, l: usize, k: usize) -> Result<f64> {
    if l < 2 {
        return Err(Error::ModulusTooSmall(l));
    }
    if k == 0 || k > l - 1 {
        return Err(Error::FrequencyOutOfRange {
            k,
            min: 1,
            max: l - 1,
            modulus: l,
        });
    }
    let mut samples = x.samples().to_vec();
    let remainder = samples.len() % l;
    if remainder != 0 {
        let target = samples.len() + l - remainder;
        samples.resize(target, 0.0);
    }
    let padded = RealSequence::new(samples)?;
    let n = padded.len() / l;
    naive_fps(&padded, k * n)
}

/// The coefficient matrix of the power-spectrum quadratic form,
/// `b[r][s] = exp(i * 2*pi*k*(r - s) / l)`, held implicitly through its
/// generator exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToeplitzForm {
    modulus: usize,
    frequency: usize,
}

impl ToeplitzForm {
    pub fn new(modulus: usize, frequency: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        if frequency == 0 || frequency > modulus - 1 {
            return Err(Error::FrequencyOutOfRange {
                k: frequency,
                min: 1,
                max: modulus - 1,
                modulus,
            });
        }
        Ok(Self { modulus, frequency })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn frequency(&self) -> usize {
        self.frequency
    }

    /// Entry at (`row`, `col`), generated from the index difference.
    pub fn entry(&self, row: usize, col: usize) -> ComplexValue {
        let l = self.modulus;
        let diff = (row as i64 - col as i64).rem_euclid(l as i64) as usize;
        let phase = (self.frequency * diff) % l;
        let angle = TAU * phase as f64 / l as f64;
        ComplexValue {
            re: angle.cos(),
            im: angle.sin(),
        }
    }
}

/// Evaluates the quadratic form `sum_r sum_s y[r] * b[r][s] * y[s]`
/// literally, O(l^2). The imaginary part must cancel; a residual beyond
/// [`IMAGINARY_RESIDUAL_TOLERANCE`] (relative to the form's scale) is an
/// internal error.
pub fn toeplitz_fps(y: &CongruenceSequence, k: usize) -> Result<f64> {
    let l = y.modulus();
    let form = ToeplitzForm::new(l, k)?;
    let values = y.values();
    let mut re = 0.0;
    let mut im = 0.0;
    for (r, &yr) in values.iter().enumerate() {
        for (s, &ys) in values.iter().enumerate() {
            let b = form.entry(r, s);
            re += yr * ys * b.re;
            im += yr * ys * b.im;
        }
    }
    count::trig(2 * (l * l) as u64);
    count::madd(2 * (l * l) as u64);
    let magnitude: f64 = values.iter().map(|v| v.abs()).sum();
    let scale = (magnitude * magnitude).max(1.0);
    if im.abs() > IMAGINARY_RESIDUAL_TOLERANCE * scale {
        return Err(Error::Internal(format!(
            "quadratic form has imaginary residual {im:e} at modulus {l}, frequency {k}"
        )));
    }
    Ok(re)
}

/// Spot-checks the Hermitian Toeplitz structure of the form's matrix on
/// `samples` randomly drawn index pairs: conjugate symmetry, dependence on
/// the index difference only, and a unit diagonal, all within 1e-12.
pub fn check_toeplitz_structure(l: usize, k: usize, samples: usize) -> bool {
    let Ok(form) = ToeplitzForm::new(l, k) else {
        return false;
    };
    let mut rng = StdRng::seed_from_u64(0x70_65_70_6c ^ ((l as u64) << 20) ^ k as u64);
    structure_holds(|r, s| form.entry(r, s), l, samples, &mut rng)
}

fn structure_holds(
    entry: impl Fn(usize, usize) -> ComplexValue,
    l: usize,
    samples: usize,
    rng: &mut StdRng,
) -> bool {
    const TOL: f64 = 1e-12;
    let close =
        |a: ComplexValue, b: ComplexValue| (a.re - b.re).abs() <= TOL && (a.im - b.im).abs() <= TOL;
    for _ in 0..samples {
        let r = rng.gen_range(0..l);
        let s = rng.gen_range(0..l);
        // Hermitian: b[r][s] = conj(b[s][r]).
        if !close(entry(r, s), entry(s, r).conjugate()) {
            return false;
        }
        // Toeplitz: the entry depends only on r - s.
        let shift = rng.gen_range(0..l - r.max(s));
        if !close(entry(r, s), entry(r + shift, s + shift)) {
            return false;
        }
        // Unit diagonal.
        let d = rng.gen_range(0..l);
        if !close(entry(d, d), ComplexValue { re: 1.0, im: 0.0 }) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::fold;
    use approx::assert_relative_eq;

    fn seq(values: &[f64]) -> RealSequence {
        RealSequence::new(values.to_vec()).unwrap()
    }

    #[test]
    fn dft_of_constant_at_dc() {
        let x = seq(&[1.0, 1.0, 1.0, 1.0]);
        let dc = naive_dft(&x, 0).unwrap();
        assert_relative_eq!(dc.re, 4.0, max_relative = 1e-12);
        assert!(dc.im.abs() < 1e-12);
    }

    #[test]
    fn dft_of_constant_has_no_ac_energy() {
        let x = seq(&[1.0, 1.0, 1.0, 1.0]);
        let ac = naive_dft(&x, 1).unwrap();
        assert!(ac.re.abs() < 1e-12);
        assert!(ac.im.abs() < 1e-12);
        assert!(naive_fps(&x, 1).unwrap() < 1e-12);
    }

    #[test]
    fn dft_hand_expansion_fixture() {
        // X(1) of [5, 7, 9] expands to -3 + i*sqrt(3).
        let x = seq(&[5.0, 7.0, 9.0]);
        let value = naive_dft(&x, 1).unwrap();
        assert_relative_eq!(value.re, -3.0, max_relative = 1e-12);
        assert_relative_eq!(value.im, 3.0f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(naive_fps(&x, 1).unwrap(), 12.0, max_relative = 1e-12);
    }

    #[test]
    fn dft_rejects_out_of_range_frequency() {
        let x = seq(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            naive_dft(&x, 3),
            Err(Error::FrequencyOutOfRange { k: 3, .. })
        ));
    }

    #[test]
    fn fps_of_impulse_is_flat() {
        let x = seq(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        for k in 0..6 {
            assert_relative_eq!(naive_fps(&x, k).unwrap(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn oracle_fixture_one_to_six() {
        let x = seq(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_relative_eq!(
            oracle_fps_at_period(&x, 3, 1).unwrap(),
            12.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn oracle_of_constant_is_zero() {
        let x = seq(&[4.0; 12]);
        for l in 2..=6usize {
            for k in 1..l {
                // Padding may break the constancy, but for l dividing 12
                // the spectrum is exactly zero.
                if 12 % l == 0 {
                    assert!(oracle_fps_at_period(&x, l, k).unwrap() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn oracle_rejects_bad_ranges() {
        let x = seq(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            oracle_fps_at_period(&x, 1, 1),
            Err(Error::ModulusTooSmall(1))
        ));
        assert!(matches!(
            oracle_fps_at_period(&x, 3, 0),
            Err(Error::FrequencyOutOfRange { .. })
        ));
        assert!(matches!(
            oracle_fps_at_period(&x, 3, 3),
            Err(Error::FrequencyOutOfRange { .. })
        ));
    }

    #[test]
    fn toeplitz_fixture_matches_naive() {
        let x = seq(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let y = fold(&x, 3).unwrap();
        assert_relative_eq!(toeplitz_fps(&y, 1).unwrap(), 12.0, max_relative = 1e-9);
    }

    #[test]
    fn toeplitz_of_impulse_fold() {
        let x = seq(&[1.0, 0.0, 0.0, 0.0]);
        let y = fold(&x, 4).unwrap();
        assert_relative_eq!(toeplitz_fps(&y, 1).unwrap(), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn toeplitz_equals_squared_dft_magnitude() {
        let x = seq(&[0.5, -2.0, 3.5, 1.0, -4.0, 2.0, 0.25, -1.0, 3.0, -0.5]);
        let y = fold(&x, 5).unwrap();
        let y_seq = seq(y.values());
        for k in 1..5 {
            let quad = toeplitz_fps(&y, k).unwrap();
            let direct = naive_dft(&y_seq, k).unwrap().magnitude_squared();
            assert_relative_eq!(quad, direct, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn structure_check_accepts_true_generator() {
        assert!(check_toeplitz_structure(5, 2, 100));
        assert!(check_toeplitz_structure(2, 1, 100));
        assert!(check_toeplitz_structure(64, 31, 200));
    }

    #[test]
    fn structure_check_rejects_perturbed_generator() {
        // Same generator with the exponent off by one: no longer Hermitian
        // and the diagonal is not 1.
        let l = 5usize;
        let k = 2usize;
        let perturbed = |r: usize, s: usize| {
            let diff = (r as i64 - s as i64 + 1).rem_euclid(l as i64) as usize;
            let angle = TAU * ((k * diff) % l) as f64 / l as f64;
            ComplexValue {
                re: angle.cos(),
                im: angle.sin(),
            }
        };
        let mut rng = StdRng::seed_from_u64(7);
        assert!(!structure_holds(perturbed, l, 64, &mut rng));
    }

    #[test]
    fn conjugate_symmetry_of_real_dft() {
        let x = seq(&[2.0, -1.0, 0.5, 3.0, -2.5, 1.5, 0.0]);
        let m = x.len();
        for k in 1..m {
            let a = naive_fps(&x, k).unwrap();
            let b = naive_fps(&x, m - k).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-9, epsilon = 1e-12);
        }
    }
}
