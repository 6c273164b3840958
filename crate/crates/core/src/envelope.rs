//! Resonance-band envelope analysis.
//!
//! The pipeline is entirely in the frequency domain: transform, mask the
//! resonance band (zero phase), transform back, build the analytic signal by
//! suppressing negative frequencies, take its modulus as the envelope, and
//! finally compute the amplitude spectrum of the mean-removed envelope.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::SampledSignal;
use crate::spectral::{amplitude_spectrum, fft_real, ifft_in_place, Spectrum, Window};

pub const DEFAULT_BAND_LOW_HZ: f64 = 700.0;
pub const DEFAULT_BAND_HIGH_HZ: f64 = 2500.0;
pub const DEFAULT_TAPER_HZ: f64 = 50.0;

/// Pass band with raised-cosine transitions of width `taper_hz` inside
/// `[low_hz, high_hz]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSpec {
    low_hz: f64,
    high_hz: f64,
    taper_hz: f64,
}

impl Default for BandSpec {
    fn default() -> Self {
        Self {
            low_hz: DEFAULT_BAND_LOW_HZ,
            high_hz: DEFAULT_BAND_HIGH_HZ,
            taper_hz: DEFAULT_TAPER_HZ,
        }
    }
}

impl BandSpec {
    pub fn new(low_hz: f64, high_hz: f64, taper_hz: f64) -> Result<Self> {
        if !(low_hz.is_finite() && low_hz >= 0.0) {
            return Err(Error::invariant("low_hz >= 0", format!("low {low_hz} Hz")));
        }
        if !(high_hz.is_finite() && high_hz > low_hz) {
            return Err(Error::invariant(
                "high_hz > low_hz",
                format!("band {low_hz}-{high_hz} Hz"),
            ));
        }
        if !(taper_hz.is_finite() && taper_hz >= 0.0 && taper_hz <= (high_hz - low_hz) / 2.0) {
            return Err(Error::invariant(
                "0 <= taper_hz <= (high_hz - low_hz) / 2",
                format!("taper {taper_hz} Hz for band {low_hz}-{high_hz} Hz"),
            ));
        }
        Ok(Self {
            low_hz,
            high_hz,
            taper_hz,
        })
    }

    pub fn low_hz(&self) -> f64 {
        self.low_hz
    }

    pub fn high_hz(&self) -> f64 {
        self.high_hz
    }

    pub fn taper_hz(&self) -> f64 {
        self.taper_hz
    }

    /// The band may reach the Nyquist frequency but not exceed it.
    pub fn check_nyquist(&self, sample_rate_hz: f64) -> Result<()> {
        let nyquist_hz = sample_rate_hz / 2.0;
        if self.high_hz > nyquist_hz * (1.0 + 1e-12) {
            return Err(Error::BandExceedsNyquist {
                low_hz: self.low_hz,
                high_hz: self.high_hz,
                nyquist_hz,
            });
        }
        Ok(())
    }

    /// Mask gain at a non-negative frequency.
    pub fn gain(&self, freq_hz: f64) -> f64 {
        let f = freq_hz.abs();
        if f < self.low_hz || f > self.high_hz {
            return 0.0;
        }
        if self.taper_hz == 0.0 {
            return 1.0;
        }
        let edge = (f - self.low_hz).min(self.high_hz - f);
        if edge >= self.taper_hz {
            1.0
        } else {
            0.5 * (1.0 - (PI * edge / self.taper_hz).cos())
        }
    }
}

impl FromStr for BandSpec {
    type Err = String;

    /// `LOW:HIGH` or `LOW:HIGH:TAPER`, in Hz. Taper defaults to 50 Hz, or
    /// to the largest admissible value for narrower bands.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number in band `{s}`"))
        };
        let (low, high, taper) = match parts.as_slice() {
            [l, h] => {
                let (l, h) = (num(l)?, num(h)?);
                (l, h, DEFAULT_TAPER_HZ.min(((h - l) / 2.0).max(0.0)))
            }
            [l, h, t] => (num(l)?, num(h)?, num(t)?),
            _ => return Err(format!("band `{s}` is not LOW:HIGH[:TAPER]")),
        };
        BandSpec::new(low, high, taper).map_err(|e| e.to_string())
    }
}

impl fmt::Display for BandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.low_hz, self.high_hz, self.taper_hz)
    }
}

/// Frequency of bin `k` of an `n`-point transform, folded to `[0, fs/2]`.
fn folded_freq(k: usize, n: usize, df: f64) -> f64 {
    k.min(n - k) as f64 * df
}

/// Zero-phase band-pass by masking the spectrum.
pub fn band_pass(signal: &SampledSignal, band: &BandSpec) -> Result<SampledSignal> {
    band.check_nyquist(signal.sample_rate_hz())?;
    let n = signal.len();
    let df = signal.sample_rate_hz() / n as f64;
    let mut spec = fft_real(signal.samples());
    for (k, z) in spec.iter_mut().enumerate() {
        *z *= band.gain(folded_freq(k, n, df));
    }
    // The mask is even in frequency, so the imaginary part is rounding noise.
    ifft_in_place(&mut spec);
    signal.with_samples(spec.into_iter().map(|z| z.re).collect())
}

/// Analytic signal `x + i H[x]` by one-sided spectrum construction.
pub fn analytic_signal(signal: &SampledSignal) -> Result<Vec<Complex64>> {
    let n = signal.len();
    if n < 2 {
        return Err(Error::invariant(
            "length >= 2",
            format!("analytic signal of a {n}-sample signal"),
        ));
    }
    let mut spec = fft_real(signal.samples());
    // H[0] = 1; H[k] = 2 on positive frequencies; H[N/2] = 1 for even N;
    // negative frequencies zeroed.
    let last_positive = (n - 1) / 2;
    for z in &mut spec[1..=last_positive] {
        *z *= 2.0;
    }
    let first_negative = n / 2 + 1;
    for z in &mut spec[first_negative..] {
        *z = Complex64::default();
    }
    ifft_in_place(&mut spec);
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeResult {
    pub filtered: SampledSignal,
    pub envelope: SampledSignal,
    /// Rectangular-window amplitude spectrum of the mean-removed envelope.
    pub envelope_spectrum: Spectrum,
}

/// Band-pass, Hilbert envelope and envelope spectrum of one signal.
pub fn envelope(signal: &SampledSignal, band: &BandSpec) -> Result<EnvelopeResult> {
    let filtered = band_pass(signal, band)?;
    let analytic = analytic_signal(&filtered)?;
    let env: Vec<f64> = analytic.iter().map(|z| z.norm()).collect();
    let envelope = SampledSignal::new(
        format!("{}_envelope", signal.name()),
        signal.unit(),
        signal.sample_rate_hz(),
        env,
    )?;
    let envelope_spectrum = envelope_spectrum(&envelope)?;
    Ok(EnvelopeResult {
        filtered,
        envelope,
        envelope_spectrum,
    })
}

/// Amplitude spectrum of the mean-removed envelope, rectangular window.
pub fn envelope_spectrum(envelope: &SampledSignal) -> Result<Spectrum> {
    let mean = envelope.mean();
    let centered = envelope.with_samples(envelope.samples().iter().map(|v| v - mean).collect())?;
    amplitude_spectrum(&centered, Window::Rectangular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::rms;

    const FS: f64 = 5000.0;

    fn cosine(freq: f64, amp: f64, n: usize) -> SampledSignal {
        let s = (0..n)
            .map(|i| amp * (2.0 * PI * freq * i as f64 / FS).cos())
            .collect();
        SampledSignal::new("x", "N", FS, s).unwrap()
    }

    fn interior(n: usize) -> std::ops::Range<usize> {
        n / 20..n - n / 20
    }

    #[test]
    fn band_spec_validation() {
        assert!(BandSpec::new(700.0, 2500.0, 50.0).is_ok());
        assert!(BandSpec::new(-1.0, 2500.0, 0.0).is_err());
        assert!(BandSpec::new(700.0, 700.0, 0.0).is_err());
        assert!(BandSpec::new(700.0, 800.0, 60.0).is_err());
        assert_eq!("700:2500".parse::<BandSpec>().unwrap(), BandSpec::default());
        assert_eq!("700:2500:0".parse::<BandSpec>().unwrap().taper_hz(), 0.0);
        assert!("700".parse::<BandSpec>().is_err());
        assert!("a:b".parse::<BandSpec>().is_err());
    }

    #[test]
    fn band_at_nyquist_is_accepted_beyond_is_not() {
        let x = cosine(1500.0, 1.0, 5000);
        assert!(band_pass(&x, &BandSpec::default()).is_ok());
        let wide = BandSpec::new(700.0, 3000.0, 50.0).unwrap();
        assert!(matches!(
            band_pass(&x, &wide),
            Err(Error::BandExceedsNyquist { .. })
        ));
    }

    #[test]
    fn mask_shape() {
        let b = BandSpec::default();
        assert_eq!(b.gain(699.9), 0.0);
        assert_eq!(b.gain(700.0), 0.0);
        assert!((b.gain(725.0) - 0.5).abs() < 1e-12);
        assert_eq!(b.gain(750.0), 1.0);
        assert_eq!(b.gain(1500.0), 1.0);
        assert!((b.gain(2475.0) - 0.5).abs() < 1e-12);
        assert_eq!(b.gain(2500.0), 0.0);
        assert_eq!(b.gain(-1500.0), 1.0);
    }

    #[test]
    fn stopband_tone_is_removed() {
        let x = cosine(100.0, 1.0, 5000);
        let y = band_pass(&x, &BandSpec::default()).unwrap();
        assert!(y.rms() < 1e-9 * x.rms());
    }

    #[test]
    fn passband_tone_is_unchanged() {
        let x = cosine(1500.0, 1.0, 5000);
        let y = band_pass(&x, &BandSpec::default()).unwrap();
        let err: Vec<f64> = x
            .samples()
            .iter()
            .zip(y.samples())
            .map(|(a, b)| a - b)
            .collect();
        assert!(rms(&err) < 1e-6);
        assert_eq!(y.len(), x.len());
        assert_eq!(y.sample_rate_hz(), FS);
    }

    #[test]
    fn hard_mask_is_idempotent() {
        let band = BandSpec::new(700.0, 2500.0, 0.0).unwrap();
        let x: Vec<f64> = (0..4096)
            .map(|i| ((i * 2654435761usize) % 1000) as f64 / 500.0 - 1.0)
            .collect();
        let x = SampledSignal::new("x", "N", FS, x).unwrap();
        let once = band_pass(&x, &band).unwrap();
        let twice = band_pass(&once, &band).unwrap();
        let err: Vec<f64> = once
            .samples()
            .iter()
            .zip(twice.samples())
            .map(|(a, b)| a - b)
            .collect();
        assert!(rms(&err) < 1e-9 * once.rms().max(1.0));
    }

    #[test]
    fn filtering_preserves_pulse_centroid() {
        let n = 2000;
        let m = 1000.0;
        let x: Vec<f64> = (0..n)
            .map(|i| {
                let t = (i as f64 - m) / FS;
                (-(t * 800.0).powi(2)).exp() * (2.0 * PI * 1500.0 * t).cos()
            })
            .collect();
        let x = SampledSignal::new("x", "N", FS, x).unwrap();
        let y = band_pass(&x, &BandSpec::default()).unwrap();
        let energy: f64 = y.samples().iter().map(|v| v * v).sum();
        let centroid: f64 = y
            .samples()
            .iter()
            .enumerate()
            .map(|(i, v)| i as f64 * v * v)
            .sum::<f64>()
            / energy;
        assert!((centroid - m).abs() < 0.5, "centroid {centroid}");
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let n = 5000;
        let x = cosine(250.0, 1.0, n);
        let a = analytic_signal(&x).unwrap();
        let re_err: Vec<f64> = a.iter().zip(x.samples()).map(|(z, v)| z.re - v).collect();
        assert!(rms(&re_err) < 1e-9);
        let im_err: Vec<f64> = interior(n)
            .map(|i| a[i].im - (2.0 * PI * 250.0 * i as f64 / FS).sin())
            .collect();
        assert!(rms(&im_err) < 1e-6);
    }

    #[test]
    fn analytic_of_constant_is_constant() {
        let x = SampledSignal::new("x", "N", FS, vec![3.0; 101]).unwrap();
        for z in analytic_signal(&x).unwrap() {
            assert!((z.re - 3.0).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_of_odd_length() {
        // N = 7: H = [1, 2, 2, 2, 0, 0, 0]
        let x: Vec<f64> = vec![0.3, -1.0, 2.0, 0.5, 0.0, 1.5, -0.7];
        let s = SampledSignal::new("x", "N", 7.0, x.clone()).unwrap();
        let a = analytic_signal(&s).unwrap();
        for (z, v) in a.iter().zip(&x) {
            assert!((z.re - v).abs() < 1e-12);
        }
        let mut back = a.clone();
        crate::spectral::fft_in_place(&mut back);
        assert!(back[4..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn analytic_needs_two_samples() {
        let s = SampledSignal::new("x", "N", 1.0, vec![1.0]).unwrap();
        assert!(analytic_signal(&s).is_err());
    }

    #[test]
    fn pure_tone_has_flat_envelope() {
        let n = 5000;
        let res = envelope(&cosine(1500.0, 2.0, n), &BandSpec::default()).unwrap();
        let env = res.envelope.samples();
        let worst = interior(n)
            .map(|i| (env[i] - 2.0).abs())
            .fold(0.0, f64::max);
        assert!(worst < 2e-3, "worst {worst}");
    }

    #[test]
    fn envelope_dominates_filtered() {
        let x: Vec<f64> = (0..3000)
            .map(|i| ((i * 7919) % 613) as f64 / 300.0 - 1.0)
            .collect();
        let x = SampledSignal::new("x", "N", FS, x).unwrap();
        let res = envelope(&x, &BandSpec::default()).unwrap();
        for (e, f) in res.envelope.samples().iter().zip(res.filtered.samples()) {
            assert!(*e >= 0.0);
            assert!(*e >= f.abs() - 1e-9);
        }
    }
}
