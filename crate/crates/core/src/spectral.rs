//! Discrete Fourier analysis.
//!
//! Convention: the forward transform is un-normalized,
//! `X[k] = sum_n x[n] e^(-i 2 pi k n / N)`, and the inverse carries the `1/N`
//! factor. Any length `N >= 1` is supported and yields exactly `N` bins.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{block_starts, SampledSignal};

/// Relative tolerance on the imaginary part left over by an inverse transform.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    ComplexTwoSided,
    AmplitudeOneSided,
}

#[derive(Debug, Clone, PartialEq)]
enum Bins {
    Complex(Vec<Complex64>),
    Amplitude(Vec<f64>),
}

/// Frequency-domain view of a signal. Bin `k` sits at `k * df_hz`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    df_hz: f64,
    source_len: usize,
    bins: Bins,
}

impl Spectrum {
    /// Two-sided complex spectrum of a `coeffs.len()`-sample signal.
    pub fn complex(df_hz: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        check_df(df_hz)?;
        if coeffs.is_empty() {
            return Err(Error::invariant("source_len >= 1", "empty spectrum"));
        }
        Ok(Self {
            df_hz,
            source_len: coeffs.len(),
            bins: Bins::Complex(coeffs),
        })
    }

    /// One-sided amplitude spectrum covering `0..=fs/2` of a
    /// `source_len`-sample signal.
    pub fn amplitude(df_hz: f64, source_len: usize, amplitudes: Vec<f64>) -> Result<Self> {
        check_df(df_hz)?;
        if amplitudes.len() != source_len / 2 + 1 {
            return Err(Error::invariant(
                "one-sided form covers [0, fs/2]",
                format!(
                    "{} bins for a {source_len}-sample source, expected {}",
                    amplitudes.len(),
                    source_len / 2 + 1
                ),
            ));
        }
        if let Some(i) = amplitudes
            .iter()
            .position(|a| !(a.is_finite() && *a >= 0.0))
        {
            return Err(Error::invariant(
                "amplitudes are non-negative",
                format!("bin {i} is {}", amplitudes[i]),
            ));
        }
        Ok(Self {
            df_hz,
            source_len,
            bins: Bins::Amplitude(amplitudes),
        })
    }

    pub fn kind(&self) -> SpectrumKind {
        match self.bins {
            Bins::Complex(_) => SpectrumKind::ComplexTwoSided,
            Bins::Amplitude(_) => SpectrumKind::AmplitudeOneSided,
        }
    }

    pub fn df_hz(&self) -> f64 {
        self.df_hz
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    /// Sample rate of the source signal.
    pub fn sample_rate_hz(&self) -> f64 {
        self.df_hz * self.source_len as f64
    }

    pub fn len(&self) -> usize {
        match &self.bins {
            Bins::Complex(c) => c.len(),
            Bins::Amplitude(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn frequency(&self, k: usize) -> f64 {
        k as f64 * self.df_hz
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.frequency(k))
    }

    pub fn max_frequency(&self) -> f64 {
        self.frequency(self.len() - 1)
    }

    pub fn coefficients(&self) -> Option<&[Complex64]> {
        match &self.bins {
            Bins::Complex(c) => Some(c),
            Bins::Amplitude(_) => None,
        }
    }

    pub fn amplitudes(&self) -> Option<&[f64]> {
        match &self.bins {
            Bins::Complex(_) => None,
            Bins::Amplitude(a) => Some(a),
        }
    }

    /// Magnitude of every bin, whatever the kind.
    pub fn magnitudes(&self) -> Vec<f64> {
        match &self.bins {
            Bins::Complex(c) => c.iter().map(|z| z.norm()).collect(),
            Bins::Amplitude(a) => a.clone(),
        }
    }

    /// Index of the largest-magnitude bin, skipping DC.
    pub fn peak_bin(&self) -> usize {
        let mags = self.magnitudes();
        let mut best = 0;
        for (k, m) in mags.iter().enumerate().skip(1) {
            if best == 0 || *m > mags[best] {
                best = k;
            }
        }
        best
    }

    /// Every bin multiplied by a positive constant.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        match &self.bins {
            Bins::Complex(c) => Self::complex(self.df_hz, c.iter().map(|z| z * factor).collect()),
            Bins::Amplitude(a) => Self::amplitude(
                self.df_hz,
                self.source_len,
                a.iter().map(|v| v * factor).collect(),
            ),
        }
    }
}

fn check_df(df_hz: f64) -> Result<()> {
    if df_hz.is_finite() && df_hz > 0.0 {
        Ok(())
    } else {
        Err(Error::invariant("df_hz > 0", format!("df {df_hz}")))
    }
}

pub(crate) fn fft_in_place(buf: &mut [Complex64]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// Inverse transform including the `1/N` factor.
pub(crate) fn ifft_in_place(buf: &mut [Complex64]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(buf.len()).process(buf);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
}

pub(crate) fn fft_real(samples: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft_in_place(&mut buf);
    buf
}

pub fn dft_forward(signal: &SampledSignal) -> Spectrum {
    let n = signal.len();
    Spectrum::complex(
        signal.sample_rate_hz() / n as f64,
        fft_real(signal.samples()),
    )
    .expect("validated signal yields a valid spectrum")
}

/// Inverse of [`dft_forward`].
///
/// The spectrum must be conjugate-symmetric: the imaginary residue of the
/// result is checked against `IMAGINARY_RESIDUE_TOL` times the RMS of the
/// real part and then discarded.
pub fn dft_inverse(spectrum: &Spectrum, name: &str, unit: &str) -> Result<SampledSignal> {
    let coeffs = spectrum.coefficients().ok_or(Error::WrongSpectrumKind {
        expected: "complex two-sided",
    })?;
    let mut buf = coeffs.to_vec();
    ifft_in_place(&mut buf);
    let real: Vec<f64> = buf.iter().map(|z| z.re).collect();
    let residue = (buf.iter().map(|z| z.im * z.im).sum::<f64>() / buf.len() as f64).sqrt();
    let tolerance = IMAGINARY_RESIDUE_TOL * crate::signal::rms(&real);
    if residue > tolerance {
        return Err(Error::ImaginaryResidue { residue, tolerance });
    }
    SampledSignal::new(name, unit, spectrum.sample_rate_hz(), real)
}

/// Taper applied before the amplitude spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    Rectangular,
    /// Periodic Hann, coherent gain exactly 0.5.
    #[default]
    Hann,
}

impl Window {
    pub fn coefficients(self, n: usize) -> Vec<f64> {
        match self {
            Window::Rectangular => vec![1.0; n],
            Window::Hann => (0..n)
                .map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos())
                .collect(),
        }
    }
}

impl std::str::FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hann" | "hanning" => Ok(Window::Hann),
            "rect" | "rectangular" | "none" => Ok(Window::Rectangular),
            other => Err(format!(
                "unknown window `{other}` (expected hann or rectangular)"
            )),
        }
    }
}

/// One-sided amplitude spectrum.
///
/// Amplitudes are corrected by the window's coherent gain and doubled for
/// every bin except DC and (for even lengths) Nyquist, so an in-bin sine of
/// amplitude `A` reads `A`.
pub fn amplitude_spectrum(signal: &SampledSignal, window: Window) -> Result<Spectrum> {
    let n = signal.len();
    if n < 2 {
        return Err(Error::invariant(
            "length >= 2",
            format!("amplitude spectrum of a {n}-sample signal"),
        ));
    }
    let w = window.coefficients(n);
    let gain = w.iter().sum::<f64>() / n as f64;
    let windowed: Vec<f64> = signal
        .samples()
        .iter()
        .zip(&w)
        .map(|(x, w)| x * w)
        .collect();
    let coeffs = fft_real(&windowed);
    let half = n / 2;
    let scale = 1.0 / (n as f64 * gain);
    let amps = coeffs[..=half]
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let a = z.norm() * scale;
            if k == 0 || (n.is_multiple_of(2) && k == half) {
                a
            } else {
                2.0 * a
            }
        })
        .collect();
    Spectrum::amplitude(signal.sample_rate_hz() / n as f64, n, amps)
}

/// Block-wise amplitude spectra over time.
#[derive(Debug, Clone, PartialEq)]
pub struct Waterfall {
    slices: Vec<(f64, Spectrum)>,
    block_size: usize,
    overlap: f64,
}

impl Waterfall {
    /// `(start_time_s, spectrum)` for each block, in time order.
    pub fn slices(&self) -> &[(f64, Spectrum)] {
        &self.slices
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }
}

pub fn waterfall(
    signal: &SampledSignal,
    block_size: usize,
    overlap: f64,
    window: Window,
) -> Result<Waterfall> {
    let starts = block_starts(signal.len(), block_size, overlap)?;
    let slices = starts
        .into_iter()
        .map(|start| {
            let block = signal.slice(start, start + block_size)?;
            Ok((signal.time_of(start), amplitude_spectrum(&block, window)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Waterfall {
        slices,
        block_size,
        overlap,
    })
}
