//! Spindle speed, angle-synchronous resampling and tooth-order diagnostics.
//!
//! Orders are referenced to the spindle rotation frequency: order `N` of an
//! `N`-tooth cutter is the tooth-passing frequency, and the lower orders
//! `1..N` carry the once-per-revolution pattern that appears when teeth do
//! not share the load evenly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::envelope::envelope_spectrum;
use crate::error::{Error, Result};
use crate::signal::{CutConditions, CutterSpec, SampledSignal, TachoTrace};
use crate::spectral::Spectrum;

pub const DEFAULT_ASYMMETRY_THRESHOLD: f64 = 0.5;
/// Order-`N` amplitude must exceed this multiple of the non-harmonic median
/// for a diagnosis to count.
pub const NOISE_GUARD_FACTOR: f64 = 10.0;
/// Appended to the unit of angle-domain signals, whose `sample_rate_hz`
/// then means samples per revolution.
pub const ANGLE_DOMAIN_TAG: &str = "[angle domain: samples/rev]";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedProfile {
    /// Midpoint of each inter-pulse interval.
    pub times_s: Vec<f64>,
    pub rpm: Vec<f64>,
    pub mean_rpm: f64,
}

impl SpeedProfile {
    pub fn mean_f_rot_hz(&self) -> f64 {
        self.mean_rpm / 60.0
    }
}

pub fn speed_from_tacho(tacho: &TachoTrace) -> Result<SpeedProfile> {
    let pulses = tacho.pulse_times_s();
    if pulses.len() < 2 {
        return Err(Error::TooFewPulses(pulses.len()));
    }
    let ppr = tacho.pulses_per_rev() as f64;
    let (times_s, rpm): (Vec<f64>, Vec<f64>) = pulses
        .windows(2)
        .map(|w| (0.5 * (w[0] + w[1]), 60.0 / (ppr * (w[1] - w[0]))))
        .unzip();
    let mean_rpm = rpm.iter().sum::<f64>() / rpm.len() as f64;
    Ok(SpeedProfile {
        times_s,
        rpm,
        mean_rpm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpindleKinematics {
    pub rpm: f64,
    pub f_rot_hz: f64,
    pub tooth_passing_hz: f64,
}

/// Spindle speed from cutting speed and cutter diameter:
/// `rpm = 1000 v_c / (pi d)`.
pub fn spindle_speed_from_cutting(
    conditions: &CutConditions,
    cutter: &CutterSpec,
) -> SpindleKinematics {
    let rpm = 1000.0 * conditions.cutting_speed_m_per_min() / (PI * cutter.diameter_mm());
    let f_rot_hz = rpm / 60.0;
    SpindleKinematics {
        rpm,
        f_rot_hz,
        tooth_passing_hz: cutter.teeth() as f64 * f_rot_hz,
    }
}

/// Crops `signal` to the span between the first and last tachometer pulse
/// and rebases both so that the first retained sample is at time zero.
pub fn crop_to_tacho(
    signal: &SampledSignal,
    tacho: &TachoTrace,
) -> Result<(SampledSignal, TachoTrace)> {
    let pulses = tacho.pulse_times_s();
    if pulses.len() < 2 {
        return Err(Error::TooFewPulses(pulses.len()));
    }
    let fs = signal.sample_rate_hz();
    let first = (pulses[0] * fs).ceil().max(0.0) as usize;
    let last = ((pulses[pulses.len() - 1] * fs).floor() as usize).min(signal.len() - 1);
    if first >= last {
        return Err(Error::TachoCoverage {
            tacho_start_s: pulses[0],
            tacho_end_s: pulses[pulses.len() - 1],
            signal_start_s: 0.0,
            signal_end_s: signal.time_of(signal.len() - 1),
        });
    }
    let cropped = signal.slice(first, last + 1)?;
    let t0 = first as f64 / fs;
    let shifted = TachoTrace::new(
        pulses.iter().map(|t| t - t0).collect(),
        tacho.pulses_per_rev(),
    )?;
    Ok((cropped, shifted))
}

/// 4-point Lagrange interpolation at fractional sample position `u`.
fn cubic_at(samples: &[f64], u: f64) -> f64 {
    let n = samples.len();
    if n == 1 {
        return samples[0];
    }
    let last = (n - 1) as f64;
    let u = u.clamp(0.0, last);
    let base = (u.floor() as usize).min(n - 2);
    let d = u - base as f64;
    if d == 0.0 {
        return samples[base];
    }
    if n < 4 {
        return samples[base] + d * (samples[base + 1] - samples[base]);
    }
    // Window of four samples around u, shifted inwards at the edges.
    let start = base.saturating_sub(1).min(n - 4);
    let x = u - start as f64;
    let p = &samples[start..start + 4];
    let l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    let l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
    let l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
    let l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
    l0 * p[0] + l1 * p[1] + l2 * p[2] + l3 * p[3]
}

/// Resamples `signal` at uniform shaft-angle increments of
/// `1 / samples_per_rev` revolutions.
///
/// Shaft angle is piecewise linear in time between pulses; signal values are
/// interpolated with a 4-point cubic. The first output sample is at the first
/// pulse. The result's `sample_rate_hz` holds samples per revolution and its
/// unit carries [`ANGLE_DOMAIN_TAG`].
pub fn angular_resample(
    signal: &SampledSignal,
    tacho: &TachoTrace,
    samples_per_rev: usize,
) -> Result<SampledSignal> {
    if samples_per_rev < 2 {
        return Err(Error::invariant(
            "samples_per_rev >= 2",
            format!("samples_per_rev {samples_per_rev}"),
        ));
    }
    let pulses = tacho.pulse_times_s();
    if pulses.len() < 2 {
        return Err(Error::TooFewPulses(pulses.len()));
    }
    let fs = signal.sample_rate_hz();
    let signal_end = signal.time_of(signal.len() - 1);
    let (tacho_start, tacho_end) = (pulses[0], pulses[pulses.len() - 1]);
    let slack = 1e-9 / fs;
    if tacho_start > slack || tacho_end < signal_end - slack {
        return Err(Error::TachoCoverage {
            tacho_start_s: tacho_start,
            tacho_end_s: tacho_end,
            signal_start_s: 0.0,
            signal_end_s: signal_end,
        });
    }

    let ppr = tacho.pulses_per_rev() as f64;
    let intervals = pulses.len() - 1;
    let total_revs = intervals as f64 / ppr;
    let count = (total_revs * samples_per_rev as f64 + 1e-9).floor() as usize + 1;
    let mut out = Vec::with_capacity(count);
    let mut interval = 0usize;
    for m in 0..count {
        // Position in pulse intervals.
        let pos = m as f64 * ppr / samples_per_rev as f64;
        while interval + 1 < intervals && pos >= (interval + 1) as f64 {
            interval += 1;
        }
        let frac = pos - interval as f64;
        let t = pulses[interval] + frac * (pulses[interval + 1] - pulses[interval]);
        if t > signal_end + slack {
            break;
        }
        out.push(cubic_at(signal.samples(), t * fs));
    }
    SampledSignal::new(
        format!("{}_angle", signal.name()),
        format!("{} {ANGLE_DOMAIN_TAG}", signal.unit()),
        samples_per_rev as f64,
        out,
    )
}

pub fn is_angle_domain(signal: &SampledSignal) -> bool {
    signal.unit().ends_with(ANGLE_DOMAIN_TAG)
}

/// Envelope spectrum in the order domain: the envelope is cropped to the
/// tachometer span, resampled at `samples_per_rev` and transformed. The
/// returned spectrum's frequency axis is in orders (cycles per revolution).
pub fn synchronous_envelope_spectrum(
    envelope: &SampledSignal,
    tacho: &TachoTrace,
    samples_per_rev: usize,
) -> Result<Spectrum> {
    let (cropped, rebased) = crop_to_tacho(envelope, tacho)?;
    let resampled = angular_resample(&cropped, &rebased, samples_per_rev)?;
    envelope_spectrum(&resampled)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderLine {
    pub order: f64,
    pub amplitude: f64,
    pub exact_freq_hz: f64,
}

/// Envelope-spectrum amplitudes at integer multiples of the rotation
/// frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderSpectrum {
    pub f_rot_hz: f64,
    pub orders: Vec<OrderLine>,
    pub search_halfwidth_hz: f64,
    /// Median amplitude of the bins outside every harmonic search window.
    pub noise_floor: f64,
}

impl OrderSpectrum {
    pub fn amplitude(&self, order: usize) -> Option<f64> {
        self.orders
            .iter()
            .find(|l| l.order == order as f64)
            .map(|l| l.amplitude)
    }

    pub fn max_order(&self) -> usize {
        self.orders.len()
    }
}

/// `max(2 df, 0.02 f_rot)`.
pub fn default_search_halfwidth(df_hz: f64, f_rot_hz: f64) -> f64 {
    (2.0 * df_hz).max(0.02 * f_rot_hz)
}

pub fn order_spectrum(
    spectrum: &Spectrum,
    f_rot_hz: f64,
    max_order: usize,
    search_halfwidth_hz: f64,
) -> Result<OrderSpectrum> {
    let amps = spectrum.amplitudes().ok_or(Error::WrongSpectrumKind {
        expected: "amplitude one-sided",
    })?;
    if !(f_rot_hz.is_finite() && f_rot_hz > 0.0) {
        return Err(Error::invariant(
            "f_rot_hz > 0",
            format!("f_rot {f_rot_hz} Hz"),
        ));
    }
    if !(search_halfwidth_hz.is_finite() && search_halfwidth_hz > 0.0) {
        return Err(Error::invariant(
            "search_halfwidth_hz > 0",
            format!("half-width {search_halfwidth_hz} Hz"),
        ));
    }
    if max_order < 1 {
        return Err(Error::invariant("max_order >= 1", "max_order 0"));
    }
    let df = spectrum.df_hz();
    let max_freq_hz = spectrum.max_frequency();
    if max_order as f64 * f_rot_hz > max_freq_hz * (1.0 + 1e-12) {
        return Err(Error::OrderRange {
            max_order,
            f_rot_hz,
            max_freq_hz,
        });
    }
    let last = amps.len() - 1;
    let window = |center: f64| -> (usize, usize) {
        let lo = ((center - search_halfwidth_hz) / df).ceil().max(0.0) as usize;
        let hi = (((center + search_halfwidth_hz) / df).floor().max(0.0) as usize).min(last);
        (lo, hi)
    };

    let orders = (1..=max_order)
        .map(|k| {
            let center = k as f64 * f_rot_hz;
            let (lo, hi) = window(center);
            let best = if lo > hi {
                ((center / df).round() as usize).min(last)
            } else {
                (lo..=hi).fold(lo, |b, i| if amps[i] > amps[b] { i } else { b })
            };
            OrderLine {
                order: k as f64,
                amplitude: amps[best],
                exact_freq_hz: spectrum.frequency(best),
            }
        })
        .collect();

    let span_end = (((max_order as f64 + 0.5) * f_rot_hz) / df).floor() as usize;
    let mut off_harmonic: Vec<f64> = (1..=span_end.min(last))
        .filter(|&i| {
            let f = spectrum.frequency(i);
            let nearest = (f / f_rot_hz).round().max(1.0);
            (f - nearest * f_rot_hz).abs() > search_halfwidth_hz
        })
        .map(|i| amps[i])
        .collect();
    let noise_floor = median(&mut off_harmonic);

    Ok(OrderSpectrum {
        f_rot_hz,
        orders,
        search_halfwidth_hz,
        noise_floor,
    })
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len().is_multiple_of(2) {
        0.5 * (values[mid - 1] + values[mid])
    } else {
        values[mid]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagnosticStatus {
    Clean,
    Asymmetric,
    /// Tooth-passing order not clearly above the noise floor.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToothDiagnostics {
    pub teeth: u32,
    pub tooth_order_amplitude: f64,
    /// Amplitudes at orders `1..teeth`.
    pub sub_order_amplitudes: Vec<f64>,
    /// `max(sub_order_amplitudes) / tooth_order_amplitude`; zero when the
    /// tooth order is absent.
    pub asymmetry_ratio: f64,
    pub asymmetry_flag: bool,
    pub threshold: f64,
    pub status: DiagnosticStatus,
    pub noise_floor: f64,
}

/// Compares the sub-tooth orders against the tooth-passing order.
pub fn tooth_diagnostics(
    orders: &OrderSpectrum,
    cutter: &CutterSpec,
    threshold: f64,
) -> Result<ToothDiagnostics> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::invariant(
            "threshold > 0",
            format!("threshold {threshold}"),
        ));
    }
    let teeth = cutter.teeth();
    let n = teeth as usize;
    if orders.max_order() < n {
        return Err(Error::MissingOrders {
            teeth: n,
            available: orders.max_order(),
        });
    }
    let tooth_order_amplitude = orders.orders[n - 1].amplitude;
    let sub_order_amplitudes: Vec<f64> =
        orders.orders[..n - 1].iter().map(|l| l.amplitude).collect();
    let max_sub = sub_order_amplitudes.iter().copied().fold(0.0, f64::max);
    let inconclusive = tooth_order_amplitude <= 0.0
        || tooth_order_amplitude < NOISE_GUARD_FACTOR * orders.noise_floor;
    let asymmetry_ratio = if tooth_order_amplitude > 0.0 {
        max_sub / tooth_order_amplitude
    } else {
        0.0
    };
    let (asymmetry_flag, status) = if inconclusive {
        (false, DiagnosticStatus::Inconclusive)
    } else if asymmetry_ratio >= threshold {
        (true, DiagnosticStatus::Asymmetric)
    } else {
        (false, DiagnosticStatus::Clean)
    };
    Ok(ToothDiagnostics {
        teeth,
        tooth_order_amplitude,
        sub_order_amplitudes,
        asymmetry_ratio,
        asymmetry_flag,
        threshold,
        status,
        noise_floor: orders.noise_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_tacho_speed() {
        let pulses: Vec<f64> = (0..20).map(|i| i as f64 * 0.03).collect();
        let p = speed_from_tacho(&TachoTrace::new(pulses, 1).unwrap()).unwrap();
        assert!(p.rpm.iter().all(|r| (r - 2000.0).abs() < 1e-9));
        assert!((p.mean_rpm - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn alternating_intervals() {
        let pulses = vec![0.0, 0.04, 0.06, 0.10, 0.12];
        let p = speed_from_tacho(&TachoTrace::new(pulses, 1).unwrap()).unwrap();
        let expected = [1500.0, 3000.0, 1500.0, 3000.0];
        for (r, e) in p.rpm.iter().zip(expected) {
            assert!((r - e).abs() < 1e-9);
        }
        assert!((p.mean_rpm - 2250.0).abs() < 1e-9);
    }

    #[test]
    fn pulses_per_rev_divides_speed() {
        let pulses: Vec<f64> = (0..5).map(|i| i as f64 * 0.01).collect();
        let p = speed_from_tacho(&TachoTrace::new(pulses, 3).unwrap()).unwrap();
        assert!((p.mean_rpm - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn single_pulse_is_an_error() {
        let t = TachoTrace::new(vec![0.1], 1).unwrap();
        assert!(matches!(speed_from_tacho(&t), Err(Error::TooFewPulses(1))));
    }

    #[test]
    fn kinematics_from_cutting_parameters() {
        let cutter = CutterSpec::new(3, 25.0).unwrap();
        let cond = CutConditions::new(157.0, 0.1, 1.0).unwrap();
        let k = spindle_speed_from_cutting(&cond, &cutter);
        // 1000 * 157 / (pi * 25) = 1998.99...
        assert!((k.rpm - 1999.0).abs() < 0.5, "{}", k.rpm);
        assert!((k.tooth_passing_hz - 99.95).abs() < 0.1);

        let d = 40.0;
        let unit = CutConditions::new(PI * d / 1000.0 * 1000.0, 0.1, 1.0).unwrap();
        let k = spindle_speed_from_cutting(&unit, &CutterSpec::new(2, d).unwrap());
        assert!((k.rpm - 1000.0).abs() < 1e-9);

        let k1 = spindle_speed_from_cutting(&cond, &CutterSpec::new(3, 25.0).unwrap());
        let k2 = spindle_speed_from_cutting(&cond, &CutterSpec::new(3, 50.0).unwrap());
        assert_eq!(k1.rpm / 2.0, k2.rpm);
    }

    #[test]
    fn cubic_is_exact_for_cubics() {
        let s: Vec<f64> = (0..10)
            .map(|i| {
                let x = i as f64;
                0.5 * x * x * x - x * x + 3.0
            })
            .collect();
        for u in [0.0, 0.25, 0.5, 3.7, 8.2, 8.9, 9.0] {
            let exact = 0.5 * u * u * u - u * u + 3.0;
            assert!((cubic_at(&s, u) - exact).abs() < 1e-9, "u={u}");
        }
    }

    #[test]
    fn constant_speed_resampling_hits_input_samples() {
        // 50 rev/s at 5 kHz with 100 samples/rev: one output per input sample.
        let fs = 5000.0;
        let x: Vec<f64> = (0..1001)
            .map(|i| (2.0 * PI * 37.0 * i as f64 / fs).sin())
            .collect();
        let s = SampledSignal::new("x", "N", fs, x.clone()).unwrap();
        let pulses: Vec<f64> = (0..=10).map(|i| i as f64 * 0.02).collect();
        let r = angular_resample(&s, &TachoTrace::new(pulses, 1).unwrap(), 100).unwrap();
        assert_eq!(r.len(), 1001);
        assert!(is_angle_domain(&r));
        assert_eq!(r.sample_rate_hz(), 100.0);
        for (a, b) in r.samples().iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_speed_resampling_matches_time_resampling() {
        // 33 rev/s, 64 samples/rev: new spacing 1/2112 s, off the input grid.
        let fs = 5000.0;
        let f = 40.0;
        let x: Vec<f64> = (0..5001)
            .map(|i| (2.0 * PI * f * i as f64 / fs).cos())
            .collect();
        let s = SampledSignal::new("x", "N", fs, x).unwrap();
        let period = 1.0 / 33.0;
        let pulses: Vec<f64> = (0..=34).map(|i| i as f64 * period).collect();
        let pulses: Vec<f64> = pulses.into_iter().filter(|t| *t <= 1.0 + 1e-12).collect();
        let last = *pulses.last().unwrap();
        let s = s.crop_time(0.0, last).unwrap();
        let r = angular_resample(&s, &TachoTrace::new(pulses, 1).unwrap(), 64).unwrap();
        let worst = r
            .samples()
            .iter()
            .enumerate()
            .map(|(m, v)| {
                let t = m as f64 * period / 64.0;
                (v - (2.0 * PI * f * t).cos()).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "worst {worst}");
    }

    #[test]
    fn signal_past_last_pulse_is_rejected() {
        let s = SampledSignal::new("x", "N", 100.0, vec![0.0; 200]).unwrap();
        let t = TachoTrace::new(vec![0.0, 0.5, 1.0], 1).unwrap();
        assert!(matches!(
            angular_resample(&s, &t, 16),
            Err(Error::TachoCoverage { .. })
        ));
        let (c, rebased) = crop_to_tacho(&s, &t).unwrap();
        assert_eq!(c.len(), 101);
        assert!(angular_resample(&c, &rebased, 16).is_ok());
    }

    fn spike_spectrum(freq: f64, amp: f64) -> Spectrum {
        let df = 0.5;
        let n = 10_000;
        let mut a = vec![1e-4; n / 2 + 1];
        a[(freq / df).round() as usize] = amp;
        Spectrum::amplitude(df, n, a).unwrap()
    }

    #[test]
    fn single_tooth_peak_lands_on_order_three() {
        let spec = spike_spectrum(100.0, 1.0);
        let o = order_spectrum(&spec, 100.0 / 3.0, 6, 2.0).unwrap();
        assert_eq!(o.amplitude(3), Some(1.0));
        assert_eq!(o.orders[2].exact_freq_hz, 100.0);
        assert_eq!(o.amplitude(1), Some(1e-4));
        assert_eq!(o.amplitude(2), Some(1e-4));
        assert_eq!(o.noise_floor, 1e-4);
    }

    #[test]
    fn window_tolerates_speed_error() {
        let spec = spike_spectrum(100.0, 1.0);
        let o = order_spectrum(&spec, 100.0 / 3.0 * 1.01, 3, 2.0).unwrap();
        assert_eq!(o.amplitude(3), Some(1.0));
        assert_eq!(o.orders[2].exact_freq_hz, 100.0);
    }

    #[test]
    fn narrow_window_takes_nearest_bin() {
        let spec = spike_spectrum(100.0, 1.0);
        let o = order_spectrum(&spec, 100.1 / 3.0, 3, 0.05).unwrap();
        assert_eq!(o.orders[2].exact_freq_hz, 100.0);
        assert_eq!(o.amplitude(3), Some(1.0));
    }

    #[test]
    fn order_range_beyond_spectrum() {
        let spec = spike_spectrum(100.0, 1.0);
        assert!(matches!(
            order_spectrum(&spec, 1000.0, 3, 2.0),
            Err(Error::OrderRange { .. })
        ));
    }

    fn orders_from(amps: &[f64], floor: f64) -> OrderSpectrum {
        OrderSpectrum {
            f_rot_hz: 10.0,
            orders: amps
                .iter()
                .enumerate()
                .map(|(i, &a)| OrderLine {
                    order: (i + 1) as f64,
                    amplitude: a,
                    exact_freq_hz: (i + 1) as f64 * 10.0,
                })
                .collect(),
            search_halfwidth_hz: 1.0,
            noise_floor: floor,
        }
    }

    #[test]
    fn diagnostics_flag_follows_threshold() {
        let cutter = CutterSpec::new(3, 25.0).unwrap();
        let d = tooth_diagnostics(&orders_from(&[0.01, 0.02, 1.0], 0.0), &cutter, 0.5).unwrap();
        assert_eq!(d.status, DiagnosticStatus::Clean);
        assert!(!d.asymmetry_flag);
        assert!((d.asymmetry_ratio - 0.02).abs() < 1e-12);
        let d = tooth_diagnostics(&orders_from(&[0.2, 0.9, 1.0], 0.0), &cutter, 0.5).unwrap();
        assert_eq!(d.status, DiagnosticStatus::Asymmetric);
        assert!(d.asymmetry_flag);
        assert_eq!(d.sub_order_amplitudes, vec![0.2, 0.9]);
    }

    #[test]
    fn diagnostics_noise_guard() {
        let cutter = CutterSpec::new(3, 25.0).unwrap();
        let d = tooth_diagnostics(&orders_from(&[0.9, 0.9, 1.0], 0.2), &cutter, 0.5).unwrap();
        assert_eq!(d.status, DiagnosticStatus::Inconclusive);
        assert!(!d.asymmetry_flag);
        let d = tooth_diagnostics(&orders_from(&[0.0, 0.0, 0.0], 0.0), &cutter, 0.5).unwrap();
        assert_eq!(d.status, DiagnosticStatus::Inconclusive);
        assert_eq!(d.asymmetry_ratio, 0.0);
    }

    #[test]
    fn diagnostics_need_tooth_order() {
        let cutter = CutterSpec::new(4, 25.0).unwrap();
        assert!(matches!(
            tooth_diagnostics(&orders_from(&[1.0, 1.0, 1.0], 0.0), &cutter, 0.5),
            Err(Error::MissingOrders {
                teeth: 4,
                available: 3
            })
        ));
        let cutter = CutterSpec::new(3, 25.0).unwrap();
        assert!(tooth_diagnostics(&orders_from(&[1.0, 1.0, 1.0], 0.0), &cutter, 0.0).is_err());
    }

    #[test]
    fn single_tooth_cutter_has_no_sub_orders() {
        let cutter = CutterSpec::new(1, 25.0).unwrap();
        let d = tooth_diagnostics(&orders_from(&[1.0], 0.0), &cutter, 0.5).unwrap();
        assert!(d.sub_order_amplitudes.is_empty());
        assert_eq!(d.asymmetry_ratio, 0.0);
        assert_eq!(d.status, DiagnosticStatus::Clean);
    }
}
