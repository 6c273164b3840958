//! Checks against independent constructions: closed forms, brute-force
//! demodulation and the synthetic generator's own kinematics.

use std::f64::consts::PI;

use envspec::synth::noise_rms_for_snr;
use envspec::{
    analytic_signal, angular_resample, band_pass, crop_to_tacho, default_search_halfwidth,
    envelope, order_spectrum, synth_milling, tooth_diagnostics, waterfall, BandSpec, OrderSpectrum,
    SampledSignal, SynthConfig, TachoTrace, Window,
};

fn tone(fs: f64, n: usize, f: impl Fn(f64) -> f64) -> SampledSignal {
    SampledSignal::new("x", "N", fs, (0..n).map(|i| f(i as f64 / fs)).collect()).unwrap()
}

fn synth_orders(config: &SynthConfig) -> OrderSpectrum {
    let record = synth_milling(config).unwrap();
    let env = envelope(&record.forces()[0], &BandSpec::default()).unwrap();
    let spec = &env.envelope_spectrum;
    let hw = default_search_halfwidth(spec.df_hz(), config.f_rot_hz);
    order_spectrum(spec, config.f_rot_hz, 2 * config.teeth as usize, hw).unwrap()
}

/// Full-wave rectification followed by a moving average over one carrier
/// period, rescaled by pi/2 (mean of |cos|). Evaluated on a dense grid so the
/// averaging is not limited by the 5 kHz sampling.
fn rectify_and_smooth(f_carrier: f64, f_mod: f64, depth: f64, duration: f64) -> (f64, Vec<f64>) {
    let fs = 60_000.0;
    let n = (duration * fs) as usize;
    let window = (fs / f_carrier).round() as usize;
    let rect: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / fs;
            ((1.0 + depth * (2.0 * PI * f_mod * t).cos()) * (2.0 * PI * f_carrier * t).cos()).abs()
        })
        .collect();
    let mut acc: f64 = rect[..window].iter().sum();
    let mut smooth = Vec::with_capacity(n - window);
    for i in window..n {
        smooth.push(acc / window as f64 * PI / 2.0);
        acc += rect[i] - rect[i - window];
    }
    (fs, smooth)
}

/// Amplitude of the `f` component of `x` by direct projection.
fn project(x: &[f64], fs: f64, f: f64) -> f64 {
    let (mut c, mut s) = (0.0, 0.0);
    for (i, v) in x.iter().enumerate() {
        let w = 2.0 * PI * f * i as f64 / fs;
        c += v * w.cos();
        s += v * w.sin();
    }
    2.0 * (c * c + s * s).sqrt() / x.len() as f64
}

#[test]
fn am_envelope_agrees_with_rectifier() {
    let (fs, n) = (5000.0, 20_000);
    let x = tone(fs, n, |t| {
        (1.0 + 0.5 * (2.0 * PI * 100.0 * t).cos()) * (2.0 * PI * 1500.0 * t).cos()
    });
    let r = envelope(&x, &BandSpec::default()).unwrap();
    let spec = &r.envelope_spectrum;
    let peak = spec.peak_bin();
    assert!((spec.frequency(peak) - 100.0).abs() < 1e-9);
    let ours = spec.amplitudes().unwrap()[peak];

    let (ofs, smooth) = rectify_and_smooth(1500.0, 100.0, 0.5, 0.5);
    // Whole number of modulation periods keeps the projection leakage-free.
    let periods = (smooth.len() as f64 * 100.0 / ofs).floor();
    let oracle = project(&smooth[..(periods * ofs / 100.0) as usize], ofs, 100.0);

    assert!((oracle - 0.5).abs() < 0.01, "oracle {oracle}");
    assert!(
        (ours - oracle).abs() < 0.05 * oracle,
        "ours {ours} oracle {oracle}"
    );

    // Pointwise envelope against the closed form on the interior.
    let env = r.envelope.samples();
    for (i, e) in env.iter().enumerate().take(n - n / 20).skip(n / 20) {
        let t = i as f64 / fs;
        assert!((e - (1.0 + 0.5 * (2.0 * PI * 100.0 * t).cos())).abs() < 1e-6);
    }
}

#[test]
fn analytic_real_part_reproduces_band_limited_input() {
    let (fs, n) = (5000.0, 4096);
    let x = tone(fs, n, |t| {
        (2.0 * PI * 812.3 * t).sin() + 0.3 * (2.0 * PI * 1777.7 * t + 0.4).cos()
    });
    let filtered = band_pass(&x, &BandSpec::default()).unwrap();
    let a = analytic_signal(&filtered).unwrap();
    let err: f64 = a
        .iter()
        .zip(filtered.samples())
        .map(|(z, v)| (z.re - v).powi(2))
        .sum::<f64>()
        / n as f64;
    assert!(err.sqrt() < 1e-9);
}

#[test]
fn symmetric_cutter_sub_orders_stay_small_over_seeds() {
    for seed in 0..20 {
        let mut c = SynthConfig {
            seed,
            ..SynthConfig::default()
        };
        c.noise_rms = noise_rms_for_snr(&c, 20.0).unwrap();
        let orders = synth_orders(&c);
        let o3 = orders.amplitude(3).unwrap();
        for k in [1, 2, 4, 5] {
            let a = orders.amplitude(k).unwrap();
            assert!(a < 0.05 * o3, "seed {seed} order {k}: {a} vs {o3}");
        }
    }
}

#[test]
fn ratio_rises_as_one_tooth_weakens() {
    let ratios: Vec<f64> = [1.0, 0.9, 0.8, 0.7, 0.6, 0.5]
        .iter()
        .map(|&g| {
            let c = SynthConfig {
                tooth_gains: vec![1.0, 1.0, g],
                ..SynthConfig::default()
            };
            let record = synth_milling(&c).unwrap();
            tooth_diagnostics(&synth_orders(&c), record.cutter().unwrap(), 0.5)
                .unwrap()
                .asymmetry_ratio
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]), "{ratios:?}");
}

#[test]
fn rotating_gains_keeps_order_amplitudes() {
    let base = SynthConfig {
        tooth_gains: vec![1.0, 0.8, 0.6],
        ..SynthConfig::default()
    };
    let shifted = SynthConfig {
        tooth_gains: vec![0.8, 0.6, 1.0],
        ..base.clone()
    };
    let (a, b) = (synth_orders(&base), synth_orders(&shifted));
    for (u, v) in a.orders.iter().zip(&b.orders) {
        assert!(
            (u.amplitude - v.amplitude).abs() < 0.01 * u.amplitude,
            "{u:?} {v:?}"
        );
    }
}

#[test]
fn ramped_resampling_follows_shaft_angle() {
    // Resampling the time axis itself exposes the sampling instants; they
    // must match the generator's exact quadratic angle law.
    let c = SynthConfig {
        speed_ramp_fraction: 0.10,
        ..SynthConfig::default()
    };
    let record = synth_milling(&c).unwrap();
    let clock = tone(c.sample_rate_hz, c.len(), |t| t);
    let (cropped, tacho) = crop_to_tacho(&clock, record.tacho().unwrap()).unwrap();
    let t0 = record.tacho().unwrap().pulse_times_s()[0] - tacho.pulse_times_s()[0];
    let spr = 120;
    let y = angular_resample(&cropped, &tacho, spr).unwrap();
    let per_tooth = spr / c.teeth as usize;
    let impacts = c.impacts();
    let mut checked = 0;
    for (j, &(t_i, _)) in impacts.iter().enumerate() {
        let m = j * per_tooth;
        if m >= y.len() {
            break;
        }
        let t = y.samples()[m] + t0;
        let samples_per_s =
            spr as f64 * c.f_rot_hz * (1.0 + c.speed_ramp_fraction * t / c.duration_s);
        let jitter = (t - t_i).abs() * samples_per_s;
        assert!(jitter < 0.5, "impact {j}: jitter {jitter}");
        checked += 1;
    }
    assert!(checked > 150);
}

#[test]
fn misestimated_speed_still_finds_tooth_order() {
    let c = SynthConfig::default();
    let record = synth_milling(&c).unwrap();
    let env = envelope(&record.forces()[0], &BandSpec::default()).unwrap();
    let orders = order_spectrum(&env.envelope_spectrum, c.f_rot_hz * 1.01, 6, 2.0).unwrap();
    assert!(
        (orders.orders[2].exact_freq_hz - 100.0).abs() < 0.5 * env.envelope_spectrum.df_hz() + 0.01
    );
}

#[test]
fn waterfall_tracks_tone_switch() {
    let (fs, n) = (5000.0, 20_000);
    let x = tone(fs, n, |t| {
        if t < 2.0 {
            (2.0 * PI * 500.0 * t).sin()
        } else {
            (2.0 * PI * 1500.0 * t).sin()
        }
    });
    let wf = waterfall(&x, 2000, 0.0, Window::Hann).unwrap();
    assert_eq!(wf.len(), 10);
    for (start, spec) in wf.slices() {
        let f = spec.frequency(spec.peak_bin());
        let expected = if *start < 2.0 { 500.0 } else { 1500.0 };
        assert_eq!(f, expected);
    }
}

#[test]
fn constant_speed_resampling_is_time_resampling() {
    let fs = 5000.0;
    let x = tone(fs, 5001, |t| (2.0 * PI * 150.0 * t).sin());
    let pulses: Vec<f64> = (0..=25).map(|r| r as f64 * 0.04).collect();
    let tacho = TachoTrace::new(pulses, 1).unwrap();
    // 200 samples per revolution at 25 rev/s is exactly the time grid.
    let y = angular_resample(&x, &tacho, 200).unwrap();
    assert_eq!(y.len(), 5001);
    for (a, b) in y.samples().iter().zip(x.samples()) {
        assert!((a - b).abs() < 1e-6);
    }
    // Off-grid angle spacing: compare with the tone evaluated at the instants.
    let y = angular_resample(&x, &tacho, 64).unwrap();
    for (m, v) in y.samples().iter().enumerate().skip(2).take(y.len() - 4) {
        let t = m as f64 * 0.04 / 64.0;
        assert!((v - (2.0 * PI * 150.0 * t).sin()).abs() < 2e-3);
    }
}
