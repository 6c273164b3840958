//! Synthetic milling signals with known tooth-order content.
//!
//! Each tooth strikes once per revolution and rings a single damped
//! structural mode. Tooth gains scale the individual strikes, so uneven
//! gains produce energy at the sub-tooth orders in a controlled way.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{AcquisitionRecord, CutterSpec, SampledSignal, TachoTrace};

/// Parameters of [`synth_milling`]. Defaults describe a 3-tooth, 25 mm
/// cutter near 2,000 rpm ringing a 1.5 kHz mode, sampled at 5 kHz for 2 s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub f_rot_hz: f64,
    pub teeth: u32,
    pub tooth_gains: Vec<f64>,
    pub resonance_hz: f64,
    pub damping_ratio: f64,
    pub impact_energy: f64,
    pub noise_rms: f64,
    pub duration_s: f64,
    pub sample_rate_hz: f64,
    /// Fractional rise of the rotation frequency over the record.
    pub speed_ramp_fraction: f64,
    pub seed: u64,
    pub diameter_mm: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            f_rot_hz: 33.33,
            teeth: 3,
            tooth_gains: vec![1.0; 3],
            resonance_hz: 1500.0,
            damping_ratio: 0.05,
            impact_energy: 1.0,
            noise_rms: 0.0,
            duration_s: 2.0,
            sample_rate_hz: 5000.0,
            speed_ramp_fraction: 0.0,
            seed: 0,
            diameter_mm: 25.0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("f_rot_hz > 0", self.f_rot_hz),
            ("resonance_hz > 0", self.resonance_hz),
            ("impact_energy > 0", self.impact_energy),
            ("duration_s > 0", self.duration_s),
            ("sample_rate_hz > 0", self.sample_rate_hz),
            ("diameter_mm > 0", self.diameter_mm),
        ];
        for (invariant, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invariant(invariant, format!("got {v}")));
            }
        }
        if self.teeth < 1 {
            return Err(Error::invariant("teeth >= 1", "0 teeth"));
        }
        if self.tooth_gains.len() != self.teeth as usize {
            return Err(Error::invariant(
                "teeth == length(tooth_gains)",
                format!("{} teeth but {} gains", self.teeth, self.tooth_gains.len()),
            ));
        }
        if let Some(g) = self
            .tooth_gains
            .iter()
            .find(|g| !(g.is_finite() && **g >= 0.0))
        {
            return Err(Error::invariant("tooth gains >= 0", format!("gain {g}")));
        }
        if !(self.damping_ratio > 0.0 && self.damping_ratio < 1.0) {
            return Err(Error::invariant(
                "damping_ratio in (0, 1)",
                format!("got {}", self.damping_ratio),
            ));
        }
        if !(self.noise_rms.is_finite() && self.noise_rms >= 0.0) {
            return Err(Error::invariant(
                "noise_rms >= 0",
                format!("got {}", self.noise_rms),
            ));
        }
        if !(self.speed_ramp_fraction.is_finite() && self.speed_ramp_fraction >= 0.0) {
            return Err(Error::invariant(
                "speed_ramp_fraction >= 0",
                format!("got {}", self.speed_ramp_fraction),
            ));
        }
        if self.resonance_hz >= self.sample_rate_hz / 2.0 {
            return Err(Error::invariant(
                "resonance_hz < sample_rate_hz / 2",
                format!(
                    "{} Hz at {} Hz sampling",
                    self.resonance_hz, self.sample_rate_hz
                ),
            ));
        }
        let fastest_tooth_hz = self.teeth as f64 * self.f_rot_hz * (1.0 + self.speed_ramp_fraction);
        if fastest_tooth_hz >= self.resonance_hz {
            return Err(Error::invariant(
                "teeth * f_rot_hz * (1 + ramp) < resonance_hz",
                format!(
                    "tooth rate {fastest_tooth_hz} Hz vs resonance {} Hz",
                    self.resonance_hz
                ),
            ));
        }
        Ok(())
    }

    /// Number of samples generated.
    pub fn len(&self) -> usize {
        (self.duration_s * self.sample_rate_hz).round() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Shaft position in revolutions at time `t`.
    pub fn revolutions_at(&self, t: f64) -> f64 {
        let ramp_rate = self.f_rot_hz * self.speed_ramp_fraction / self.duration_s;
        self.f_rot_hz * t + 0.5 * ramp_rate * t * t
    }

    /// Time at which the shaft has turned `revs` revolutions.
    pub fn time_at_revolutions(&self, revs: f64) -> f64 {
        let a = 0.5 * self.f_rot_hz * self.speed_ramp_fraction / self.duration_s;
        let b = self.f_rot_hz;
        // Root of a t^2 + b t - revs = 0, written to stay accurate as a -> 0.
        2.0 * revs / (b + (b * b + 4.0 * a * revs).sqrt())
    }

    /// Strike times inside `[0, duration)` with the striking tooth index.
    pub fn impacts(&self) -> Vec<(f64, usize)> {
        let n = self.teeth as usize;
        let mut out = Vec::new();
        for j in 0.. {
            let t = self.time_at_revolutions(j as f64 / n as f64);
            if t >= self.duration_s {
                break;
            }
            out.push((t, j % n));
        }
        out
    }

    /// Once-per-revolution pulses at angle zero inside `[0, duration)`.
    pub fn tacho_pulses(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for r in 0.. {
            let t = self.time_at_revolutions(r as f64);
            if t >= self.duration_s {
                break;
            }
            out.push(t);
        }
        out
    }
}

/// Noise-free impact response, one value per sample.
pub fn clean_waveform(config: &SynthConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let fs = config.sample_rate_hz;
    let n = config.len();
    let decay = config.damping_ratio * 2.0 * PI * config.resonance_hz;
    let omega_d = 2.0 * PI * config.resonance_hz * (1.0 - config.damping_ratio.powi(2)).sqrt();
    // Ring-downs are cut once they fall below 1e-17 of their peak.
    let ring_len = ((39.0 / decay) * fs).ceil() as usize + 1;
    let mut x = vec![0.0; n];
    for (t_i, tooth) in config.impacts() {
        let amp = config.tooth_gains[tooth] * config.impact_energy;
        if amp == 0.0 {
            continue;
        }
        let first = (t_i * fs).ceil() as usize;
        for (idx, slot) in x.iter_mut().enumerate().skip(first).take(ring_len) {
            let dt = idx as f64 / fs - t_i;
            *slot += amp * (-decay * dt).exp() * (omega_d * dt).sin();
        }
    }
    Ok(x)
}

/// Generates a record with identical force (`Fx`, N) and acceleration
/// (`ax`, m/s^2) channels plus a once-per-revolution tachometer.
pub fn synth_milling(config: &SynthConfig) -> Result<AcquisitionRecord> {
    let mut x = clean_waveform(config)?;
    if config.noise_rms > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let normal = Normal::new(0.0, config.noise_rms)
            .map_err(|e| Error::invariant("noise_rms >= 0", e.to_string()))?;
        for v in &mut x {
            *v += normal.sample(&mut rng);
        }
    }
    let force = SampledSignal::new("Fx", "N", config.sample_rate_hz, x.clone())?;
    let accel = SampledSignal::new("ax", "m/s^2", config.sample_rate_hz, x)?;
    let record = AcquisitionRecord::new(vec![force], vec![accel])?
        .with_cutter(CutterSpec::new(config.teeth, config.diameter_mm)?);
    let pulses = config.tacho_pulses();
    Ok(if pulses.len() >= 2 {
        record.with_tacho(TachoTrace::new(pulses, 1)?)
    } else {
        record
    })
}

/// Noise RMS giving `snr_db` relative to the clean waveform's RMS.
pub fn noise_rms_for_snr(config: &SynthConfig, snr_db: f64) -> Result<f64> {
    let clean = clean_waveform(config)?;
    Ok(crate::signal::rms(&clean) / 10f64.powf(snr_db / 20.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = SynthConfig::default();
        c.validate().unwrap();
        let rec = synth_milling(&c).unwrap();
        assert_eq!(rec.len(), 10_000);
        assert_eq!(rec.forces()[0].unit(), "N");
        assert_eq!(rec.accelerations()[0].samples(), rec.forces()[0].samples());
        assert_eq!(rec.cutter().unwrap().teeth(), 3);
        // 33.33 rev/s for 2 s: pulses at revolutions 0..=66
        assert_eq!(rec.tacho().unwrap().len(), 67);
        // 3 strikes per revolution, ~100 per second
        assert_eq!(c.impacts().len(), 200);
    }

    #[test]
    fn invariant_violations() {
        let bad = |f: fn(&mut SynthConfig)| {
            let mut c = SynthConfig::default();
            f(&mut c);
            c.validate().unwrap_err().to_string()
        };
        assert!(bad(|c| c.tooth_gains = vec![1.0, 1.0]).contains("tooth_gains"));
        assert!(bad(|c| c.resonance_hz = 2600.0).contains("sample_rate_hz / 2"));
        assert!(bad(|c| c.damping_ratio = 1.0).contains("damping_ratio"));
        assert!(bad(|c| c.f_rot_hz = 600.0).contains("resonance_hz"));
        assert!(bad(|c| c.tooth_gains = vec![1.0, -1.0, 1.0]).contains("gains"));
    }

    #[test]
    fn single_tooth_ringdowns_start_on_time() {
        let c = SynthConfig {
            teeth: 1,
            tooth_gains: vec![1.0],
            f_rot_hz: 20.3,
            duration_s: 1.0,
            ..SynthConfig::default()
        };
        let impacts = c.impacts();
        assert_eq!(
            impacts.len(),
            (c.duration_s * c.f_rot_hz).floor() as usize + 1
        );
        let x = clean_waveform(&c).unwrap();
        let fs = c.sample_rate_hz;
        // Continuous-time maximum of a step-excited ring-down follows the
        // strike by atan(omega_d / sigma) / omega_d.
        let sigma = c.damping_ratio * 2.0 * PI * c.resonance_hz;
        let omega_d = 2.0 * PI * c.resonance_hz * (1.0 - c.damping_ratio.powi(2)).sqrt();
        let peak_delay_samples = (omega_d / sigma).atan() / omega_d * fs;
        assert!(peak_delay_samples < 1.0);
        for (t_i, _) in impacts {
            let onset = (t_i * fs).ceil() as usize;
            if onset > 0 && (onset - 1) as f64 / fs < t_i {
                assert!(x[onset - 1].abs() < 1e-9, "activity before strike at {t_i}");
            }
            assert!(x[onset].abs() > 1e-3 || onset as f64 / fs == t_i);
            let dt = 1.0 / (4.0 * c.resonance_hz);
            let probe = (-sigma * dt).exp() * (omega_d * dt).sin();
            assert!(probe > 0.9);
        }
    }

    #[test]
    fn same_seed_same_record() {
        let c = SynthConfig {
            noise_rms: 0.1,
            seed: 7,
            ..SynthConfig::default()
        };
        assert_eq!(synth_milling(&c).unwrap(), synth_milling(&c).unwrap());
        let other = SynthConfig {
            seed: 8,
            ..c.clone()
        };
        assert_ne!(synth_milling(&c).unwrap(), synth_milling(&other).unwrap());
    }

    #[test]
    fn ramp_time_inverts_angle() {
        let c = SynthConfig {
            speed_ramp_fraction: 0.1,
            ..SynthConfig::default()
        };
        for revs in [0.0, 0.5, 10.0, 66.0] {
            let t = c.time_at_revolutions(revs);
            assert!((c.revolutions_at(t) - revs).abs() < 1e-9);
        }
    }

    #[test]
    fn energy_scales_linearly() {
        let a = SynthConfig::default();
        let b = SynthConfig {
            impact_energy: 2.0,
            ..a.clone()
        };
        let ra = crate::signal::rms(&clean_waveform(&a).unwrap());
        let rb = crate::signal::rms(&clean_waveform(&b).unwrap());
        assert!((rb / ra - 2.0).abs() < 1e-9);
    }

    #[test]
    fn symmetric_teeth_are_periodic() {
        // f_rot = 100/3 Hz: tooth period exactly 50 samples.
        let c = SynthConfig {
            f_rot_hz: 100.0 / 3.0,
            ..SynthConfig::default()
        };
        let x = clean_waveform(&c).unwrap();
        let lag = 50;
        let (a, b) = (&x[..x.len() - lag], &x[lag..]);
        let dot: f64 = a.iter().zip(b).map(|(p, q)| p * q).sum();
        let na: f64 = a.iter().map(|p| p * p).sum();
        let nb: f64 = b.iter().map(|q| q * q).sum();
        assert!(dot / (na * nb).sqrt() > 0.999);
    }
}
