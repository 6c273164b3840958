//! Browser bindings for the envspec demo page (`www/index.html`).
//!
//! Every export takes and returns plain numbers, vectors or JSON strings, so
//! the same functions run natively under `cargo test`.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use envspec::{
    envelope, order_spectrum, synth_milling, tooth_diagnostics, waterfall, BandSpec, CutterSpec,
    OrderLine, SynthConfig, ToothDiagnostics, Window,
};

/// Knobs exposed on the demo page. Missing fields take the library defaults.
#[derive(Debug, Clone, Deserialize)]
#[serde(default)]
pub struct DemoParams {
    pub f_rot_hz: f64,
    pub tooth_gains: Vec<f64>,
    pub damping_ratio: f64,
    pub noise_rms: f64,
    pub speed_ramp_fraction: f64,
    pub seed: u64,
    pub band_low_hz: f64,
    pub band_high_hz: f64,
    pub threshold: f64,
    /// Points per plotted trace; longer series are decimated by peak picking.
    pub plot_points: usize,
}

impl Default for DemoParams {
    fn default() -> Self {
        let s = SynthConfig::default();
        let b = BandSpec::default();
        Self {
            f_rot_hz: s.f_rot_hz,
            tooth_gains: s.tooth_gains,
            damping_ratio: s.damping_ratio,
            noise_rms: s.noise_rms,
            speed_ramp_fraction: s.speed_ramp_fraction,
            seed: s.seed,
            band_low_hz: b.low_hz(),
            band_high_hz: b.high_hz(),
            threshold: envspec::DEFAULT_ASYMMETRY_THRESHOLD,
            plot_points: 800,
        }
    }
}

impl DemoParams {
    fn synth_config(&self) -> SynthConfig {
        SynthConfig {
            f_rot_hz: self.f_rot_hz,
            teeth: self.tooth_gains.len() as u32,
            tooth_gains: self.tooth_gains.clone(),
            damping_ratio: self.damping_ratio,
            noise_rms: self.noise_rms,
            speed_ramp_fraction: self.speed_ramp_fraction,
            seed: self.seed,
            ..SynthConfig::default()
        }
    }

    fn band(&self) -> envspec::Result<BandSpec> {
        let taper = (0.5 * (self.band_high_hz - self.band_low_hz)).min(50.0);
        BandSpec::new(self.band_low_hz, self.band_high_hz, taper)
    }
}

#[derive(Debug, Serialize)]
pub struct Trace {
    pub x0: f64,
    pub dx: f64,
    pub y: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct EnvelopeView {
    pub sample_rate_hz: f64,
    pub waveform: Trace,
    pub filtered: Trace,
    pub envelope: Trace,
    pub envelope_spectrum: Trace,
    pub orders: Vec<OrderLine>,
    pub diagnostics: ToothDiagnostics,
}

#[derive(Debug, Serialize)]
pub struct WaterfallView {
    pub start_s: Vec<f64>,
    pub df_hz: f64,
    /// Row per slice, amplitudes in dB re the overall maximum.
    pub db: Vec<Vec<f64>>,
}

/// Keeps the largest magnitude of each bucket so impacts stay visible.
fn decimate(x0: f64, dx: f64, y: &[f64], points: usize) -> Trace {
    let points = points.max(2);
    if y.len() <= points {
        return Trace {
            x0,
            dx,
            y: y.to_vec(),
        };
    }
    let stride = y.len().div_ceil(points);
    let y = y
        .chunks(stride)
        .map(|c| {
            c.iter()
                .copied()
                .fold(0.0_f64, |a, v| if v.abs() > a.abs() { v } else { a })
        })
        .collect();
    Trace {
        x0,
        dx: dx * stride as f64,
        y,
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse(params_json: &str) -> Result<DemoParams, String> {
    if params_json.trim().is_empty() {
        return Ok(DemoParams::default());
    }
    serde_json::from_str(params_json).map_err(err)
}

/// Synthesises a record, demodulates `fx` and reports the order table.
pub fn envelope_view(params: &DemoParams) -> Result<EnvelopeView, String> {
    let config = params.synth_config();
    let record = synth_milling(&config).map_err(err)?;
    let band = params.band().map_err(err)?;
    band.check_nyquist(record.sample_rate_hz()).map_err(err)?;
    let fx = &record.forces()[0];
    let result = envelope(fx, &band).map_err(err)?;
    let spec = &result.envelope_spectrum;

    // Mean speed of the ramp so the order search follows the average rate.
    let f_rot = config.revolutions_at(config.duration_s) / config.duration_s;
    let teeth = config.teeth as usize;
    let hw = envspec::default_search_halfwidth(spec.df_hz(), f_rot);
    let orders = order_spectrum(spec, f_rot, 2 * teeth, hw).map_err(err)?;
    let cutter = CutterSpec::new(config.teeth, config.diameter_mm).map_err(err)?;
    let diagnostics = tooth_diagnostics(&orders, &cutter, params.threshold).map_err(err)?;

    let fs = fx.sample_rate_hz();
    let dt = 1.0 / fs;
    let amps = spec.amplitudes().unwrap_or_default();
    let upto = ((2.5 * teeth as f64 * f_rot / spec.df_hz()).ceil() as usize + 1).min(amps.len());
    Ok(EnvelopeView {
        sample_rate_hz: fs,
        waveform: decimate(0.0, dt, fx.samples(), params.plot_points),
        filtered: decimate(0.0, dt, result.filtered.samples(), params.plot_points),
        envelope: decimate(0.0, dt, result.envelope.samples(), params.plot_points),
        envelope_spectrum: Trace {
            x0: 0.0,
            dx: spec.df_hz(),
            y: amps[..upto].to_vec(),
        },
        orders: orders.orders,
        diagnostics,
    })
}

/// Block-wise Hann spectra of the synthetic `fx` channel.
pub fn waterfall_view(
    params: &DemoParams,
    block: usize,
    overlap: f64,
) -> Result<WaterfallView, String> {
    let record = synth_milling(&params.synth_config()).map_err(err)?;
    let wf = waterfall(&record.forces()[0], block, overlap, Window::Hann).map_err(err)?;
    let peak = wf
        .slices()
        .iter()
        .flat_map(|(_, s)| s.amplitudes().unwrap_or_default().iter().copied())
        .fold(f64::MIN_POSITIVE, f64::max);
    let db = wf
        .slices()
        .iter()
        .map(|(_, s)| {
            s.amplitudes()
                .unwrap_or_default()
                .iter()
                .map(|a| 20.0 * (a.max(peak * 1e-6) / peak).log10())
                .collect()
        })
        .collect();
    Ok(WaterfallView {
        start_s: wf.slices().iter().map(|(t, _)| *t).collect(),
        df_hz: wf.slices().first().map_or(0.0, |(_, s)| s.df_hz()),
        db,
    })
}

/// Full envelope pipeline on a synthetic record; returns JSON.
#[wasm_bindgen(js_name = analyzeSynthetic)]
pub fn analyze_synthetic(params_json: &str) -> Result<String, String> {
    let view = envelope_view(&parse(params_json)?)?;
    serde_json::to_string(&view).map_err(err)
}

/// Gain of the band-pass mask at `points` frequencies from 0 to `fs / 2`.
#[wasm_bindgen(js_name = bandGain)]
pub fn band_gain(
    low_hz: f64,
    high_hz: f64,
    taper_hz: f64,
    sample_rate_hz: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let band = BandSpec::new(low_hz, high_hz, taper_hz).map_err(err)?;
    band.check_nyquist(sample_rate_hz).map_err(err)?;
    let points = points.max(2);
    let step = 0.5 * sample_rate_hz / (points - 1) as f64;
    Ok((0..points).map(|i| band.gain(i as f64 * step)).collect())
}

/// Waterfall of a synthetic record; returns JSON.
#[wasm_bindgen(js_name = waterfallSynthetic)]
pub fn waterfall_synthetic(
    params_json: &str,
    block: usize,
    overlap: f64,
) -> Result<String, String> {
    let view = waterfall_view(&parse(params_json)?, block, overlap)?;
    serde_json::to_string(&view).map_err(err)
}
