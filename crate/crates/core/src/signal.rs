//! Signal and acquisition-record value types.
//!
//! Every type here validates its invariants on construction and is immutable
//! afterwards, so values can be shared freely between worker threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniformly sampled, real-valued channel.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    name: String,
    unit: String,
    sample_rate_hz: f64,
    samples: Vec<f64>,
}

impl SampledSignal {
    pub fn new(
        name: impl Into<String>,
        unit: impl Into<String>,
        sample_rate_hz: f64,
        samples: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::invariant(
                "sample_rate_hz > 0",
                format!("channel `{name}` has sample rate {sample_rate_hz}"),
            ));
        }
        if samples.is_empty() {
            return Err(Error::invariant(
                "length >= 1",
                format!("channel `{name}` has no samples"),
            ));
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample {
                channel: name,
                index,
            });
        }
        Ok(Self {
            name,
            unit: unit.into(),
            sample_rate_hz,
            samples,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; a signal holds at least one sample.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Time of sample `index`, measured from the first sample.
    pub fn time_of(&self, index: usize) -> f64 {
        index as f64 / self.sample_rate_hz
    }

    /// Same metadata, new samples.
    pub fn with_samples(&self, samples: Vec<f64>) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.unit.clone(),
            self.sample_rate_hz,
            samples,
        )
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rms(&self) -> f64 {
        rms(&self.samples)
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Samples with index in `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if start >= end || end > self.len() {
            return Err(Error::invariant(
                "0 <= start < end <= length",
                format!("slice {start}..{end} of a {}-sample signal", self.len()),
            ));
        }
        self.with_samples(self.samples[start..end].to_vec())
    }

    /// Samples whose time lies in `[start_s, end_s]`.
    pub fn crop_time(&self, start_s: f64, end_s: f64) -> Result<Self> {
        let first = (start_s * self.sample_rate_hz).ceil().max(0.0) as usize;
        let last = ((end_s * self.sample_rate_hz).floor() as usize).min(self.len() - 1);
        self.slice(first, last + 1)
    }

    /// Splits into fixed-size blocks; see [`slice_blocks`].
    pub fn blocks(&self, block_size: usize, overlap: f64) -> Result<Vec<SampledSignal>> {
        slice_blocks(self, block_size, overlap)
    }
}

pub(crate) fn rms(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    (samples.iter().map(|v| v * v).sum::<f64>() / samples.len() as f64).sqrt()
}

/// Hop between consecutive block starts for a given overlap fraction.
pub fn block_step(block_size: usize, overlap: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::invariant(
            "overlap in [0, 1)",
            format!("overlap {overlap}"),
        ));
    }
    if block_size == 0 {
        return Err(Error::invariant("block_size >= 1", "block size 0"));
    }
    let step = (block_size as f64 * (1.0 - overlap)).round() as usize;
    Ok(step.max(1))
}

/// Start indices of the blocks [`slice_blocks`] would produce.
pub fn block_starts(len: usize, block_size: usize, overlap: f64) -> Result<Vec<usize>> {
    let step = block_step(block_size, overlap)?;
    if block_size > len {
        return Err(Error::BlockTooLarge {
            block: block_size,
            len,
        });
    }
    let count = (len - block_size) / step + 1;
    Ok((0..count).map(|i| i * step).collect())
}

/// Cuts `signal` into blocks of `block_size` samples.
///
/// Consecutive blocks start `round(block_size * (1 - overlap))` samples
/// apart. A trailing partial block is discarded, never zero-padded.
pub fn slice_blocks(
    signal: &SampledSignal,
    block_size: usize,
    overlap: f64,
) -> Result<Vec<SampledSignal>> {
    block_starts(signal.len(), block_size, overlap)?
        .into_iter()
        .map(|start| signal.slice(start, start + block_size))
        .collect()
}

/// Once-per-revolution (or `pulses_per_rev`) tachometer pulse times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TachoTraceRaw")]
pub struct TachoTrace {
    pulse_times_s: Vec<f64>,
    pulses_per_rev: u32,
}

#[derive(Deserialize)]
struct TachoTraceRaw {
    pulse_times_s: Vec<f64>,
    pulses_per_rev: u32,
}

impl TryFrom<TachoTraceRaw> for TachoTrace {
    type Error = Error;

    fn try_from(raw: TachoTraceRaw) -> Result<Self> {
        TachoTrace::new(raw.pulse_times_s, raw.pulses_per_rev)
    }
}

impl TachoTrace {
    pub fn new(pulse_times_s: Vec<f64>, pulses_per_rev: u32) -> Result<Self> {
        if pulses_per_rev < 1 {
            return Err(Error::invariant("pulses_per_rev >= 1", "pulses_per_rev 0"));
        }
        if let Some(i) = pulse_times_s.iter().position(|t| !t.is_finite()) {
            return Err(Error::invariant(
                "pulse times finite",
                format!("pulse {i} is {}", pulse_times_s[i]),
            ));
        }
        if let Some(i) = pulse_times_s.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::invariant(
                "pulse_times_s strictly increasing",
                format!(
                    "pulse {} at {} s does not follow {} s",
                    i + 1,
                    pulse_times_s[i + 1],
                    pulse_times_s[i]
                ),
            ));
        }
        Ok(Self {
            pulse_times_s,
            pulses_per_rev,
        })
    }

    pub fn pulse_times_s(&self) -> &[f64] {
        &self.pulse_times_s
    }

    pub fn pulses_per_rev(&self) -> u32 {
        self.pulses_per_rev
    }

    pub fn len(&self) -> usize {
        self.pulse_times_s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulse_times_s.is_empty()
    }
}

/// Milling cutter geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CutterSpecRaw")]
pub struct CutterSpec {
    teeth: u32,
    diameter_mm: f64,
}

#[derive(Deserialize)]
struct CutterSpecRaw {
    teeth: u32,
    diameter_mm: f64,
}

impl TryFrom<CutterSpecRaw> for CutterSpec {
    type Error = Error;

    fn try_from(raw: CutterSpecRaw) -> Result<Self> {
        CutterSpec::new(raw.teeth, raw.diameter_mm)
    }
}

impl CutterSpec {
    pub fn new(teeth: u32, diameter_mm: f64) -> Result<Self> {
        if teeth < 1 {
            return Err(Error::invariant("teeth >= 1", "cutter with 0 teeth"));
        }
        if !(diameter_mm.is_finite() && diameter_mm > 0.0) {
            return Err(Error::invariant(
                "diameter_mm > 0",
                format!("diameter {diameter_mm} mm"),
            ));
        }
        Ok(Self { teeth, diameter_mm })
    }

    pub fn teeth(&self) -> u32 {
        self.teeth
    }

    pub fn diameter_mm(&self) -> f64 {
        self.diameter_mm
    }
}

/// Cutting parameters of one pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CutConditionsRaw")]
pub struct CutConditions {
    cutting_speed_m_per_min: f64,
    feed_mm_per_tooth: f64,
    depth_of_cut_mm: f64,
}

#[derive(Deserialize)]
struct CutConditionsRaw {
    cutting_speed_m_per_min: f64,
    feed_mm_per_tooth: f64,
    depth_of_cut_mm: f64,
}

impl TryFrom<CutConditionsRaw> for CutConditions {
    type Error = Error;

    fn try_from(raw: CutConditionsRaw) -> Result<Self> {
        CutConditions::new(
            raw.cutting_speed_m_per_min,
            raw.feed_mm_per_tooth,
            raw.depth_of_cut_mm,
        )
    }
}

impl CutConditions {
    pub fn new(
        cutting_speed_m_per_min: f64,
        feed_mm_per_tooth: f64,
        depth_of_cut_mm: f64,
    ) -> Result<Self> {
        for (invariant, value) in [
            ("cutting_speed_m_per_min > 0", cutting_speed_m_per_min),
            ("feed_mm_per_tooth > 0", feed_mm_per_tooth),
            ("depth_of_cut_mm > 0", depth_of_cut_mm),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invariant(invariant, format!("got {value}")));
            }
        }
        Ok(Self {
            cutting_speed_m_per_min,
            feed_mm_per_tooth,
            depth_of_cut_mm,
        })
    }

    pub fn cutting_speed_m_per_min(&self) -> f64 {
        self.cutting_speed_m_per_min
    }

    pub fn feed_mm_per_tooth(&self) -> f64 {
        self.feed_mm_per_tooth
    }

    pub fn depth_of_cut_mm(&self) -> f64 {
        self.depth_of_cut_mm
    }
}

/// Which sensor family a channel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Force,
    Acceleration,
}

pub const DEFAULT_BLOCK_SIZE: usize = 20_000;
pub const DEFAULT_BUFFER_SIZE: usize = 32_768;
const MAX_CHANNELS_PER_KIND: usize = 3;

/// One experiment: force and acceleration channels plus optional tachometer
/// and cutting metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct AcquisitionRecord {
    forces: Vec<SampledSignal>,
    accelerations: Vec<SampledSignal>,
    tacho: Option<TachoTrace>,
    cutter: Option<CutterSpec>,
    conditions: Option<CutConditions>,
    block_size: usize,
    buffer_size: usize,
}

impl AcquisitionRecord {
    pub fn new(forces: Vec<SampledSignal>, accelerations: Vec<SampledSignal>) -> Result<Self> {
        if forces.len() > MAX_CHANNELS_PER_KIND || accelerations.len() > MAX_CHANNELS_PER_KIND {
            return Err(Error::invariant(
                "at most 3 force and 3 acceleration channels",
                format!(
                    "{} force and {} acceleration channels",
                    forces.len(),
                    accelerations.len()
                ),
            ));
        }
        let mut all = forces.iter().chain(accelerations.iter());
        let first = all
            .next()
            .ok_or_else(|| Error::invariant("at least one channel", "record has no channels"))?;
        for ch in all {
            if ch.len() != first.len() {
                return Err(Error::LengthMismatch {
                    channel: ch.name().to_string(),
                    expected: first.len(),
                    actual: ch.len(),
                });
            }
            if ch.sample_rate_hz() != first.sample_rate_hz() {
                return Err(Error::RateMismatch {
                    channel: ch.name().to_string(),
                    expected: first.sample_rate_hz(),
                    actual: ch.sample_rate_hz(),
                });
            }
        }
        Ok(Self {
            forces,
            accelerations,
            tacho: None,
            cutter: None,
            conditions: None,
            block_size: DEFAULT_BLOCK_SIZE,
            buffer_size: DEFAULT_BUFFER_SIZE,
        })
    }

    pub fn with_tacho(mut self, tacho: TachoTrace) -> Self {
        self.tacho = Some(tacho);
        self
    }

    pub fn with_cutter(mut self, cutter: CutterSpec) -> Self {
        self.cutter = Some(cutter);
        self
    }

    pub fn with_conditions(mut self, conditions: CutConditions) -> Self {
        self.conditions = Some(conditions);
        self
    }

    pub fn with_blocking(mut self, block_size: usize, buffer_size: usize) -> Result<Self> {
        if block_size == 0 || buffer_size == 0 {
            return Err(Error::invariant(
                "block_size >= 1 and buffer_size >= 1",
                format!("block {block_size}, buffer {buffer_size}"),
            ));
        }
        if block_size > buffer_size {
            return Err(Error::invariant(
                "block_size <= buffer_size",
                format!("block {block_size} > buffer {buffer_size}"),
            ));
        }
        self.block_size = block_size;
        self.buffer_size = buffer_size;
        Ok(self)
    }

    pub fn forces(&self) -> &[SampledSignal] {
        &self.forces
    }

    pub fn accelerations(&self) -> &[SampledSignal] {
        &self.accelerations
    }

    pub fn tacho(&self) -> Option<&TachoTrace> {
        self.tacho.as_ref()
    }

    pub fn cutter(&self) -> Option<&CutterSpec> {
        self.cutter.as_ref()
    }

    pub fn conditions(&self) -> Option<&CutConditions> {
        self.conditions.as_ref()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn buffer_size(&self) -> usize {
        self.buffer_size
    }

    /// All channels, forces first.
    pub fn channels(&self) -> impl Iterator<Item = (ChannelKind, &SampledSignal)> {
        self.forces.iter().map(|s| (ChannelKind::Force, s)).chain(
            self.accelerations
                .iter()
                .map(|s| (ChannelKind::Acceleration, s)),
        )
    }

    /// Case-insensitive lookup by channel name.
    pub fn channel(&self, name: &str) -> Option<&SampledSignal> {
        self.channels()
            .map(|(_, s)| s)
            .find(|s| s.name().eq_ignore_ascii_case(name))
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.channels()
            .next()
            .map(|(_, s)| s.sample_rate_hz())
            .unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.channels().next().map(|(_, s)| s.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn duration_s(&self) -> f64 {
        self.len() as f64 / self.sample_rate_hz()
    }
}
