use serde::Serialize;

use envspec::{BandSpec, ChannelKind, OrderLine, ToothDiagnostics};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrotSource {
    Tacho,
    Kinematics,
    Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderDomain {
    Time,
    Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Clean,
    Asymmetry,
    Inconclusive,
}

#[derive(Debug, Serialize)]
pub struct InputChannel {
    pub name: String,
    pub unit: String,
    pub kind: ChannelKind,
}

#[derive(Debug, Serialize)]
pub struct InputMeta {
    pub path: String,
    pub format: &'static str,
    pub sample_rate_hz: f64,
    pub samples: usize,
    pub duration_s: f64,
    pub channels: Vec<InputChannel>,
    pub tacho_pulses: usize,
}

#[derive(Debug, Serialize)]
pub struct BlockInfo {
    pub index: usize,
    pub start_s: f64,
    pub samples: usize,
}

#[derive(Debug, Serialize)]
pub struct ChannelReport {
    pub channel: String,
    pub unit: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<BlockInfo>,
    /// Frequency of the order axis: Hz in the time domain, 1 in the angle domain.
    pub order_reference: f64,
    pub search_halfwidth: f64,
    pub orders: Vec<OrderLine>,
    pub diagnostics: ToothDiagnostics,
    pub artifacts: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub input: InputMeta,
    pub band: BandSpec,
    pub teeth: u32,
    pub threshold: f64,
    pub max_order: usize,
    pub f_rot_hz: f64,
    pub f_rot_source: FrotSource,
    pub order_domain: OrderDomain,
    pub mode: &'static str,
    pub channels: Vec<ChannelReport>,
    pub artifacts: Vec<String>,
    pub verdict: Verdict,
    pub exit_code: i32,
}
