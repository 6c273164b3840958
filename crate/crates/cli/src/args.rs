use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use envspec::{BandSpec, Window};

#[derive(Debug, Parser)]
#[command(
    name = "envspec",
    version,
    about = "Envelope analysis for milling-process monitoring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic milling record.
    Synth(SynthArgs),
    /// Full pipeline: spectra, envelope, order spectrum and tooth diagnostics.
    Analyze(AnalyzeArgs),
    /// Amplitude spectrum of each channel.
    Spectrum(SpectrumArgs),
    /// Block-wise amplitude spectra (waterfall) of each channel.
    Waterfall(WaterfallArgs),
    /// Band-passed waveform, envelope and envelope spectrum of each channel.
    Envelope(EnvelopeArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// JSON file with synthesis parameters; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub teeth: Option<u32>,
    /// Rotation frequency at the start of the record (Hz).
    #[arg(long = "f-rot")]
    pub f_rot: Option<f64>,
    /// Comma-separated per-tooth impact gains, e.g. 1,1,0.5.
    #[arg(long, value_delimiter = ',')]
    pub gains: Option<Vec<f64>>,
    #[arg(long = "resonance")]
    pub resonance_hz: Option<f64>,
    #[arg(long = "damping")]
    pub damping_ratio: Option<f64>,
    #[arg(long = "energy")]
    pub impact_energy: Option<f64>,
    #[arg(long = "noise-rms", conflicts_with = "snr_db")]
    pub noise_rms: Option<f64>,
    /// Noise level as a signal-to-noise ratio against the clean waveform.
    #[arg(long = "snr-db")]
    pub snr_db: Option<f64>,
    #[arg(long = "duration")]
    pub duration_s: Option<f64>,
    #[arg(long = "fs")]
    pub sample_rate_hz: Option<f64>,
    /// Linear increase of the rotation frequency over the record (fraction).
    #[arg(long = "ramp")]
    pub speed_ramp_fraction: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "diameter")]
    pub diameter_mm: Option<f64>,
    /// Output record; `.csv` selects CSV, anything else raw binary.
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

/// Input record and output directory shared by the analysis commands.
#[derive(Debug, Args)]
pub struct IoArgs {
    /// Record file (CSV or ENVS raw binary, detected from content).
    pub input: PathBuf,
    /// Output directory for CSV artifacts and reports.
    #[arg(short = 'o', long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
    /// Channels to process, e.g. fx,fy,az (default: all).
    #[arg(long, value_delimiter = ',')]
    pub channels: Vec<String>,
    /// Also write a gnuplot script next to each two-column CSV.
    #[arg(long)]
    pub gnuplot: bool,
}

#[derive(Debug, Args)]
pub struct BandArgs {
    /// Resonance band LOW:HIGH[:TAPER] in Hz.
    #[arg(long, default_value = "700:2500:50")]
    pub band: BandSpec,
}

#[derive(Debug, Args)]
pub struct SpeedArgs {
    /// Rotation frequency in Hz.
    #[arg(long = "f-rot", conflicts_with = "rpm")]
    pub f_rot: Option<f64>,
    /// Spindle speed in rev/min.
    #[arg(long)]
    pub rpm: Option<f64>,
    /// Cutting speed (m/min); needs --diameter or a cutter in the record.
    #[arg(long = "cutting-speed")]
    pub cutting_speed: Option<f64>,
    /// Cutter diameter (mm).
    #[arg(long)]
    pub diameter: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub band: BandArgs,
    #[command(flatten)]
    pub speed: SpeedArgs,
    /// Number of cutter teeth (default: from the record).
    #[arg(long)]
    pub teeth: Option<u32>,
    /// Asymmetry ratio at or above which a channel is flagged.
    #[arg(long, default_value_t = envspec::DEFAULT_ASYMMETRY_THRESHOLD)]
    pub threshold: f64,
    /// Highest order in the order table (default: 2 x teeth).
    #[arg(long = "max-order")]
    pub max_order: Option<usize>,
    /// Order search half-width in Hz (default: max(2 df, 0.02 f_rot)).
    #[arg(long = "search-halfwidth")]
    pub search_halfwidth: Option<f64>,
    /// Analyse fixed-size blocks instead of the whole record.
    #[arg(long = "block-mode")]
    pub block_mode: bool,
    /// Block size in samples (default: the record's block size).
    #[arg(long)]
    pub block: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub overlap: f64,
    /// Compute orders from the tachometer-resampled (angle-domain) envelope.
    #[arg(long)]
    pub synchronous: bool,
    #[arg(long = "samples-per-rev", default_value_t = 128)]
    pub samples_per_rev: usize,
    /// Exit 4 when a diagnosis is inconclusive and nothing was flagged.
    #[arg(long)]
    pub strict: bool,
    /// Leave the timestamp out of the report (byte-stable output).
    #[arg(long = "no-timestamp")]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, default_value = "hann")]
    pub window: Window,
}

#[derive(Debug, Args)]
pub struct WaterfallArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, default_value = "hann")]
    pub window: Window,
    /// Block size in samples (default: the record's block size).
    #[arg(long)]
    pub block: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub overlap: f64,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub band: BandArgs,
}
