use std::path::PathBuf;

/// Errors produced by the envelope analysis library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value type was constructed in violation of one of its invariants.
    #[error("invariant violated: {invariant} ({detail})")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },

    #[error("non-finite sample in channel `{channel}` at index {index}")]
    NonFiniteSample { channel: String, index: usize },

    #[error("channel `{channel}` has {actual} samples, expected {expected}")]
    LengthMismatch {
        channel: String,
        expected: usize,
        actual: usize,
    },

    #[error("channel `{channel}` sampled at {actual} Hz, expected {expected} Hz")]
    RateMismatch {
        channel: String,
        expected: f64,
        actual: f64,
    },

    #[error("block size {block} exceeds signal length {len}")]
    BlockTooLarge { block: usize, len: usize },

    #[error("band {low_hz}-{high_hz} Hz exceeds the Nyquist frequency {nyquist_hz} Hz")]
    BandExceedsNyquist {
        low_hz: f64,
        high_hz: f64,
        nyquist_hz: f64,
    },

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}; spectrum is not conjugate-symmetric")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("expected a {expected} spectrum")]
    WrongSpectrumKind { expected: &'static str },

    #[error("tachometer has {0} pulse(s); at least 2 are required")]
    TooFewPulses(usize),

    #[error("tachometer span {tacho_start_s}..{tacho_end_s} s does not cover signal span {signal_start_s}..{signal_end_s} s")]
    TachoCoverage {
        tacho_start_s: f64,
        tacho_end_s: f64,
        signal_start_s: f64,
        signal_end_s: f64,
    },

    #[error("order range up to {max_order} x {f_rot_hz} Hz exceeds the highest spectrum frequency {max_freq_hz} Hz")]
    OrderRange {
        max_order: usize,
        f_rot_hz: f64,
        max_freq_hz: f64,
    },

    #[error("order spectrum covers orders 1..={available}, diagnostics need 1..={teeth}")]
    MissingOrders { teeth: usize, available: usize },

    #[error("malformed header in {path}: {detail}")]
    MalformedHeader { path: PathBuf, detail: String },

    #[error("malformed data in {path} at line {line}: {detail}")]
    MalformedData {
        path: PathBuf,
        line: usize,
        detail: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invariant(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            invariant,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
