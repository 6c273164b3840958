//! Envelope analysis for milling-process monitoring.
//!
//! Force and vibration signals are band-pass filtered around a structural
//! resonance, demodulated through the Hilbert analytic signal, and the
//! spectrum of the resulting envelope is read at multiples of the spindle
//! rotation frequency. A healthy `N`-tooth cutter shows a dominant order `N`
//! (tooth passing); energy at orders `1..N` reveals teeth that do not cut
//! evenly.
//!
//! ```
//! use envspec::{envelope, order_spectrum, synth_milling, tooth_diagnostics, BandSpec, SynthConfig};
//!
//! let record = synth_milling(&SynthConfig::default()).unwrap();
//! let fx = &record.forces()[0];
//! let env = envelope(fx, &BandSpec::default()).unwrap();
//! let orders = order_spectrum(&env.envelope_spectrum, 33.33, 6, 1.0).unwrap();
//! let diag = tooth_diagnostics(&orders, record.cutter().unwrap(), 0.5).unwrap();
//! assert!(!diag.asymmetry_flag);
//! ```

pub mod envelope;
pub mod error;
pub mod export;
pub mod io;
pub mod rotation;
pub mod signal;
pub mod spectral;
pub mod synth;

pub use envelope::{
    analytic_signal, band_pass, envelope, envelope_spectrum, BandSpec, EnvelopeResult,
};
pub use error::{Error, Result};
pub use io::{read_record, write_record, Format};
pub use rotation::{
    angular_resample, crop_to_tacho, default_search_halfwidth, order_spectrum, speed_from_tacho,
    spindle_speed_from_cutting, synchronous_envelope_spectrum, tooth_diagnostics, DiagnosticStatus,
    OrderLine, OrderSpectrum, SpeedProfile, SpindleKinematics, ToothDiagnostics,
    DEFAULT_ASYMMETRY_THRESHOLD,
};
pub use signal::{
    slice_blocks, AcquisitionRecord, ChannelKind, CutConditions, CutterSpec, SampledSignal,
    TachoTrace,
};
pub use spectral::{
    amplitude_spectrum, dft_forward, dft_inverse, waterfall, Spectrum, SpectrumKind, Waterfall,
    Window,
};
pub use synth::{synth_milling, SynthConfig};
