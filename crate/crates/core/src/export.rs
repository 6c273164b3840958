//! Plot-ready CSV renderings of analysis results.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::envelope::EnvelopeResult;
use crate::error::Result;
use crate::io::write_atomic;
use crate::rotation::OrderSpectrum;
use crate::signal::SampledSignal;
use crate::spectral::{Spectrum, Waterfall};

fn num(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").unwrap();
}

/// `frequency_hz,amplitude` rows; complex spectra export their magnitude.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("frequency_hz,amplitude\n");
    for (k, a) in spectrum.magnitudes().into_iter().enumerate() {
        num(&mut out, spectrum.frequency(k));
        out.push(',');
        num(&mut out, a);
        out.push('\n');
    }
    out
}

/// Long form: `time_s,frequency_hz,amplitude`.
pub fn waterfall_csv(waterfall: &Waterfall) -> String {
    let mut out = String::from("time_s,frequency_hz,amplitude\n");
    for (t, spectrum) in waterfall.slices() {
        for (k, a) in spectrum.magnitudes().into_iter().enumerate() {
            num(&mut out, *t);
            out.push(',');
            num(&mut out, spectrum.frequency(k));
            out.push(',');
            num(&mut out, a);
            out.push('\n');
        }
    }
    out
}

/// `time_s,<name>` rows.
pub fn waveform_csv(signal: &SampledSignal) -> String {
    let mut out = format!("time_s,{}\n", signal.name());
    for (i, v) in signal.samples().iter().enumerate() {
        num(&mut out, signal.time_of(i));
        out.push(',');
        num(&mut out, *v);
        out.push('\n');
    }
    out
}

/// `order,amplitude,exact_freq_hz` rows.
pub fn orders_csv(orders: &OrderSpectrum) -> String {
    let mut out = String::from("order,amplitude,exact_freq_hz\n");
    for line in &orders.orders {
        write!(out, "{},", line.order).unwrap();
        num(&mut out, line.amplitude);
        out.push(',');
        num(&mut out, line.exact_freq_hz);
        out.push('\n');
    }
    out
}

/// Writes `<basename>_filtered.csv`, `<basename>_envelope.csv` and
/// `<basename>_envelope_spectrum.csv` into `dir`, returning the paths.
pub fn write_envelope_csvs(
    result: &EnvelopeResult,
    dir: &Path,
    basename: &str,
) -> Result<[PathBuf; 3]> {
    let paths = [
        dir.join(format!("{basename}_filtered.csv")),
        dir.join(format!("{basename}_envelope.csv")),
        dir.join(format!("{basename}_envelope_spectrum.csv")),
    ];
    write_atomic(&paths[0], waveform_csv(&result.filtered).as_bytes())?;
    write_atomic(&paths[1], waveform_csv(&result.envelope).as_bytes())?;
    write_atomic(
        &paths[2],
        spectrum_csv(&result.envelope_spectrum).as_bytes(),
    )?;
    Ok(paths)
}

/// Minimal gnuplot script plotting a two-column CSV.
pub fn gnuplot_script(csv_name: &str, title: &str, xlabel: &str, ylabel: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set title '{title}'\n\
         set xlabel '{xlabel}'\n\
         set ylabel '{ylabel}'\n\
         plot '{csv_name}' using 1:2 every ::1 with lines notitle\n\
         pause -1\n"
    )
}
