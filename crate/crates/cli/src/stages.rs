//! Single-stage commands and the helpers they share with `analyze`.

use std::path::{Path, PathBuf};

use envspec::export::{gnuplot_script, spectrum_csv, waterfall_csv, write_envelope_csvs};
use envspec::io::write_atomic;
use envspec::{
    amplitude_spectrum, envelope as envelope_of, read_record, waterfall as waterfall_of,
};
use envspec::{AcquisitionRecord, Format, SampledSignal};

use crate::args::{EnvelopeArgs, IoArgs, SpectrumArgs, WaterfallArgs};
use crate::error::{exit, CliError, CliResult};

pub fn load(io: &IoArgs) -> CliResult<AcquisitionRecord> {
    let format = Format::detect(&io.input)?;
    Ok(read_record(&io.input, format)?)
}

/// Channels named by `--channels`, or every channel.
pub fn select_channels<'a>(
    record: &'a AcquisitionRecord,
    names: &[String],
) -> CliResult<Vec<&'a SampledSignal>> {
    if names.is_empty() {
        return Ok(record.channels().map(|(_, s)| s).collect());
    }
    names
        .iter()
        .map(|n| {
            record.channel(n.trim()).ok_or_else(|| {
                let available: Vec<&str> = record.channels().map(|(_, s)| s.name()).collect();
                CliError::usage(format!(
                    "channel `{n}` not in record (available: {})",
                    available.join(",")
                ))
            })
        })
        .collect()
}

pub fn prepare_out_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

/// File-name stem for a channel's artifacts.
pub fn stem(signal: &SampledSignal) -> String {
    signal.name().to_ascii_lowercase()
}

pub fn write_artifact(path: &Path, contents: &str) -> CliResult<()> {
    Ok(write_atomic(path, contents.as_bytes())?)
}

/// Writes a gnuplot script `<csv>.gp` for a two-column CSV.
pub fn write_plot(csv: &Path, title: &str, xlabel: &str, ylabel: &str) -> CliResult<PathBuf> {
    let name = csv.file_name().unwrap().to_string_lossy().into_owned();
    let mut gp = csv.as_os_str().to_owned();
    gp.push(".gp");
    let gp = PathBuf::from(gp);
    write_artifact(&gp, &gnuplot_script(&name, title, xlabel, ylabel))?;
    Ok(gp)
}

pub fn spectrum(args: SpectrumArgs) -> CliResult<i32> {
    let record = load(&args.io)?;
    prepare_out_dir(&args.io.out_dir)?;
    for signal in select_channels(&record, &args.io.channels)? {
        let spec = amplitude_spectrum(signal, args.window)?;
        let path = args
            .io
            .out_dir
            .join(format!("{}_spectrum.csv", stem(signal)));
        write_artifact(&path, &spectrum_csv(&spec))?;
        if args.io.gnuplot {
            write_plot(
                &path,
                &format!("{} spectrum", signal.name()),
                "frequency (Hz)",
                signal.unit(),
            )?;
        }
        let peak = spec.peak_bin();
        println!(
            "{}: peak {:.3} Hz, amplitude {:.6} -> {}",
            signal.name(),
            spec.frequency(peak),
            spec.amplitudes().unwrap()[peak],
            path.display()
        );
    }
    Ok(exit::CLEAN)
}

pub fn waterfall(args: WaterfallArgs) -> CliResult<i32> {
    let record = load(&args.io)?;
    prepare_out_dir(&args.io.out_dir)?;
    let block = args.block.unwrap_or(record.block_size());
    for signal in select_channels(&record, &args.io.channels)? {
        let wf = waterfall_of(signal, block, args.overlap, args.window)?;
        let path = args
            .io
            .out_dir
            .join(format!("{}_waterfall.csv", stem(signal)));
        write_artifact(&path, &waterfall_csv(&wf))?;
        println!(
            "{}: {} slice(s) of {} samples -> {}",
            signal.name(),
            wf.len(),
            block,
            path.display()
        );
    }
    Ok(exit::CLEAN)
}

pub fn envelope(args: EnvelopeArgs) -> CliResult<i32> {
    let record = load(&args.io)?;
    prepare_out_dir(&args.io.out_dir)?;
    args.band.band.check_nyquist(record.sample_rate_hz())?;
    for signal in select_channels(&record, &args.io.channels)? {
        let result = envelope_of(signal, &args.band.band)?;
        let paths = write_envelope_csvs(&result, &args.io.out_dir, &stem(signal))?;
        if args.io.gnuplot {
            write_plot(
                &paths[1],
                &format!("{} envelope", signal.name()),
                "time (s)",
                signal.unit(),
            )?;
            write_plot(
                &paths[2],
                &format!("{} envelope spectrum", signal.name()),
                "frequency (Hz)",
                signal.unit(),
            )?;
        }
        let spec = &result.envelope_spectrum;
        println!(
            "{}: envelope spectrum peak {:.3} Hz -> {}",
            signal.name(),
            spec.frequency(spec.peak_bin()),
            paths[2].display()
        );
    }
    Ok(exit::CLEAN)
}
