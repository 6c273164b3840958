//! The full envelope pipeline over one record.

use std::path::Path;

use envspec::export::{orders_csv, spectrum_csv, write_envelope_csvs};
use envspec::rotation::{synchronous_envelope_spectrum, DiagnosticStatus};
use envspec::signal::block_starts;
use envspec::{
    amplitude_spectrum, default_search_halfwidth, envelope, order_spectrum, speed_from_tacho,
    spindle_speed_from_cutting, tooth_diagnostics, AcquisitionRecord, CutConditions, CutterSpec,
    SampledSignal, TachoTrace, Window,
};

use crate::args::{AnalyzeArgs, SpeedArgs};
use crate::error::{exit, CliError, CliResult};
use crate::report::{
    AnalysisReport, BlockInfo, ChannelReport, FrotSource, InputChannel, InputMeta, OrderDomain,
    Verdict, SCHEMA_VERSION,
};
use crate::stages::{load, prepare_out_dir, select_channels, stem, write_artifact, write_plot};
use crate::term::Palette;

/// Rotation frequency: tachometer mean, then cutting kinematics (flags
/// first, then record metadata), then an explicit `--f-rot`/`--rpm`.
pub fn resolve_f_rot(
    record: &AcquisitionRecord,
    speed: &SpeedArgs,
) -> CliResult<(f64, FrotSource)> {
    if let Some(tacho) = record.tacho() {
        if tacho.len() >= 2 {
            return Ok((speed_from_tacho(tacho)?.mean_f_rot_hz(), FrotSource::Tacho));
        }
    }
    let diameter = speed.diameter.or(record.cutter().map(|c| c.diameter_mm()));
    if let Some(vc) = speed.cutting_speed {
        let d = diameter.ok_or_else(|| {
            CliError::usage("--cutting-speed needs --diameter or a cutter diameter in the record")
        })?;
        let k =
            spindle_speed_from_cutting(&CutConditions::new(vc, 1.0, 1.0)?, &CutterSpec::new(1, d)?);
        return Ok((k.f_rot_hz, FrotSource::Kinematics));
    }
    if let (Some(cond), Some(cutter)) = (record.conditions(), record.cutter()) {
        return Ok((
            spindle_speed_from_cutting(cond, cutter).f_rot_hz,
            FrotSource::Kinematics,
        ));
    }
    match (speed.f_rot, speed.rpm) {
        (Some(f), _) => positive(f, "--f-rot").map(|f| (f, FrotSource::Flag)),
        (None, Some(r)) => positive(r, "--rpm").map(|r| (r / 60.0, FrotSource::Flag)),
        (None, None) => Err(CliError::usage(
            "rotation frequency unknown: record has no tachometer or cutting conditions; \
             pass --f-rot, --rpm or --cutting-speed with --diameter",
        )),
    }
}

fn positive(v: f64, flag: &str) -> CliResult<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{flag} must be positive, got {v}")))
    }
}

/// Pulses falling inside a block, rebased to the block start.
fn tacho_for_block(tacho: &TachoTrace, start_s: f64, end_s: f64) -> CliResult<TachoTrace> {
    let pulses: Vec<f64> = tacho
        .pulse_times_s()
        .iter()
        .filter(|t| **t >= start_s && **t <= end_s)
        .map(|t| t - start_s)
        .collect();
    Ok(TachoTrace::new(pulses, tacho.pulses_per_rev())?)
}

struct Unit<'a> {
    signal: SampledSignal,
    source: &'a SampledSignal,
    block: Option<BlockInfo>,
    tacho: Option<TachoTrace>,
}

struct Plan<'a> {
    args: &'a AnalyzeArgs,
    cutter: CutterSpec,
    f_rot_hz: f64,
    max_order: usize,
    domain: OrderDomain,
}

impl Plan<'_> {
    fn run(&self, unit: Unit<'_>) -> CliResult<ChannelReport> {
        let args = self.args;
        let dir = &args.io.out_dir;
        let base = match &unit.block {
            Some(b) => format!("{}_b{}", stem(unit.source), b.index),
            None => stem(unit.source),
        };
        let mut artifacts = Vec::new();
        let mut emit = |name: String, contents: String| -> CliResult<std::path::PathBuf> {
            let path = dir.join(&name);
            write_artifact(&path, &contents)?;
            artifacts.push(name);
            Ok(path)
        };

        let spectrum = amplitude_spectrum(&unit.signal, Window::Hann)?;
        let spectrum_path = emit(format!("{base}_spectrum.csv"), spectrum_csv(&spectrum))?;

        let result = envelope(&unit.signal, &args.band.band)?;
        let env_paths = write_envelope_csvs(&result, dir, &base)?;
        for p in &env_paths {
            artifacts.push(file_name(p));
        }

        let (env_spectrum, reference) = match self.domain {
            OrderDomain::Time => (result.envelope_spectrum.clone(), self.f_rot_hz),
            OrderDomain::Angle => {
                let tacho = unit
                    .tacho
                    .as_ref()
                    .expect("angle domain requires a tachometer");
                let spec =
                    synchronous_envelope_spectrum(&result.envelope, tacho, args.samples_per_rev)?;
                let name = format!("{base}_order_envelope_spectrum.csv");
                write_artifact(&dir.join(&name), &spectrum_csv(&spec))?;
                artifacts.push(name);
                (spec, 1.0)
            }
        };
        let halfwidth = match args.search_halfwidth {
            Some(hw) if self.domain == OrderDomain::Time => hw,
            Some(hw) => hw / self.f_rot_hz,
            None => default_search_halfwidth(env_spectrum.df_hz(), reference),
        };
        let orders = order_spectrum(&env_spectrum, reference, self.max_order, halfwidth)?;
        let name = format!("{base}_orders.csv");
        write_artifact(&dir.join(&name), &orders_csv(&orders))?;
        artifacts.push(name);
        let diagnostics = tooth_diagnostics(&orders, &self.cutter, args.threshold)?;

        if args.io.gnuplot {
            let unit_label = unit.source.unit();
            for (path, title, x) in [
                (&spectrum_path, "spectrum", "frequency (Hz)"),
                (&env_paths[1], "envelope", "time (s)"),
                (&env_paths[2], "envelope spectrum", "frequency (Hz)"),
            ] {
                let gp = write_plot(path, &format!("{base} {title}"), x, unit_label)?;
                artifacts.push(file_name(&gp));
            }
        }

        Ok(ChannelReport {
            channel: unit.source.name().to_string(),
            unit: unit.source.unit().to_string(),
            block: unit.block,
            order_reference: reference,
            search_halfwidth: halfwidth,
            orders: orders.orders,
            diagnostics,
            artifacts,
        })
    }
}

fn file_name(path: &Path) -> String {
    path.file_name().unwrap().to_string_lossy().into_owned()
}

pub fn run(args: AnalyzeArgs, palette: Palette) -> CliResult<i32> {
    let record = load(&args.io)?;
    let band = args.band.band;
    band.check_nyquist(record.sample_rate_hz())?;
    let teeth = args
        .teeth
        .or(record.cutter().map(|c| c.teeth()))
        .ok_or_else(|| CliError::usage("number of teeth unknown: pass --teeth"))?;
    let diameter = args
        .speed
        .diameter
        .or(record.cutter().map(|c| c.diameter_mm()))
        .unwrap_or(25.0);
    let cutter = CutterSpec::new(teeth, diameter)?;
    positive(args.threshold, "--threshold")?;
    let max_order = args.max_order.unwrap_or(2 * teeth as usize);
    if max_order < teeth as usize {
        return Err(CliError::usage(format!(
            "--max-order {max_order} is below the tooth order {teeth}"
        )));
    }
    let (f_rot_hz, f_rot_source) = resolve_f_rot(&record, &args.speed)?;
    let domain = if args.synchronous {
        if record.tacho().is_none_or(|t| t.len() < 2) {
            return Err(CliError::usage(
                "--synchronous needs a tachometer trace in the record",
            ));
        }
        OrderDomain::Angle
    } else {
        OrderDomain::Time
    };
    let channels = select_channels(&record, &args.io.channels)?;
    prepare_out_dir(&args.io.out_dir)?;

    let mut units = Vec::new();
    for source in channels {
        if args.block_mode {
            let block = args.block.unwrap_or(record.block_size());
            for (index, start) in block_starts(source.len(), block, args.overlap)?
                .into_iter()
                .enumerate()
            {
                let signal = source.slice(start, start + block)?;
                let start_s = source.time_of(start);
                let tacho = match (domain, record.tacho()) {
                    (OrderDomain::Angle, Some(t)) => Some(tacho_for_block(
                        t,
                        start_s,
                        source.time_of(start + block - 1),
                    )?),
                    _ => None,
                };
                units.push(Unit {
                    signal,
                    source,
                    block: Some(BlockInfo {
                        index,
                        start_s,
                        samples: block,
                    }),
                    tacho,
                });
            }
        } else {
            units.push(Unit {
                signal: source.clone(),
                source,
                block: None,
                tacho: record.tacho().cloned(),
            });
        }
    }

    let plan = Plan {
        args: &args,
        cutter,
        f_rot_hz,
        max_order,
        domain,
    };
    let results: Vec<CliResult<ChannelReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = units
            .into_iter()
            .map(|unit| {
                let plan = &plan;
                scope.spawn(move || plan.run(unit))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(CliError::usage("analysis worker panicked")))
            })
            .collect()
    });
    let reports = results.into_iter().collect::<CliResult<Vec<_>>>()?;

    let any_flag = reports.iter().any(|r| r.diagnostics.asymmetry_flag);
    let any_inconclusive = reports
        .iter()
        .any(|r| r.diagnostics.status == DiagnosticStatus::Inconclusive);
    let (verdict, code) = if any_flag {
        (Verdict::Asymmetry, exit::ASYMMETRY)
    } else if any_inconclusive {
        (
            Verdict::Inconclusive,
            if args.strict {
                exit::INCONCLUSIVE
            } else {
                exit::CLEAN
            },
        )
    } else {
        (Verdict::Clean, exit::CLEAN)
    };

    let report = AnalysisReport {
        schema: SCHEMA_VERSION,
        tool: "envspec",
        version: env!("CARGO_PKG_VERSION"),
        timestamp: (!args.no_timestamp).then(|| chrono::Utc::now().to_rfc3339()),
        input: InputMeta {
            path: args.io.input.display().to_string(),
            format: match envspec::Format::detect(&args.io.input)? {
                envspec::Format::Csv => "csv",
                envspec::Format::RawBinary => "raw-binary",
            },
            sample_rate_hz: record.sample_rate_hz(),
            samples: record.len(),
            duration_s: record.duration_s(),
            channels: record
                .channels()
                .map(|(kind, s)| InputChannel {
                    name: s.name().to_string(),
                    unit: s.unit().to_string(),
                    kind,
                })
                .collect(),
            tacho_pulses: record.tacho().map_or(0, |t| t.len()),
        },
        band,
        teeth,
        threshold: args.threshold,
        max_order,
        f_rot_hz,
        f_rot_source,
        order_domain: domain,
        mode: if args.block_mode { "block" } else { "whole" },
        artifacts: reports
            .iter()
            .flat_map(|r| r.artifacts.iter().cloned())
            .collect(),
        channels: reports,
        verdict,
        exit_code: code,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    let report_path = args.io.out_dir.join("report.json");
    write_artifact(&report_path, &json)?;

    println!(
        "f_rot {:.4} Hz ({:?}), teeth {teeth}, band {band}",
        f_rot_hz, f_rot_source
    );
    for r in &report.channels {
        let d = &r.diagnostics;
        let label = match &r.block {
            Some(b) => format!("{} block {}", r.channel, b.index),
            None => r.channel.clone(),
        };
        let status = match d.status {
            DiagnosticStatus::Clean => palette.good("clean"),
            DiagnosticStatus::Asymmetric => palette.bad("ASYMMETRY"),
            DiagnosticStatus::Inconclusive => palette.warn("inconclusive"),
        };
        println!(
            "{label}: order {teeth} = {:.4e}, ratio {:.3} (threshold {}) {status}",
            d.tooth_order_amplitude, d.asymmetry_ratio, d.threshold
        );
    }
    println!("report -> {}", report_path.display());
    Ok(code)
}
