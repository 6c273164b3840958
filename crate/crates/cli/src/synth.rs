use envspec::synth::noise_rms_for_snr;
use envspec::{synth_milling, write_record, Format, SynthConfig};

use crate::args::SynthArgs;
use crate::error::{exit, CliError, CliResult};

pub fn config_from_args(args: &SynthArgs) -> CliResult<SynthConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        }
        None => SynthConfig::default(),
    };

    match (args.teeth, &args.gains) {
        (Some(teeth), Some(gains)) if gains.len() != teeth as usize => {
            return Err(CliError::usage(format!(
                "--teeth {teeth} does not match --gains with {} values; give one gain per tooth",
                gains.len()
            )));
        }
        (Some(teeth), Some(gains)) => {
            config.teeth = teeth;
            config.tooth_gains = gains.clone();
        }
        (Some(teeth), None) => {
            config.teeth = teeth;
            if config.tooth_gains.len() != teeth as usize {
                config.tooth_gains = vec![1.0; teeth as usize];
            }
        }
        (None, Some(gains)) => {
            config.teeth = gains.len() as u32;
            config.tooth_gains = gains.clone();
        }
        (None, None) => {}
    }

    let overrides = [
        (&mut config.f_rot_hz, args.f_rot),
        (&mut config.resonance_hz, args.resonance_hz),
        (&mut config.damping_ratio, args.damping_ratio),
        (&mut config.impact_energy, args.impact_energy),
        (&mut config.noise_rms, args.noise_rms),
        (&mut config.duration_s, args.duration_s),
        (&mut config.sample_rate_hz, args.sample_rate_hz),
        (&mut config.speed_ramp_fraction, args.speed_ramp_fraction),
        (&mut config.diameter_mm, args.diameter_mm),
    ];
    for (slot, value) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    config.validate()?;
    if let Some(snr) = args.snr_db {
        config.noise_rms = noise_rms_for_snr(&config, snr)?;
    }
    Ok(config)
}

pub fn run(args: SynthArgs) -> CliResult<i32> {
    let config = config_from_args(&args)?;
    let record = synth_milling(&config)?;
    let format = Format::from_extension(&args.output);
    write_record(&record, &args.output, format)?;
    println!(
        "wrote {} ({} samples at {} Hz, {} channels, {} tacho pulses)",
        args.output.display(),
        record.len(),
        record.sample_rate_hz(),
        record.channels().count(),
        record.tacho().map_or(0, |t| t.len()),
    );
    Ok(exit::CLEAN)
}
