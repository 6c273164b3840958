//! `envspec`: envelope analysis of milling force and vibration records.

mod analyze;
mod args;
mod error;
mod report;
mod stages;
mod synth;
mod term;

use clap::Parser;

use args::{Cli, Command};
use error::exit;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::CLEAN
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let palette = term::Palette::detect();
    let result = match cli.command {
        Command::Synth(a) => synth::run(a),
        Command::Analyze(a) => analyze::run(a, palette),
        Command::Spectrum(a) => stages::spectrum(a),
        Command::Waterfall(a) => stages::waterfall(a),
        Command::Envelope(a) => stages::envelope(a),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("envspec: {e}");
            std::process::exit(e.code());
        }
    }
}
