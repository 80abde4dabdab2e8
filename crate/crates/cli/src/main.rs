use std::process::ExitCode;

use clap::Parser;
use cover_growth_cli::{exit_code, run, Cli, Format};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let rendered = match cli.format() {
        Format::Text => Ok(report.to_text()),
        Format::Json => report.to_json().map(|s| s + "\n").map_err(anyhow::Error::from),
        Format::Csv => report.to_csv().map_err(anyhow::Error::from),
    };
    match rendered {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(cover_growth_cli::EXIT_ERROR)
        }
    }
}
