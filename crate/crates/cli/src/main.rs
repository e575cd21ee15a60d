use std::process::ExitCode;

use clap::Parser;
use pzf_cli::{run, Cli, CliError, EXIT_MISMATCH};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        let text = report.render(cli.format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?,
            None => print!("{text}"),
        }
        Ok(report)
    });
    match outcome {
        Ok(report) if report.enforce && report.failures > 0 => {
            eprintln!("pzf: {} check(s) failed", report.failures);
            ExitCode::from(EXIT_MISMATCH as u8)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pzf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
