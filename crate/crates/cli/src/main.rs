use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;
use qwalk_core::WalkError;

mod args;
mod report;
mod run;

use args::Cli;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Walk(WalkError::InvalidConfig(_)) => 2,
            _ => 3,
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let report = run::execute(&cli.command)?;
    let output = match &cli.command {
        args::Command::Single(a) => &a.output,
        args::Command::Pair(a) => &a.output,
        args::Command::Bec(a) => &a.output,
        args::Command::Classical(a) => &a.output,
        args::Command::Coincidence(a) => &a.output,
        args::Command::VarianceScan(a) => &a.output,
    };
    match &output.out {
        Some(path) => report.write(output.format, BufWriter::new(File::create(path)?))?,
        None => report.write(output.format, BufWriter::new(io::stdout().lock()))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
