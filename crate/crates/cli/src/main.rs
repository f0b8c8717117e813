mod args;
mod commands;
mod report;
mod selftest;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use report::{CliError, Limits};

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("MTA_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("MTA_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("MTA_THREADS: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let limits = Limits {
        enforced: !cli.unsafe_no_limits,
    };
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Partitions(c) => commands::partitions(c, limits),
        Command::Heisenberg(c) => commands::heisenberg(c, limits),
        Command::Lattice(c) => commands::lattice(c, limits),
        Command::Peirce(c) => commands::peirce(c, limits),
        Command::Zhu(c) => commands::zhu(c, limits),
        Command::Selftest(a) => selftest::run(&a),
    });
    match result {
        Ok(report) => {
            println!("{}", report.render(cli.format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
