//! IO, file formats and the command-line front end for `mta-core`.

pub mod args;
pub mod commands;
pub mod formats;
pub mod ingest;
pub mod plot;

use args::{Cli, Command};
use commands::CliError;

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Run(a) => commands::cmd_run(a).map(|_| ()),
        Command::Compare(a) => commands::cmd_compare(a).map(|_| ()),
        Command::Analyze(a) => commands::cmd_analyze(a).map(|_| ()),
        Command::Synth(a) => commands::cmd_synth(a).map(|_| ()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}
