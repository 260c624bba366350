//! `gemo`: fit, compare and evaluate GEMO lifetime models from the shell.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical or
//! convergence failure.

mod args;
mod commands;
mod error;
mod output;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Err(e) = commands::run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
