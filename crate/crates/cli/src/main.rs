mod args;
mod commands;
mod error;

use std::io::Write;

use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::error::CliError;

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(cli.command) {
        Ok(v) => {
            emit(&v);
            0
        }
        Err(CliError::Failed(v)) => {
            emit(&v);
            1
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn emit(v: &serde_json::Value) {
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}
