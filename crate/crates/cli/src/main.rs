mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Output};
use commands::{CliError, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.config.threads > 0 {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.config.threads).build_global();
    }
    match commands::dispatch(&cli.command, &cli.config) {
        Ok(report) => {
            match cli.config.output {
                Output::Json => println!("{}", report.json),
                Output::Text => println!("{}", report.text.trim_end()),
            }
            ExitCode::from(match report.status {
                Status::Ok => 0,
                Status::Failed => 1,
                Status::BudgetExceeded => 2,
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 3,
                CliError::Domain(ref d) if d.is_budget() => 2,
                CliError::Domain(_) => 1,
            })
        }
    }
}
