mod args;
mod commands;

use std::error::Error as StdError;
use std::process::ExitCode;

use clap::Parser;
use dcount_core::Error;

use args::{Cli, Command};
use commands::Outcome;

/// 2 for bad requests, 3 for budget refusals, 1 for anything else.
fn exit_code(err: &(dyn StdError + 'static)) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::InexactDivision { .. }) | None => 1,
        Some(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match &cli.command {
        Command::Count(a) => commands::count_cmd(a, &mut stdout),
        Command::Table(a) => commands::table_cmd(a, &mut stdout),
        Command::Verify(a) => commands::verify_cmd(a, &mut stdout),
        Command::Census(a) => commands::census_cmd(a, &mut stdout),
        Command::Bench(a) => commands::bench_cmd(a, &mut stdout),
    };
    match result {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(4),
        Err(e) => {
            eprintln!("dcount: {e}");
            ExitCode::from(exit_code(e.as_ref()))
        }
    }
}
