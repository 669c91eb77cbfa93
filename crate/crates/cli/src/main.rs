mod args;
mod exact_cmds;
mod output;
mod sample_cmd;
mod thermo_cmds;

use args::{Cli, Command};
use clap::Parser;
use output::{CliError, Outcome};
use std::process::ExitCode;

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Exact(a) => exact_cmds::exact(a),
        Command::OracleSweep(a) => exact_cmds::oracle_sweep(a),
        Command::SigmaCheck(a) => exact_cmds::sigma_check(a),
        Command::Thermo(a) => thermo_cmds::thermo(a),
        Command::Converge(a) => thermo_cmds::converge(a),
        Command::Phase(a) => thermo_cmds::phase(a),
        Command::Sample(a) => sample_cmd::sample(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return CliError::Usage(e.to_string().trim().to_string()).report(),
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => e.report(),
    }
}
