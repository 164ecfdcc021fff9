use std::process::ExitCode;

use clap::Parser;

use mop_cli::config::{Cli, JobConfig};
use mop_cli::output::{emit, error_json};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command;
    let result = JobConfig::from_cli(cli).and_then(|cfg| {
        let rendered = mop_cli::run(&cfg)?;
        emit(&cfg, &rendered)?;
        Ok(rendered.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            println!("{}", error_json(command.name(), &err));
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
