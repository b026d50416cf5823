use std::process::ExitCode;

use clap::Parser;
use kcycle_cli::{run, Cli, ExperimentConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = ExperimentConfig::resolve(cli.command.mode(), cli.command.args())
        .and_then(|cfg| run(&cfg, &mut std::io::stdout().lock()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kcycle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
