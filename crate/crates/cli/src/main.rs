use std::process::ExitCode;

use clap::Parser;
use ecogame_cli::cli::Args;

fn main() -> ExitCode {
    ecogame_cli::init_thread_pool();
    let args = Args::parse();
    match ecogame_cli::run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
