use std::process::ExitCode;

use clap::Parser;
use hyperq::exp::{config::SEED_ENV, execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var(SEED_ENV).ok();
    match execute(cli, seed.as_deref(), &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
