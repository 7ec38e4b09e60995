use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use nlkg_cli::commands::{self, Cli};
use nlkg_cli::config::CliConfig;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = CliConfig::from_env().and_then(|cfg| commands::run(cli, &cfg, &mut out));
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nlkg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
