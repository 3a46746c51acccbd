use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use zigzag_stab::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("zzstab: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
