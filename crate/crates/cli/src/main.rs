use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cbp_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.render(cli.json).trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cbp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
