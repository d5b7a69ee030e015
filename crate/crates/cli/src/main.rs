use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use restrikt::{output_args, run, thread_count, Cli, CliError, EXIT_VALIDATION};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = thread_count(cli.threads) {
        // Fails only if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let (body, code) = match run(&cli) {
        Ok(outcome) => (outcome.body, outcome.exit_code),
        Err(e) => {
            print!("{}", e.to_json());
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    };
    let written = match &output_args(&cli.command).out {
        Some(path) => std::fs::write(path, &body)
            .map_err(|e| CliError::new("IoError", format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::new("IoError", e)),
    };
    if let Err(e) = written {
        eprint!("{}", e.to_json());
        return ExitCode::from(EXIT_VALIDATION as u8);
    }
    ExitCode::from(code as u8)
}
