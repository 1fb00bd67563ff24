use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use framequant::{cmd_check, cmd_quasi, cmd_star_demo, cmd_wigner, Cli, CliError, Command, RunConfig, THREADS_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("framequant: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let threads = std::env::var(THREADS_ENV).ok();
    let cfg = RunConfig::from_cli(cli, threads.as_deref())?;
    let (body, code) = match cfg.command {
        Command::Check => {
            let report = cmd_check(&cfg);
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                eprintln!("framequant: all {} checks passed", report.checks.len());
            } else {
                eprintln!("framequant: {} of {} checks failed: {}", failed.len(), report.checks.len(), failed.join(", "));
            }
            (serde_json::to_string_pretty(&report)? + "\n", report.exit_code())
        }
        Command::StarDemo => {
            let demo = cmd_star_demo(&cfg)?;
            let code = if demo.pass { 0 } else { framequant::EXIT_CHECK_FAILED };
            (serde_json::to_string_pretty(&demo)? + "\n", code)
        }
        Command::Wigner => (cmd_wigner(&cfg)?, 0),
        Command::Quasi => (cmd_quasi(&cfg)?, 0),
    };
    emit(&cfg, &body)?;
    Ok(code)
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}
