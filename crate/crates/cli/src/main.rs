#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod config;
mod figures;
mod table;

use args::{Cli, Command, CommonArgs};
use clap::Parser;
use commands::{invalid, CliError};
use config::{ConfigError, RunConfig};
use std::process::ExitCode;

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LRKITAEV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| invalid(format!("LRKITAEV_THREADS must be a non-negative integer, got '{raw}'")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Computation(e.to_string()))?;
    }
    Ok(())
}

fn load(common: &CommonArgs) -> Result<RunConfig, CliError> {
    RunConfig::load(common).map_err(|e| match e {
        ConfigError::Invalid(m) => CliError::Validation(m),
        ConfigError::Io(m) => CliError::Io(m),
    })
}

fn dispatch(task: &str, cfg: &RunConfig, figure: Option<&str>) -> Result<(), CliError> {
    match task {
        "spectrum" => commands::spectrum(cfg),
        "entropy-scan" => commands::entropy_scan(cfg),
        "fh-coeff" => commands::fh_coeff(cfg),
        "verify" => {
            if commands::verify(cfg)? {
                Ok(())
            } else {
                Err(CliError::Computation(format!(
                    "verification exceeded tolerance {:e}",
                    commands::VERIFY_TOLERANCE
                )))
            }
        }
        "reproduce" => {
            let fig = figure.or(cfg.figure.as_deref()).ok_or_else(|| invalid("reproduce needs a figure id"))?;
            let paths = figures::reproduce(cfg, fig)?;
            commands::write_text(None, &figures::describe(&paths))?;
            Ok(())
        }
        other => Err(invalid(format!(
            "unknown task '{other}': expected spectrum, entropy-scan, fh-coeff, verify or reproduce"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Spectrum(c) => dispatch("spectrum", &load(&c)?, None),
        Command::EntropyScan(c) => dispatch("entropy-scan", &load(&c)?, None),
        Command::FhCoeff(c) => dispatch("fh-coeff", &load(&c)?, None),
        Command::Verify(c) => dispatch("verify", &load(&c)?, None),
        Command::Reproduce { figure, common } => dispatch("reproduce", &load(&common)?, figure.as_deref()),
        Command::Run(c) => {
            let cfg = load(&c)?;
            let task = cfg.task.clone().ok_or_else(|| invalid("run needs a task (--task or the config key)"))?;
            dispatch(&task, &cfg, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lrkitaev: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
