mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use iabcache::model::{SystemConfig, DEFAULT_CONFIG_TEXT};

use crate::args::{Cli, Command};
use crate::commands::Context;
use crate::error::{CliError, CliResult};
use crate::output::{timestamp, OutDir};

fn load_config(cli: &Cli) -> CliResult<SystemConfig<f64>> {
    match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(SystemConfig::from_config_str(&text)?)
        }
        None => Ok(SystemConfig::default()),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if cli.emit_default_config {
        print!("{DEFAULT_CONFIG_TEXT}");
        return Ok(());
    }
    let Some(command) = &cli.command else {
        Cli::command().print_help()?;
        return Err(CliError::Usage("no subcommand given".into()));
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let started_at = timestamp();
    let cfg = load_config(&cli)?;
    let seed = cli.seed.unwrap_or(cfg.numeric.seed);
    let mut ctx = Context {
        cfg,
        seed,
        trace: cli.trace,
        out: OutDir::create(&cli.out_dir)?,
    };
    let (name, outcome) = match command {
        Command::Analyze(a) => ("analyze", commands::analyze::run(&mut ctx, a)),
        Command::Sweep(a) => ("sweep", commands::sweep::run(&mut ctx, a)),
        Command::Optimize(a) => ("optimize", commands::optimize::run(&mut ctx, a)),
        Command::Validate(a) => ("validate", commands::validate::run(&mut ctx, a)),
    };
    match outcome {
        Ok(()) | Err(CliError::Validation(_)) => {
            let Context { cfg, seed, out, .. } = ctx;
            out.finish(name, &cfg, seed, started_at)?;
            outcome
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
