//! `sta-perceptron`: batch front-end for pulse synthesis, sweeps and the
//! perceptron gate. Every run reads one JSON configuration and writes CSV
//! tables plus a `config.json` echo into the output directory.

mod commands;
mod config;
mod error;
mod presets;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use sta_perceptron::exec::with_threads;

use crate::commands::Outputs;
use crate::error::{CliError, CliResult};
use crate::presets::Run;

#[derive(Debug, Parser)]
#[command(name = "sta-perceptron", version, about = "Sigmoid-activation pulses for a qubit perceptron")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads; 0 uses all cores. Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inverse-engineer a pulse (defaults: cubic, t_f = 1).
    Synth,
    /// Build a FAQUAD pulse (defaults: t_f = 0.15).
    Faquad,
    /// Transfer function and distance C of a pulse.
    Transfer,
    /// C versus t_f, Ω_f or y, or the time-optimal search.
    Sweep,
    /// C over a free-coefficient grid.
    Scan,
    /// Apply the pulse as a gate on a register of input qubits.
    Network,
    /// Run a bundled figure preset, or `list` to show them.
    Preset { name: String },
}

fn read_config<T: DeserializeOwned + Default>(path: Option<&Path>, required: bool) -> CliResult<T> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            config::parse(&text)
        }
        None if required => Err(CliError::Config("this command needs --config PATH".into())),
        None => Ok(T::default()),
    }
}

fn read_required<T: DeserializeOwned>(path: Option<&Path>) -> CliResult<T> {
    let p = path.ok_or_else(|| CliError::Config("this command needs --config PATH".into()))?;
    let text = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    config::parse(&text)
}

fn write_outputs(dir: &Path, outputs: &Outputs) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for (name, contents) in outputs {
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_preset_step(run: &Run) -> CliResult<Outputs> {
    match run {
        Run::Synth(c) => commands::synth(c),
        Run::Faquad(c) => commands::faquad(c),
        Run::Transfer(c) => commands::transfer(c),
        Run::Sweep(c) => commands::sweep(c),
        Run::Scan(c) => commands::scan(c),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = cli.config.as_deref();
    let outputs = match &cli.command {
        Command::Synth => commands::synth(&read_config(cfg, false)?)?,
        Command::Faquad => commands::faquad(&read_config(cfg, false)?)?,
        Command::Transfer => commands::transfer(&read_required(cfg)?)?,
        Command::Sweep => commands::sweep(&read_required(cfg)?)?,
        Command::Scan => commands::scan(&read_required(cfg)?)?,
        Command::Network => commands::network(&read_required(cfg)?)?,
        Command::Preset { name } if name == "list" => {
            for (n, d) in presets::PRESETS {
                println!("{n:6}  {d}");
            }
            return Ok(());
        }
        Command::Preset { name } => {
            for (sub, step) in presets::runs(name)? {
                let dir = cli.out.join(name).join(&sub);
                write_outputs(&dir, &run_preset_step(&step)?)?;
                println!("{}", dir.display());
            }
            return Ok(());
        }
    };
    write_outputs(&cli.out, &outputs)?;
    for (name, _) in &outputs {
        println!("{}", cli.out.join(name).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match with_threads(cli.threads, || run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
