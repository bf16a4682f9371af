//! `sagnac`: command-line front end to the trap-guided Sagnac interferometer model.

mod commands;
mod config;
mod output;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sagnac_core::ProfileFamily;

use config::{parse_bracket, Format, RunConfig, Sweep};
use output::{Output, Table, Value};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(sagnac_core::Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Core(e) if e.is_numerical() => write!(f, "numerical error: {e}"),
            CliError::Core(e) => write!(f, "invalid input: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<sagnac_core::Error> for CliError {
    fn from(e: sagnac_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sagnac", version, about = "Trap-guided atomic Sagnac interferometer")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    mass: Option<f64>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Trap frequency ω₀.
    #[arg(long, global = true)]
    omega0: Option<f64>,
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Rotation rate Ω.
    #[arg(long, global = true, allow_hyphen_values = true)]
    rotation: Option<f64>,
    /// flat, sinusoidal, cosinusoidal or tabulated.
    #[arg(long, global = true)]
    family: Option<ProfileFamily>,
    /// Interrogation time T.
    #[arg(long, global = true)]
    duration: Option<f64>,
    /// Comma-separated samples of a tabulated profile.
    #[arg(long, global = true, value_delimiter = ',')]
    samples: Option<Vec<f64>>,
    /// Evaluate over `key=start:stop:n` in parallel.
    #[arg(long, global = true)]
    sweep: Option<Sweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Panel {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier spectrum W(ω) of the sweep profile.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        omega_min: Option<f64>,
        #[arg(long)]
        omega_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Coherent-state paths α(t) and phases φ(t) of the spin branches.
    Trajectory {
        #[arg(long)]
        intervals: Option<usize>,
    },
    /// Interferometer readout: contrast, phase and spin signal.
    Simulate,
    /// Dynamic and geometric parts of the phase difference.
    Decompose {
        #[arg(long)]
        intervals: Option<usize>,
    },
    /// Interrogation time with a vanishing spectrum at ω₀.
    Design {
        /// Design index (K, L or M depending on the family).
        #[arg(long)]
        index: Option<u32>,
        /// Search for a zero in `lower:upper` instead.
        #[arg(long, value_parser = parse_bracket)]
        bracket: Option<[f64; 2]>,
    },
    /// Rotation-rate uncertainty and Fisher information.
    Sensitivity,
    /// Compare the closed form with a truncated Fock-space propagation.
    Verify {
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Check only the configured profile instead of the design points.
        #[arg(long)]
        current: bool,
    },
    /// Data behind the profile, spectrum and path panels a to f.
    Fig2 {
        #[arg(long, value_enum)]
        panel: Panel,
        #[arg(long)]
        points: Option<usize>,
    },
}

fn apply_overrides(cfg: &mut RunConfig, g: &GlobalArgs, command: &Command) {
    let t = &mut cfg.trap;
    for (slot, v) in [
        (&mut t.mass, g.mass),
        (&mut t.hbar, g.hbar),
        (&mut t.omega0, g.omega0),
        (&mut t.radius, g.radius),
        (&mut t.rotation, g.rotation),
    ] {
        if let Some(v) = v {
            *slot = v;
        }
    }
    if let Some(f) = g.family {
        cfg.profile.family = f;
    }
    if g.duration.is_some() {
        cfg.profile.duration = g.duration;
    }
    if g.samples.is_some() {
        cfg.profile.samples = g.samples.clone();
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    if g.output.is_some() {
        cfg.output = g.output.clone();
    }
    match command {
        Command::Spectrum {
            omega_min,
            omega_max,
            points,
        } => {
            let s = &mut cfg.spectrum;
            s.omega_min = omega_min.unwrap_or(s.omega_min);
            s.omega_max = omega_max.unwrap_or(s.omega_max);
            s.points = points.unwrap_or(s.points);
        }
        Command::Trajectory { intervals } => {
            cfg.trajectory.intervals = intervals.unwrap_or(cfg.trajectory.intervals);
        }
        Command::Decompose { intervals } => {
            if intervals.is_some() {
                cfg.decompose_intervals = *intervals;
            }
        }
        Command::Design { index, bracket } => {
            if index.is_some() || bracket.is_some() {
                cfg.design.index = *index;
                cfg.design.bracket = *bracket;
            }
        }
        Command::Verify {
            n_max,
            steps,
            tolerance,
            ..
        } => {
            let s = &mut cfg.fock;
            s.n_max = n_max.unwrap_or(s.n_max);
            s.steps = steps.unwrap_or(s.steps);
            s.tolerance = tolerance.unwrap_or(s.tolerance);
        }
        Command::Simulate | Command::Sensitivity | Command::Fig2 { .. } => {}
    }
}

fn run_sweep(command: &Command, cfg: &RunConfig, sweep: &Sweep) -> Result<commands::Outcome, CliError> {
    let points: Vec<(usize, f64)> = sweep.values().into_iter().enumerate().collect();
    let results: Vec<Result<commands::Outcome, CliError>> = points
        .par_iter()
        .map(|&(_, v)| {
            let mut c = cfg.clone();
            c.set(sweep.key, v);
            c.validate()?;
            commands::run(command, &c)
        })
        .collect();
    let mut merged: Option<Table> = None;
    let mut verified = true;
    for (&(i, v), r) in points.iter().zip(results) {
        let r = r?;
        verified &= r.verified;
        let t = r.output.into_table();
        let m = merged.get_or_insert_with(|| {
            let mut cols = vec!["sweep_index".to_string(), format!("sweep_{}", sweep.key.name())];
            cols.extend(t.columns.iter().cloned());
            Table {
                columns: cols,
                rows: Vec::new(),
            }
        });
        for row in t.rows {
            let mut full: Vec<Value> = vec![i.into(), v.into()];
            full.extend(row);
            m.rows.push(full);
        }
    }
    Ok(commands::Outcome {
        output: Output::Table(merged.unwrap_or_default()),
        verified,
    })
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let mut cfg = match &cli.global.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    apply_overrides(&mut cfg, &cli.global, &cli.command);
    cfg.validate()?;
    let outcome = match &cli.global.sweep {
        Some(sweep) => run_sweep(&cli.command, &cfg, sweep)?,
        None => commands::run(&cli.command, &cfg)?,
    };
    let text = outcome.output.render(cfg.format);
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(outcome.verified)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
