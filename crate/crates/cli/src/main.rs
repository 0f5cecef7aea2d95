use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fdtd_stab_cli::config::{from_table, Command};
use fdtd_stab_cli::{run_command, version_text, CliError};

/// Stability analysis and simulation of dispersive FD-TD schemes.
///
/// Settings come from an optional TOML file (`--config`); flags override
/// file keys. Units are SI. Exit status: 0 success, 1 verification
/// mismatch, 2 invalid input, 3 numerical failure.
#[derive(Parser)]
#[command(name = "fdtd-stab", disable_version_flag = true)]
struct Cli {
    /// Print the version and physical constants.
    #[arg(short = 'V', long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Subcommand)]
enum Sub {
    /// Verdict at one wavenumber, or the worst case over all of them.
    Analyze(Flags),
    /// Verdicts over a (k, xi) grid, or over q at fixed k.
    Scan(Flags),
    /// Time-step a plane wave and report its norm per step.
    Simulate(Flags),
    /// Compare analyzer and simulator over a stratified sample plan.
    Verify(Flags),
    /// Reproduce the proof tables for one or all schemes.
    Tables(Flags),
}

#[derive(Args, Default)]
struct Flags {
    /// TOML file with run settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// debye-joseph, debye-young, lorentz-joseph, lorentz-kashiwa or lorentz-young.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    eps_inf: Option<f64>,
    #[arg(long)]
    eps_s: Option<f64>,
    /// Debye relaxation time (s).
    #[arg(long)]
    t_r: Option<f64>,
    /// Lorentz resonance frequency (rad/s).
    #[arg(long)]
    omega1: Option<f64>,
    /// Lorentz damping (rad/s).
    #[arg(long)]
    nu: Option<f64>,
    /// Time step (s).
    #[arg(long)]
    k: Option<f64>,
    /// Space step (m); both axes in 2D unless h-x/h-y are given.
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    h_x: Option<f64>,
    #[arg(long)]
    h_y: Option<f64>,
    /// 1 or 2 [default: 1].
    #[arg(long)]
    dim: Option<u8>,
    /// te or tm (2D only).
    #[arg(long)]
    polarization: Option<String>,
    /// Wavenumber in radians per cell.
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long)]
    xi_y: Option<f64>,
    /// Time steps per simulation [default: 5000, verify 100000].
    #[arg(long)]
    steps: Option<usize>,
    /// Per-step growth tolerance [default: 1e-4, verify 1e-6].
    #[arg(long)]
    growth_tol: Option<f64>,
    /// CSV output path; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Sample count for verify [default: 200].
    #[arg(long)]
    samples: Option<usize>,
    /// Seed of the verify sample plan [default: 1].
    #[arg(long, value_parser = clap::value_parser!(u64).range(..=i64::MAX as u64))]
    seed: Option<u64>,
    /// Band in q around a boundary excluded from verify [default: 1e-3].
    #[arg(long)]
    margin: Option<f64>,
    /// Also simulate in analyze.
    #[arg(long)]
    empirical: bool,
    #[arg(long)]
    k_min: Option<f64>,
    #[arg(long)]
    k_max: Option<f64>,
    /// [default: 16]
    #[arg(long)]
    k_count: Option<usize>,
    /// [default: 33]
    #[arg(long)]
    xi_count: Option<usize>,
    #[arg(long)]
    q_min: Option<f64>,
    #[arg(long)]
    q_max: Option<f64>,
    /// [default: 46]
    #[arg(long)]
    q_count: Option<usize>,
    /// Grid cells per axis for simulate.
    #[arg(long)]
    cells: Option<usize>,
}

impl Flags {
    fn into_table(self, command: Command) -> Result<toml::Table, CliError> {
        let mut t = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
                text.parse::<toml::Table>()
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => toml::Table::new(),
        };
        t.insert("command".into(), command.name().into());
        let mut set = |key: &str, v: Option<toml::Value>| {
            if let Some(v) = v {
                t.insert(key.into(), v);
            }
        };
        let int = |v: usize| toml::Value::Integer(v as i64);
        set("scheme", self.scheme.map(Into::into));
        set("eps_inf", self.eps_inf.map(Into::into));
        set("eps_s", self.eps_s.map(Into::into));
        set("t_r", self.t_r.map(Into::into));
        set("omega1", self.omega1.map(Into::into));
        set("nu", self.nu.map(Into::into));
        set("k", self.k.map(Into::into));
        set("h", self.h.map(Into::into));
        set("h_x", self.h_x.map(Into::into));
        set("h_y", self.h_y.map(Into::into));
        set("dim", self.dim.map(|d| toml::Value::Integer(d.into())));
        set("polarization", self.polarization.map(Into::into));
        set("xi", self.xi.map(Into::into));
        set("xi_y", self.xi_y.map(Into::into));
        set("steps", self.steps.map(int));
        set("growth_tol", self.growth_tol.map(Into::into));
        set("output", self.output.map(|p| p.display().to_string().into()));
        set("samples", self.samples.map(int));
        set("seed", self.seed.map(|s| toml::Value::Integer(s as i64)));
        set("margin", self.margin.map(Into::into));
        set("empirical", self.empirical.then_some(true.into()));
        set("k_min", self.k_min.map(Into::into));
        set("k_max", self.k_max.map(Into::into));
        set("k_count", self.k_count.map(int));
        set("xi_count", self.xi_count.map(int));
        set("q_min", self.q_min.map(Into::into));
        set("q_max", self.q_max.map(Into::into));
        set("q_count", self.q_count.map(int));
        set("cells", self.cells.map(int));
        Ok(t)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        print!("{}", version_text());
        return ExitCode::SUCCESS;
    }
    let Some(sub) = cli.command else {
        eprintln!("a command is required; see --help");
        return ExitCode::from(2);
    };
    let (command, flags) = match sub {
        Sub::Analyze(f) => (Command::Analyze, f),
        Sub::Scan(f) => (Command::Scan, f),
        Sub::Simulate(f) => (Command::Simulate, f),
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Tables(f) => (Command::Tables, f),
    };
    let result = flags.into_table(command).and_then(from_table).and_then(|cfg| run_command(&cfg));
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
