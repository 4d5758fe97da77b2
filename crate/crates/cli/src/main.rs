//! `qwalk`: simulate the two-state quantum walk and cross-check closed forms.
//!
//! Exit codes: 0 on success, 2 on bad input, 3 when a numerical self-check fails.

mod commands;
mod config;
mod output;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_list, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "One-dimensional two-state quantum walk toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Position distribution at time n: engine against closed form.
    Dist {
        #[command(flatten)]
        config: RunConfig,
        #[arg(short = 'n', long)]
        n: usize,
    },
    /// Characteristic function on a grid of xi values.
    Charfn {
        #[command(flatten)]
        config: RunConfig,
        #[arg(short = 'n', long)]
        n: usize,
        /// Comma-separated xi values; overrides --xi-points.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Number of evenly spaced xi values on [-pi, pi].
        #[arg(long, default_value_t = 21)]
        xi_points: usize,
    },
    /// Moments E(X_n^m) for m = 1..=M.
    Moments {
        #[command(flatten)]
        config: RunConfig,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'm', long = "m-max", default_value_t = 4)]
        m_max: u32,
    },
    /// Symmetric-distribution membership of the initial state.
    Symmetry {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Limit density and CDF of X_n / n on interior grid points.
    Limit {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
    /// KS distance between X_n / n and the limit law.
    Converge {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, default_value = "50,100,200,400")]
        n_list: String,
    },
    /// Path enumeration against closed forms and the engine.
    Oracle {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, default_value_t = 10)]
        n_cap: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "error: {msg}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (config, report) = match &cli.command {
        Command::Dist { config, n } => (config, commands::dist(&config.coin()?, &config.qubit()?, *n)?),
        Command::Charfn {
            config,
            n,
            xi,
            xi_points,
        } => {
            let (coin, qubit) = (config.coin()?, config.qubit()?);
            let grid = match xi {
                Some(text) => parse_list::<f64>(text, "--xi")?,
                None => commands::xi_grid(*xi_points),
            };
            if grid.iter().any(|x| !x.is_finite()) {
                return Err(CliError::Input("--xi: values must be finite".into()));
            }
            (config, commands::charfn(&coin, &qubit, *n, &grid)?)
        }
        Command::Moments { config, n, m_max } => (
            config,
            commands::moments(&config.coin()?, &config.qubit()?, *n, *m_max)?,
        ),
        Command::Symmetry { config, n_max } => (config, commands::symmetry(&config.coin()?, &config.qubit()?, *n_max)?),
        Command::Limit { config, points } => (config, commands::limit(&config.coin()?, &config.qubit()?, *points)?),
        Command::Converge { config, n_list } => {
            let (coin, qubit) = (config.coin()?, config.qubit()?);
            let list = parse_list::<usize>(n_list, "--n-list")?;
            (config, commands::converge(&coin, &qubit, &list)?)
        }
        Command::Oracle { config, n_cap } => (config, commands::oracle(&config.coin()?, &config.qubit()?, *n_cap)?),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    report.table.write(config.format, &mut out).map_err(CliError::Io)?;
    out.flush().map_err(CliError::Io)?;
    for failure in &report.failures {
        eprintln!("self-check failed: {failure}");
    }
    Ok(report.failures.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
