//! Experiment runner: quenches, information profiles, codification volumes,
//! long-time averages, and Haar-ensemble tables, emitted as CSV (with a JSON
//! mirror on request).
//!
//! Exit codes: 0 on success, 1 on runtime failure (with a JSON error record
//! on stderr), 2 on argument errors.

mod experiments;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use experiments::{InitialArg, PolicyArg, Units};
use table::ResultTable;

#[derive(Parser)]
#[command(
    name = "codivol",
    version,
    about = "Entanglement, mutual information, and codification-volume experiments on spin chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputOpts {
    /// Write the CSV table here (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also write a JSON mirror of the table here
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

fn parse_window(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected LO,HI".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| "LO is not a number".to_string())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| "HI is not a number".to_string())?;
    Ok((lo, hi))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Information between the first site and growing blocks along a quench
    QuenchMi {
        /// Number of chain sites
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Ising coupling J (fields scale with it)
        #[arg(long = "J", default_value_t = 1.0)]
        coupling: f64,
        /// Initial product state
        #[arg(long, value_enum, default_value_t = InitialArg::Both)]
        initial: InitialArg,
        /// Latest sample time, in units of 1/J (10 samples per unit time)
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        /// Output units for entropies and informations
        #[arg(long, value_enum, default_value_t = Units::Nats)]
        units: Units,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Codification volume of the first site along a quench
    QuenchCv {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long = "J", default_value_t = 1.0)]
        coupling: f64,
        /// Accuracy threshold, in nats
        #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = InitialArg::Both)]
        initial: InitialArg,
        /// Search policy (or both)
        #[arg(long, value_enum, default_value_t = PolicyArg::Contiguous)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Window-averaged quench information next to Haar Monte Carlo and the
    /// closed form
    LongtimeAverage {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long = "J", default_value_t = 1.0)]
        coupling: f64,
        /// Seed of the Haar sampler
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Monte Carlo sample count
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        /// Averaging window LO,HI (in units of 1/J)
        #[arg(long, value_parser = parse_window, default_value = "25,50")]
        window: (f64, f64),
        #[arg(long, value_enum, default_value_t = Units::Nats)]
        units: Units,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Haar-average information curves at block fractions near 1/9 and 2/9
    EnsembleMi {
        #[arg(long, default_value_t = 18)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Add Monte Carlo columns (feasible for n <= 12)
        #[arg(long)]
        mc: bool,
        #[arg(long, value_enum, default_value_t = Units::Nats)]
        units: Units,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Closed-form average entropies and codification volumes
    PageTables {
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Accuracy threshold for the volume columns, in nats
        #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Units::Nats)]
        units: Units,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn emit(table: &ResultTable, output: &OutputOpts, started: Instant) -> Result<()> {
    let wall = started.elapsed().as_secs_f64();
    match &output.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating output file {}", path.display()))?;
            table
                .write_csv(std::io::BufWriter::new(file), wall)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            table.write_csv(stdout.lock(), wall)?;
        }
    }
    if let Some(path) = &output.json {
        let value = table.to_json(wall)?;
        let mut file = std::fs::File::create(path)
            .with_context(|| format!("creating JSON mirror {}", path.display()))?;
        writeln!(file, "{}", serde_json::to_string_pretty(&value)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn validate_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        bail!("epsilon must be positive and finite (got {epsilon})");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let started = Instant::now();
    match cli.command {
        Command::QuenchMi { n, coupling, initial, tmax, units, output } => {
            let cfg = experiments::QuenchMiConfig { n, coupling, t_max: tmax, initial, units };
            emit(&experiments::run_quench_mi(&cfg)?, &output, started)
        }
        Command::QuenchCv { n, coupling, epsilon, initial, policy, tmax, output } => {
            validate_epsilon(epsilon)?;
            let cfg = experiments::QuenchCvConfig {
                n,
                coupling,
                epsilon,
                t_max: tmax,
                initial,
                policy,
            };
            emit(&experiments::run_quench_cv(&cfg)?, &output, started)
        }
        Command::LongtimeAverage { n, coupling, seed, samples, tmax, window, units, output } => {
            let cfg = experiments::LongtimeConfig {
                n,
                coupling,
                seed,
                samples,
                t_max: tmax,
                window,
                units,
            };
            emit(&experiments::run_longtime_average(&cfg)?, &output, started)
        }
        Command::EnsembleMi { n, seed, samples, mc, units, output } => {
            let cfg = experiments::EnsembleMiConfig { n, seed, samples, monte_carlo: mc, units };
            emit(&experiments::run_ensemble_mi(&cfg)?, &output, started)
        }
        Command::PageTables { n, epsilon, units, output } => {
            validate_epsilon(epsilon)?;
            let cfg = experiments::PageTablesConfig { n, epsilon, units };
            emit(&experiments::run_page_tables(&cfg)?, &output, started)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        let record = serde_json::json!({
            "error": format!("{err:#}"),
        });
        eprintln!("{record}");
        std::process::exit(1);
    }
}
