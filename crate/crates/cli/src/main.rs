//! `qdlab` — run dephasing-distance experiments from config files.
//!
//! Subcommands:
//! - `run`: one time sweep, CSV to `--csv` (or stdout) and optional SVG.
//! - `scan`: parameter scan of `MAX[D(t) - D(0)]` over `scan_values`.
//!
//! Exit codes: 0 success, 1 configuration/validation error, 2 model or
//! runtime error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qdlab_core::lab::{
    emit_csv, emit_plot, emit_scan_csv, parse_config, run_scan, run_timeseries, PlotInput,
};

#[derive(Parser)]
#[command(name = "qdlab", version, about = "Qubit dephasing distance laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a time sweep and emit the distance time series.
    Run(JobArgs),
    /// Run a parameter scan of MAX[D(t) - D(0)] over the configured axis.
    Scan(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Path to the experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// CSV output path; stdout when omitted and the config names none.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// SVG output path.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Extra `key=value` lines appended to the config (repeatable).
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (job, is_scan) = match &cli.command {
        Command::Run(job) => (job, false),
        Command::Scan(job) => (job, true),
    };
    match execute(job, is_scan) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdlab: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

fn execute(job: &JobArgs, is_scan: bool) -> Result<(), Failure> {
    let mut text = fs::read_to_string(&job.config)
        .map_err(|e| fail(EXIT_CONFIG, format!("cannot read {}: {e}", job.config.display())))?;
    for extra in &job.overrides {
        if !extra.contains('=') {
            return Err(fail(EXIT_CONFIG, format!("--override needs KEY=VALUE, got `{extra}`")));
        }
        text.push('\n');
        text.push_str(extra);
    }

    let cfg = parse_config(&text).map_err(|e| fail(EXIT_CONFIG, e))?;
    if is_scan && cfg.scan.is_none() {
        return Err(fail(EXIT_CONFIG, "scan requested but the config has no scan_axis"));
    }

    let csv_path = job.csv.clone().or_else(|| cfg.csv_path.as_ref().map(PathBuf::from));
    let plot_path = job.plot.clone().or_else(|| cfg.plot_path.as_ref().map(PathBuf::from));

    if is_scan {
        let result = run_scan(&cfg).map_err(|e| fail(EXIT_RUNTIME, e))?;
        write_output(&csv_path, |sink| emit_scan_csv(&result, sink))
            .map_err(|e| fail(EXIT_RUNTIME, e))?;
        if let Some(path) = plot_path {
            let mut file = create(&path)?;
            emit_plot(PlotInput::Scan(&result), &mut file)
                .map_err(|e| fail(EXIT_RUNTIME, e))?;
        }
    } else {
        let series = run_timeseries(&cfg).map_err(|e| fail(EXIT_RUNTIME, e))?;
        write_output(&csv_path, |sink| emit_csv(&series, sink))
            .map_err(|e| fail(EXIT_RUNTIME, e))?;
        if let Some(path) = plot_path {
            let mut file = create(&path)?;
            emit_plot(PlotInput::Series(&series), &mut file)
                .map_err(|e| fail(EXIT_RUNTIME, e))?;
        }
    }
    Ok(())
}

fn create(path: &PathBuf) -> Result<fs::File, Failure> {
    fs::File::create(path)
        .map_err(|e| fail(EXIT_RUNTIME, format!("cannot write {}: {e}", path.display())))
}

fn write_output<F>(path: &Option<PathBuf>, write: F) -> std::io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => {
            let mut file = fs::File::create(p)?;
            write(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    }
}
