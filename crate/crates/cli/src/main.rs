use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::debug;

use qnlo_cli::config::{env_overrides, split_assignment};
use qnlo_cli::error::{CliError, EXIT_CONFIG};
use qnlo_cli::output::write_atomic;
use qnlo_cli::{load, run, Command, RunConfig, RunOptions};

#[derive(Parser)]
#[command(
    name = "qnlo",
    version,
    about = "Effective couplings, spectra and dynamics of qubit-resonator systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Lowest-order effective coupling between two bare states.
    Geff(Common),
    /// Tracked dressed levels over a parameter sweep, one column set per model.
    Spectrum(Common),
    /// Population dynamics from a bare state.
    Evolve(Common),
    /// Registry of nonlinear processes, one record per line.
    Catalog(Common),
    /// Classical polarization spectrum as frequency,amplitude CSV.
    Classical(Common),
    /// Catalog consistency checks and closed-form comparisons.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Compare the path sum with every published closed form.
        #[arg(long)]
        all_closed_forms: bool,
    },
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    config: Option<PathBuf>,
    /// Override a config value, e.g. `--set spectrum.points=81`. Repeatable;
    /// applied after QNLO__* environment overrides.
    #[arg(long = "set", value_name = "PATH=VALUE")]
    set: Vec<String>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Print paths, crossing estimates or per-point comparisons.
    #[arg(long)]
    explain: bool,
}

fn execute(command: Command, common: &Common, all_closed_forms: bool) -> Result<bool, CliError> {
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(CliError::config("--threads: must be >= 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("--threads: {e}")))?;
    }

    let text = match &common.config {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::config(format!("{}: {e}", p.display())))?
        }
        None => String::new(),
    };
    let mut overrides = env_overrides(std::env::vars());
    for s in &common.set {
        overrides.push(split_assignment(s)?);
    }
    debug!("{} override(s)", overrides.len());
    let config: RunConfig = load(&text, &overrides)?;

    let opts = RunOptions {
        explain: common.explain,
        all_closed_forms,
    };
    let report = run(command, &config, opts)?;
    for n in &report.notes {
        eprintln!("{n}");
    }
    let target = common
        .output
        .clone()
        .or_else(|| config.output.clone().map(PathBuf::from));
    match target {
        Some(p) => write_atomic(&p, &report.body)?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(report.body.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(CliError::io("stdout", e));
                }
                _ => {}
            }
        }
    }
    Ok(report.failed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let (command, common, all) = match &cli.command {
        Sub::Geff(c) => (Command::Geff, c, false),
        Sub::Spectrum(c) => (Command::Spectrum, c, false),
        Sub::Evolve(c) => (Command::Evolve, c, false),
        Sub::Catalog(c) => (Command::Catalog, c, false),
        Sub::Classical(c) => (Command::Classical, c, false),
        Sub::Verify {
            common,
            all_closed_forms,
        } => (Command::Verify, common, *all_closed_forms),
    };
    match execute(command, common, all) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qnlo {}: {e}", command.name());
            ExitCode::from(e.code)
        }
    }
}
