use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use orbit_resolve::polarizations::QFilter;
use orbit_resolve::report::{self, Command, OutputFormat, RunConfig, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS};
use orbit_resolve::{Error, LieTypeRank, Partition};

const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// List nilpotent orbits with dimensions, dual partitions and parity counts.
    Orbits,
    /// Check that all resolutions of each orbit closure share a Levi class.
    Verify,
    /// Certify the degeneration family for every parabolic.
    Deform,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Filter {
    Exact,
    OffByOne,
    Disabled,
}

/// Exact verification of symplectic resolutions of nilpotent orbit closures
/// in classical Lie algebras.
#[derive(Debug, Parser)]
#[command(name = "orbit-resolve", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Type and rank, e.g. A3, B2, C3, D4.
    type_rank: LieTypeRank,
    /// Restrict to one orbit, e.g. [2,2].
    #[arg(long)]
    orbit: Option<Partition>,
    #[arg(long, env = "ORBIT_RESOLVE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Samples per round of Richardson sampling (at least 3).
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Fiber samples per characteristic-polynomial check (at least 3).
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Comma-separated exact rationals; must include 0 and a nonzero value.
    #[arg(long, default_value = "0,1,-1,2,1/2", allow_hyphen_values = true)]
    t_values: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resolution filter for verify; the non-exact settings are negative controls.
    #[arg(long, value_enum, default_value = "exact")]
    q_filter: Filter,
    /// Record wall-clock time in the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Config(_)
            | Error::UnsupportedRank { .. }
            | Error::InvalidPartition { .. }
            | Error::TotalMismatch { .. }
            | Error::WrongFamily { .. }
    )
}

fn run(cli: Cli) -> Result<i32, Error> {
    let mut config = RunConfig::new(cli.type_rank);
    config.orbit_filter = cli.orbit;
    config.seed = cli.seed;
    config.trials = cli.trials;
    config.samples = cli.samples;
    config.t_values = report::parse_t_values(&cli.t_values)?;
    config.output_format = match cli.format {
        Format::Json => OutputFormat::Json,
        Format::Markdown => OutputFormat::Markdown,
        Format::Csv => OutputFormat::Csv,
    };
    config.q_filter = match cli.q_filter {
        Filter::Exact => QFilter::Exact,
        Filter::OffByOne => QFilter::OffByOne,
        Filter::Disabled => QFilter::Disabled,
    };
    let command = match cli.command {
        Cmd::Orbits => Command::Orbits,
        Cmd::Verify => Command::Verify,
        Cmd::Deform => Command::Deform,
    };

    let start = Instant::now();
    let mut rep = report::run(command, &config)?;
    if cli.timing {
        let ms = start.elapsed().as_millis() as u64;
        rep.duration_ms = Some(ms);
        eprintln!("elapsed: {ms} ms");
    }
    let text = report::render(&rep, config.output_format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(rep.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { EXIT_USAGE } else { 1 })
        }
    }
}
