use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nilaut_harness::{emit_report, parse_m_range, run_suite, ConfigFile, HarnessError, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "nilaut",
    version,
    about = "Seeded verification suites for free nilpotent groups and their automorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite and report per-check pass/fail.
    Verify(VerifyArgs),
    /// Print each suite with the statement it checks and its budgets.
    ListSuites,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, see `list-suites`.
    #[arg(long)]
    suite: Option<String>,
    /// Rank; omit to run the suite's default grid.
    #[arg(long)]
    rank: Option<usize>,
    /// Nilpotency class; omit to run the suite's default grid.
    #[arg(long)]
    class: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the canonical JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Range `a:b` of the family parameter m.
    #[arg(long, allow_hyphen_values = true)]
    m_range: Option<String>,
    /// Sample budget; its meaning depends on the suite.
    #[arg(long)]
    samples: Option<usize>,
    /// JSON file with the same keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Record wall-clock time in the report (makes reports differ between runs).
    #[arg(long)]
    timing: bool,
}

fn config(args: &VerifyArgs) -> Result<(SuiteConfig, Option<PathBuf>), HarnessError> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let Some(suite) = args.suite.clone().or(file.suite) else {
        return Err(HarnessError::Usage(
            "--suite is required (or \"suite\" in the config file)".into(),
        ));
    };
    let m_range = match args.m_range.as_ref().or(file.m_range.as_ref()) {
        Some(text) => Some(parse_m_range(text)?),
        None => None,
    };
    let cfg = SuiteConfig {
        suite,
        rank: args.rank.or(file.rank),
        class: args.class.or(file.class),
        trials: args.trials.or(file.trials),
        seed: args.seed.or(file.seed).unwrap_or(0),
        m_range,
        samples: args.samples.or(file.samples),
    };
    Ok((cfg, args.report.clone().or(file.report)))
}

fn verify(args: &VerifyArgs) -> Result<i32, HarnessError> {
    let (cfg, report_path) = config(args)?;
    let start = Instant::now();
    let mut report = run_suite(&cfg)?;
    if args.timing {
        report.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
    }
    for c in &report.checks {
        println!(
            "{:<5} {}  trials={} failures={}",
            c.status.name().to_uppercase(),
            c.label(),
            c.trials,
            c.failures
        );
    }
    println!(
        "{}: {} ({} checks)",
        report.suite,
        report.status().name(),
        report.checks.len()
    );
    if let Some(path) = report_path {
        emit_report(&report, &path)?;
    }
    Ok(report.exit_code())
}

fn list_suites() {
    for s in Suite::ALL {
        println!("{:<18} {}", s.name(), s.anchor());
        println!("{:<18}   trials: {} ({})", "", s.default_trials(), s.trials_meaning());
        if let Some(m) = s.samples_meaning() {
            println!("{:<18}   samples: {m}", "");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::ListSuites => {
            list_suites();
            0
        }
        Command::Verify(args) => match verify(args) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    };
    ExitCode::from(code as u8)
}
