use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qclaim::scenario::{run_scenario, Kind, RunError};
use qclaim::Tolerances;

/// Price, calibrate and optimize claims contingent on quantum measurements.
#[derive(Debug, Parser)]
#[command(name = "qclaim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Io {
    /// Scenario JSON file
    #[arg(long)]
    scenario: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized verification; overrides the scenario's own
    #[arg(long)]
    seed: Option<u64>,
    /// Indent the JSON report
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Price claims and check the no-arbitrage axioms
    Price(Io),
    /// Recover the pricing state from quoted prices
    Calibrate(Io),
    /// Utility-optimal payouts with return and divergence analytics
    Optimize(Io),
    /// Rate of return of a given claim
    Returns(Io),
    /// Verify the 18-ray contextuality configuration
    Ks(Io),
    /// Probabilities and scores for the nine-contract menu
    Menu(Io),
    /// Two-system portfolio payouts, prices and correlations
    Portfolio(Io),
}

impl Command {
    fn split(self) -> (Kind, Io) {
        match self {
            Command::Price(io) => (Kind::Price, io),
            Command::Calibrate(io) => (Kind::Calibrate, io),
            Command::Optimize(io) => (Kind::Optimize, io),
            Command::Returns(io) => (Kind::Returns, io),
            Command::Ks(io) => (Kind::Ks, io),
            Command::Menu(io) => (Kind::Menu, io),
            Command::Portfolio(io) => (Kind::Portfolio, io),
        }
    }
}

fn tolerances() -> Result<Tolerances, RunError> {
    match std::env::var("QCLAIM_TOL_SCALE") {
        Err(_) => Ok(Tolerances::default()),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(f) if f.is_finite() && f > 0.0 => Ok(Tolerances::default().scaled(f)),
            _ => Err(RunError::Validation(format!("QCLAIM_TOL_SCALE must be a positive number, got `{raw}`"))),
        },
    }
}

fn run(kind: Kind, io: &Io) -> Result<(), RunError> {
    let tol = tolerances()?;
    let bytes = fs::read(&io.scenario)
        .map_err(|e| RunError::Validation(format!("cannot read {}: {e}", io.scenario.display())))?;
    let report = run_scenario(kind, &bytes, io.seed, &tol)?;
    let rendered = report.render(io.pretty) + "\n";
    match &io.out {
        Some(path) => {
            fs::write(path, rendered)
                .map_err(|e| RunError::Validation(format!("cannot write {}: {e}", path.display())))?;
            emit(&mut io::stdout(), &report.summary);
        }
        None => {
            emit(&mut io::stdout(), &rendered);
            emit(&mut io::stderr(), &report.summary);
        }
    }
    Ok(())
}

// A closed pipe downstream is not our failure.
fn emit(out: &mut impl Write, text: &str) {
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, io) = cli.command.split();
    match run(kind, &io) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", qclaim::scenario::render_json(&e.record(), false));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
