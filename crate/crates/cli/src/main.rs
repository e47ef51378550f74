//! `qgraph`: constructions and verification sweeps for q-ary graphs.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! usage or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{InputError, Kind, Tier};
use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "qgraph", version, about = "q-ary graphs over F_q^v: constructions and verification sweeps")]
struct Cli {
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true, env = "QGRAPH_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the split Cayley hexagon H(2) and run the validator suite.
    HexagonVerify {
        /// Write the 63 lines to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Line orbits of the Singer example and its three Deza graphs.
    Singer {
        /// Directory for the three Deza line sets.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Classify a line-set file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Spread file, required for --kind ddg.
        #[arg(long)]
        spread: Option<PathBuf>,
    },
    /// The (6,2,1,0;2) classification sweep.
    #[command(name = "classify-61012")]
    Classify61012 {
        #[arg(long, value_enum, default_value = "fast")]
        tier: Tier,
        /// Element budget for the GL(5,2) sweep and the orbit store.
        #[arg(long)]
        budget: Option<u64>,
        /// Retained-couple checkpoint; read when present, written otherwise.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Directory for the reconstructed Deza line sets (full tier).
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn run(cli: &Cli, report: &mut RunReport) -> anyhow::Result<()> {
    match &cli.command {
        Command::HexagonVerify { emit } => {
            report.input("emit", emit);
            commands::hexagon_verify(report, emit.as_deref())
        }
        Command::Singer { emit } => {
            report.input("emit", emit);
            commands::singer(report, emit.as_deref())
        }
        Command::Check { file, kind, spread } => {
            report.input("file", file);
            report.input("kind", kind);
            report.input("spread", spread);
            commands::check(report, file, *kind, spread.as_deref())
        }
        Command::Classify61012 { tier, budget, checkpoint, emit } => {
            report.input("tier", tier);
            report.input("budget", budget);
            report.input("checkpoint", checkpoint);
            commands::classify_61012(report, *tier, *budget, checkpoint.as_deref(), emit.as_deref())
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::HexagonVerify { .. } => "hexagon-verify",
        Command::Singer { .. } => "singer",
        Command::Check { .. } => "check",
        Command::Classify61012 { .. } => "classify-61012",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if workers == 0 {
        eprintln!("error: --workers must be positive");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut report = RunReport::new(command_name(&cli.command));
    let start = Instant::now();
    let outcome = run(&cli, &mut report);
    report.timing.elapsed_ms = start.elapsed().as_millis();
    report.timing.workers = workers;
    if let Err(e) = &outcome {
        eprintln!("error: {e:#}");
        if e.downcast_ref::<InputError>().is_some() {
            return ExitCode::from(2);
        }
        report.detail("error", format!("{e:#}"));
        report.passed = false;
    }
    print!("{}", report.render());
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serialises");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
