//! `ppr`: command-line front end for single-target PPR queries, baselines,
//! applications and the evaluation harness.
//!
//! Exit codes: 0 on success, 1 on runtime failure (unreadable graph,
//! unknown node, I/O), 2 on usage errors.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{
    GenGraphArgs, HeavyHittersArgs, HopIndexArgs, MatrixArgs, SsQueryArgs, StQueryArgs, TradeoffArgs, VerifyArgs,
};

#[derive(Parser)]
#[command(name = "ppr", version, about = "Single-target Personalized PageRank toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate π(s, t) for every source s of one target t.
    StQuery(StQueryArgs),
    /// Estimate π(s, t) for every target t of one source s.
    SsQuery(SsQueryArgs),
    /// Sources for which t is heavy: π(s, t) ≥ φ·nπ(t).
    HeavyHitters(HeavyHittersArgs),
    /// Approximate all-pairs PPR matrix as source-indexed lists.
    PprMatrix(MatrixArgs),
    /// Per-target ℓ-hop PPR tables for a set of targets.
    HopIndex(HopIndexArgs),
    /// Error/cost sweep over sampled targets.
    Tradeoff(TradeoffArgs),
    /// Statistical check of the RBS estimator against the exact hop oracle.
    Verify(VerifyArgs),
    /// Write a synthetic graph as an edge list or binary cache.
    GenGraph(GenGraphArgs),
}

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(ppr_core::Error),
}

impl From<ppr_core::Error> for CliError {
    fn from(e: ppr_core::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::StQuery(a) => commands::st_query(a),
        Command::SsQuery(a) => commands::ss_query(a),
        Command::HeavyHitters(a) => commands::heavy_hitters(a),
        Command::PprMatrix(a) => commands::ppr_matrix(a),
        Command::HopIndex(a) => commands::hop_index(a),
        Command::Tradeoff(a) => commands::tradeoff(a),
        Command::Verify(a) => commands::verify(a),
        Command::GenGraph(a) => commands::gen_graph(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
