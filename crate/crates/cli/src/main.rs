//! `ramsey-games`: densities, products, colourings, forcing and game simulation
//! from the command line.
//!
//! Exit codes: 0 success, 2 parse or domain error, 3 budget exhausted,
//! 64 usage error.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

const EXIT_DOMAIN: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "ramsey-games", version, about = "Graph densities, rooted products and two-round Ramsey games")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, serde::Serialize)]
pub struct GlobalArgs {
    /// Master seed; overrides the seed in a config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output path; `-` or absent writes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads for sweeps and multi-trial simulations.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    M,
    M1,
    M2,
    D,
    D1,
    D2,
}

#[derive(Debug, Clone, Copy, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Balanced,
    StrictlyBalanced,
    #[value(name = "1-balanced")]
    #[serde(rename = "1-balanced")]
    OneBalanced,
    #[value(name = "strictly-1-balanced")]
    #[serde(rename = "strictly-1-balanced")]
    StrictlyOneBalanced,
    #[value(name = "2-balanced")]
    #[serde(rename = "2-balanced")]
    TwoBalanced,
    #[value(name = "strictly-2-balanced")]
    #[serde(rename = "strictly-2-balanced")]
    StrictlyTwoBalanced,
    M2DecreasingEdge,
}

#[derive(Debug, Subcommand, serde::Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Exact density of a graph or its maximum over subgraphs.
    Density {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Vertex cap for the subset scan.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Balancedness predicates and m2-decreasing edges.
    Check {
        graph: PathBuf,
        #[arg(long, value_enum)]
        predicate: Predicate,
    },
    /// k-fold edge-rooted product of G with (H, root).
    Product {
        g: PathBuf,
        h: PathBuf,
        /// Root edge of H as `u,v`.
        #[arg(long, value_parser = parse_pair)]
        root: (usize, usize),
        #[arg(long)]
        k: usize,
        /// Delete the central edges.
        #[arg(long)]
        reduced: bool,
    },
    /// Search for a colouring of G with no monochromatic H.
    ColourSearch {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, default_value_t = 2)]
        colours: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Check a forcing structure (red graph, blue graph, matching) for H.
    CheckForcing {
        h: PathBuf,
        red: PathBuf,
        blue: PathBuf,
        /// Graph file whose edges form the matching.
        matching: PathBuf,
    },
    /// Colour bases, forced pairs and forced copies of a colouring.
    Forced {
        g: PathBuf,
        colouring: PathBuf,
        h: PathBuf,
        #[arg(long, default_value_t = 2)]
        palette: usize,
        /// Fix the root edge of H as `u,v` instead of trying every edge.
        #[arg(long, value_parser = parse_pair)]
        root: Option<(usize, usize)>,
        /// Include witness copies.
        #[arg(long)]
        witnesses: bool,
    },
    /// Play the two-round game.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Monte Carlo sweep over a grid; writes CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the trial count in the grid file.
        #[arg(long)]
        trials: Option<usize>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `u,v`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                CliError::Budget(_) => EXIT_BUDGET,
                _ => EXIT_DOMAIN,
            })
        }
    }
}
