use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ndepth_core::{Error, WeightVector};

mod commands;
mod output;

use output::Output;

/// Exact new depth of multiset posets: search, closed forms, certificates.
#[derive(Parser, Debug)]
#[command(name = "ndepth", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: human-readable text or one JSON record per line.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Maximum number of search nodes per instance.
    #[arg(long, value_name = "N", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    node_limit: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, value_name = "N", env = "NDEPTH_THREADS", global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Report the same witness on every run and omit timing fields.
    #[arg(long, global = true)]
    deterministic_witness: bool,

    /// Count certificates carrying an erratum note as documented, not failed.
    #[arg(long, global = true)]
    allow_errata: bool,

    /// Largest entry of the sorted weight grid used for equivalence checks.
    #[arg(long, value_name = "N", default_value_t = 4, global = true,
          value_parser = clap::value_parser!(u64).range(1..=64))]
    grid_max: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Computes ndepth exactly and prints a witness partition.
    Solve(Input),
    /// Prints the upper bound max(<1..k-1>, <k>).
    Bound(Input),
    /// Evaluates the closed form (k <= 5).
    Formula(Input),
    /// Checks certificate files or the built-in example corpus.
    Certify {
        /// Certificate files (TOML).
        #[arg(required_unless_present = "paper_corpus", conflicts_with = "paper_corpus")]
        paths: Vec<PathBuf>,
        /// Check the built-in example partitions instead of files.
        #[arg(long)]
        paper_corpus: bool,
    },
    /// Derives the max-min formula for k <= 4 by enumerating all partitions.
    Derive {
        k: usize,
    },
    /// Compares exact search against the closed form on a sorted grid.
    Sweep {
        k: usize,
        /// Largest weight entry.
        max_entry: u64,
    },
    /// Runs a fast battery of consistency checks.
    Selftest,
}

/// Exactly one of: explicit weights, or `--chain N K` for the weights (N-1)^K.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Multiplicities n_1 .. n_k.
    #[arg(value_name = "WEIGHT", value_parser = clap::value_parser!(u64).range(1..))]
    weights: Vec<u64>,
    /// Chain power n^k: all k multiplicities equal n - 1.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    chain: Option<Vec<u64>>,
}

impl Input {
    fn resolve(&self) -> anyhow::Result<(WeightVector, Option<(u64, usize)>)> {
        match &self.chain {
            Some(nk) => {
                let (n, k) = (nk[0], nk[1] as usize);
                if n < 2 {
                    return Err(Error::Domain(format!("chain length {n} must be at least 2")).into());
                }
                Ok((WeightVector::uniform(n - 1, k)?, Some((n, k))))
            }
            None => Ok((WeightVector::new(self.weights.clone())?, None)),
        }
    }
}

pub struct Settings {
    pub node_limit: Option<u64>,
    pub parallel: bool,
    pub deterministic: bool,
    pub allow_errata: bool,
    pub grid_max: u64,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .context("building the thread pool")?;
    }
    let settings = Settings {
        node_limit: cli.node_limit.or(Some(ndepth_core::solver::DEFAULT_NODE_LIMIT)),
        parallel: cli.threads != Some(1),
        deterministic: cli.deterministic_witness,
        allow_errata: cli.allow_errata,
        grid_max: cli.grid_max,
    };
    let mut out = Output::new(cli.format);
    match cli.command {
        Command::Solve(input) => {
            let (w, chain) = input.resolve()?;
            commands::solve(&mut out, &settings, &w, chain)
        }
        Command::Bound(input) => commands::bound(&mut out, &input.resolve()?.0),
        Command::Formula(input) => commands::formula(&mut out, &input.resolve()?.0),
        Command::Certify { paths, paper_corpus } => commands::certify(&mut out, &settings, &paths, paper_corpus),
        Command::Derive { k } => commands::derive(&mut out, &settings, k),
        Command::Sweep { k, max_entry } => commands::sweep(&mut out, &settings, k, max_entry),
        Command::Selftest => commands::selftest(&mut out, &settings),
    }
}

/// Resource problems exit with 3, everything else that stops a command with 2.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NodeLimit { .. } | Error::Resource(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
