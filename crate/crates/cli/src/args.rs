use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gapcorr", version, about = "Pair correlation and gap statistics of explicit sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A point set either read from a points CSV or generated from a descriptor.
#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct Source {
    /// Points CSV to read.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Generator descriptor, e.g. `kronecker:golden`, `vdc:2`, `ls:1,1`.
    #[arg(long, value_name = "DESCRIPTOR")]
    pub seq: Option<String>,
}

#[derive(Debug, Args)]
pub struct Generation {
    /// Number of points to generate (with `--seq`).
    #[arg(long)]
    pub n: Option<usize>,
    /// Fixed-point precision in bits.
    #[arg(long)]
    pub bits: Option<u32>,
    /// Seed for `--seq random`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set and write it as a points CSV.
    Gen {
        #[arg(long, value_name = "DESCRIPTOR")]
        seq: String,
        #[command(flatten)]
        gen: Generation,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Pair correlation F_N(s) at one s or over a grid.
    Pc {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        gen: Generation,
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        s: Option<String>,
        /// `start:stop:step`, inclusive of `stop` within `step/2`.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Gap profile of a point set, or distinct gap counts over prefixes.
    Gaps {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        gen: Generation,
        /// Clustering tolerance (`p/q` or decimal); defaults to 2^-(bits-16).
        #[arg(long)]
        tolerance: Option<String>,
        /// Comma-separated prefix sizes; switches to scan output.
        #[arg(long, value_name = "N,N,...")]
        n_list: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Additive energy of integer families.
    Energy {
        /// `range`, `powers:<b>` or `random`.
        #[arg(long, default_value = "range")]
        family: String,
        #[arg(long, value_name = "N,N,...")]
        n_list: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Build or verify de Bruijn words.
    Debruijn {
        /// Alphabet size.
        #[arg(long, required_unless_present = "input")]
        k: Option<u32>,
        /// Order of a finite word; with `--in`, the order whose prefix is checked.
        #[arg(long, conflicts_with = "max_order")]
        m: Option<u32>,
        /// Prefix of the infinite word up to this order.
        #[arg(long)]
        max_order: Option<u32>,
        /// Word file to verify instead of building one.
        #[arg(long = "in", value_name = "PATH", conflicts_with_all = ["k", "max_order"])]
        input: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Points of {2^n alpha_{2,3}} for n < 2^w, or the z recursion.
    Stoneham {
        #[arg(long)]
        w: u32,
        /// Precision of alpha in bits.
        #[arg(long)]
        bits: Option<u32>,
        /// Export `z_n` for n < 2^w instead of the points.
        #[arg(long)]
        z: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a named experiment and emit its JSON summary and CSV tables.
    Report {
        #[arg(long)]
        experiment: String,
        #[command(flatten)]
        overrides: Overrides,
        /// Directory for `summary.json` and the CSV tables.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run experiments with default settings and print one pass/fail line each.
    Verify {
        /// Experiment to run; repeatable. Defaults to all.
        #[arg(long)]
        experiment: Vec<String>,
    },
}

#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long)]
    pub w: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, value_name = "N,N,...")]
    pub n_list: Option<String>,
}
