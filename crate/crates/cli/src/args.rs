use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

/// Fixed seed for sampled checks when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "cover-growth", version, about = "Betti-number growth in cyclic covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Include the Λ-coefficient boundary matrices.
    #[arg(long, global = true)]
    pub dump_matrices: bool,

    /// Abort Smith normal form when an entry's degree span exceeds this.
    #[arg(long, global = true, value_name = "INT")]
    pub max_degree: Option<usize>,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Abelianization, Alexander module, (t-1)-torsion and growth type.
    Analyze(Input),
    /// Formula (and optionally oracle) values of β₁ for n = 1..=max-n.
    Growth {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        /// Compare every row with the Reidemeister–Schreier cover.
        #[arg(long)]
        verify: bool,
    },
    /// Linear or bounded growth, with cyclotomic witnesses.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Spot-check the formula against explicit covers at sampled n.
        #[arg(long)]
        verify: bool,
    },
    /// Writes the presentation of a finite abelian cover.
    Cover(CoverArgs),
    /// Growth test for a bare Alexander polynomial.
    Knot {
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Presentation file, or `@name` for a bundled example.
    pub input: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("quotient").required(true).args(["cyclic", "abelian"])))]
pub struct CoverArgs {
    #[command(flatten)]
    pub input: Input,
    /// Cyclic cover of degree N through the map.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub cyclic: Option<u64>,
    /// Finite abelian quotient, e.g. `mod 2,2; x=(1,0) y=(0,1)`.
    #[arg(long, value_name = "SPEC")]
    pub abelian: Option<String>,
    /// Write the cover presentation here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
