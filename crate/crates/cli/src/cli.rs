//! Command-line surface. Machine-readable output goes to stdout (JSON
//! reports) or to the `--output` file (CSV tables); human summaries go to
//! stderr. Exit status: 0 on pass, 1 when any verification reports FAIL,
//! 2 on usage errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "vilenkin",
    version,
    about = "Character transforms, kernels, and maximal-operator experiments on bounded Vilenkin groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward (or inverse) character transform of a function table.
    Transform(TransformArgs),
    /// Materialize a Dirichlet or Fejér kernel as a function table.
    Kernel(KernelArgs),
    /// Run a statement verifier and emit its JSON reports.
    Verify(VerifyArgs),
    /// Truncated weighted maximal field of a function table.
    Maximal(MaximalArgs),
    /// Seeded random-atom sweep with maximal-field integrals.
    AtomTest(AtomTestArgs),
    /// Divergence experiment across counterexample indices.
    Divergence(DivergenceArgs),
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Radix sequence: comma-separated integers; `r^k` repeats r k times.
    #[arg(long)]
    pub m: String,
    /// Resolution (number of retained coordinates).
    #[arg(long = "N")]
    pub resolution: usize,
    /// Input CSV: `point_encoding,re,im` (or `index,re,im` with --inverse).
    #[arg(long)]
    pub input: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    pub output: PathBuf,
    /// Read a spectrum and synthesize the function instead.
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelKind {
    Dirichlet,
    Fejer,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub m: String,
    #[arg(long = "N")]
    pub resolution: usize,
    #[arg(long, value_enum)]
    pub kind: KernelKind,
    /// Kernel order.
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of: eq3 | eq4 | eq5 | lemma2 | lemma3 | lemma4 | shift | partition.
    pub statement: String,
    #[arg(long)]
    pub m: String,
    /// Resolution; statement-specific default where omitted.
    #[arg(long = "N")]
    pub resolution: Option<usize>,
    /// Kernel order (eq5 single order; lemma4 order, default M_N).
    #[arg(long)]
    pub n: Option<u64>,
    /// Scan bound for eq4 (default M_N).
    #[arg(long = "n-max")]
    pub n_max: Option<u64>,
    /// Block index A for lemma2.
    #[arg(long = "A")]
    pub a: Option<usize>,
    /// Coordinate k for lemma4 (default: full grid).
    #[arg(long)]
    pub k: Option<usize>,
    /// Coordinate l for lemma4 (default: full grid).
    #[arg(long)]
    pub l: Option<usize>,
    /// Shift scale t for the shift identity (default: all admissible).
    #[arg(long)]
    pub t: Option<usize>,
    /// Embedding resolution for lemma4 (default N+2).
    #[arg(long)]
    pub embed: Option<usize>,
    /// Sample count for eq5 without --n (default 50).
    #[arg(long)]
    pub samples: Option<u32>,
    /// RNG seed for eq5 sampling (default 2024).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the JSON reports to this path.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MaximalArgs {
    #[arg(long)]
    pub m: String,
    #[arg(long = "N")]
    pub resolution: usize,
    /// Weight: one | log2sq | logpow:GAMMA.
    #[arg(long, default_value = "log2sq")]
    pub weight: String,
    /// Truncation bound (default M_N; must be at least M_N).
    #[arg(long = "n-max")]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct AtomTestArgs {
    #[arg(long)]
    pub m: String,
    /// Support depth of the sampled atoms.
    #[arg(long = "N")]
    pub resolution: usize,
    /// Embedding resolution (default N+2).
    #[arg(long)]
    pub embed: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub samples: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Weight dividing the maximal sup (default log2sq).
    #[arg(long, default_value = "log2sq")]
    pub weight: String,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    /// Radix sequence; must cover resolution 2*b+1 for the range end b.
    #[arg(long)]
    pub m: String,
    /// Inclusive counterexample index range, e.g. "1..5".
    #[arg(long = "nk-range")]
    pub nk_range: String,
    /// Weight: one | log2sq | logpow:GAMMA.
    #[arg(long, default_value = "one")]
    pub weight: String,
    #[arg(long)]
    pub output: PathBuf,
}
