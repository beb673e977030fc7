use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use yesno_core::simulate::BaselineHashes;

/// Yes-no Bloom filter analysis and experiments.
///
/// Every command is fully determined by its flags; output is CSV with six
/// decimal places unless stated otherwise.
#[derive(Debug, Parser)]
#[command(name = "yesno", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the closed-form false-positive formulas.
    Analyze(AnalyzeArgs),
    /// Monte-Carlo sweep of one parameter.
    Sweep(SweepArgs),
    /// Path-forwarding experiment over network topologies.
    Topology(TopologyArgs),
    /// Build a tiny filter and show every stage.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write CSV here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Total bits of the classic filter and of the yes-no filter.
    #[arg(long, default_value_t = 256)]
    pub m: usize,
    /// Hash count of the classic filter.
    #[arg(long, default_value_t = 6)]
    pub k: usize,
    /// Number of members.
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    /// Number of non-member queries.
    #[arg(long, default_value_t = 100)]
    pub t: usize,
    /// Yes-filter bits [default: m - q r].
    #[arg(long)]
    pub p: Option<usize>,
    /// Bits per no-filter.
    #[arg(long, default_value_t = 32)]
    pub q: usize,
    /// Number of no-filters, used only to derive the default p.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Yes-filter hash count [default: same as --k].
    #[arg(long)]
    pub k_yes: Option<usize>,
    /// No-filter hash count.
    #[arg(long, default_value_t = 5)]
    pub k_prime: usize,
    /// Elements stored in the no-filter [default: n].
    #[arg(long)]
    pub no_load: Option<usize>,
    /// Prior probability that a queried element is a member.
    #[arg(long, default_value_t = 0.0)]
    pub pr_s: f64,
    /// Prior probability that a queried element is a stored false positive.
    #[arg(long, default_value_t = 0.0)]
    pub pr_r: f64,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryMode {
    /// Keep m fixed; p = m - q r.
    #[value(name = "fixed_m", alias = "fixed-m")]
    FixedM,
    /// Keep p fixed; m = p + q r.
    #[value(name = "fixed_p", alias = "fixed-p")]
    FixedP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarArg {
    K,
    #[value(name = "k_prime", alias = "k-prime")]
    KPrime,
    N,
    Q,
    R,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter to sweep.
    #[arg(long, value_enum)]
    pub var: VarArg,
    /// Inclusive range `a:b` [default: k, k-prime 1:14; n 10:90; q 10:59;
    /// r 0:7 at fixed m, 0:9 at fixed p].
    #[arg(long)]
    pub range: Option<String>,
    /// Step between swept values.
    #[arg(long, default_value_t = 1)]
    pub step: usize,
    /// How q and r sweeps keep the geometry consistent.
    #[arg(long, value_enum, default_value_t = GeometryMode::FixedM)]
    pub mode: GeometryMode,
    /// Independent trials per swept value.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Total bits.
    #[arg(long, default_value_t = 256)]
    pub m: usize,
    /// Bits per no-filter.
    #[arg(long, default_value_t = 32)]
    pub q: usize,
    /// Number of no-filters; p = m - q r.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Yes-filter hash count.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// No-filter hash count.
    #[arg(long, default_value_t = 5)]
    pub k_prime: usize,
    /// Members per trial.
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    /// Non-member queries per trial.
    #[arg(long, default_value_t = 100)]
    pub t: usize,
    /// Hash count of the m-bit baseline filter: `yes` for the yes-filter's
    /// k at each point, a fixed integer, or `optimal` for round(m ln2 / n).
    #[arg(long, default_value = "yes", value_parser = parse_baseline)]
    pub k_bf: BaselineHashes,
    #[command(flatten)]
    pub out: OutputArg,
}

fn parse_baseline(s: &str) -> Result<BaselineHashes, String> {
    s.parse().map_err(|e: yesno_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Pick by extension: .graphml/.xml is GraphML, anything else edge list.
    Auto,
    Graphml,
    Edgelist,
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    /// Topology files (GraphML or tab-separated edge lists).
    #[arg(long, num_args = 1.., required_unless_present = "synthetic")]
    pub files: Vec<PathBuf>,
    /// Add the bundled synthetic corpus of grids, rings and random
    /// geometric graphs.
    #[arg(long)]
    pub synthetic: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
    /// Random position allocations per topology.
    #[arg(long, default_value_t = 1000)]
    pub allocations: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Explicit comma-separated node path used instead of the diameter path.
    #[arg(long, value_delimiter = ',')]
    pub path: Option<Vec<String>>,
    /// Leave reverse traversals of path links out of the query set.
    #[arg(long)]
    pub exclude_reverse: bool,
    /// Total bits.
    #[arg(long, default_value_t = 256)]
    pub m: usize,
    /// Bits per no-filter.
    #[arg(long, default_value_t = 32)]
    pub q: usize,
    /// Number of no-filters; p = m - q r.
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Yes-filter hash count.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// No-filter hash count.
    #[arg(long, default_value_t = 3)]
    pub k_prime: usize,
    /// Hash count of the m-bit classic filter.
    #[arg(long, default_value_t = 6)]
    pub k_bf: usize,
    /// Per-length aggregate CSV destination.
    #[arg(long)]
    pub aggregate: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 13)]
    pub seed: u64,
}
