use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "genset",
    version,
    about = "Exact search and verification for disjoint-union generators of a power set",
    after_help = "Exit status: 0 success, 1 property fails, 2 usage or input error, 3 budget or cap exceeded.\n\
Defaults: --dp-n 26, --base-n 18, --graph-m 65536, --blowup-m 64, --work-budget 1e10,\n\
--enumeration-budget 5e7, --node-budget 1e9, --time-budget 600 (seconds)."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalOpts {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for sampled modes (required there).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Omit timing fields so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub no_meta: bool,

    /// Worker thread cap.
    #[arg(long, global = true, env = "GENSET_THREADS")]
    pub threads: Option<usize>,

    /// key=value file with cap and budget defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true)]
    pub dp_n: Option<u32>,
    #[arg(long, global = true)]
    pub base_n: Option<u32>,
    #[arg(long, global = true)]
    pub graph_m: Option<usize>,
    #[arg(long, global = true)]
    pub blowup_m: Option<usize>,
    #[arg(long, global = true, value_parser = parse_count)]
    pub work_budget: Option<u64>,
    #[arg(long, global = true, value_parser = parse_count)]
    pub enumeration_budget: Option<u64>,
    #[arg(long, global = true, value_parser = parse_count)]
    pub node_budget: Option<u64>,
    /// Search wall-clock budget in seconds.
    #[arg(long, global = true)]
    pub time_budget: Option<u64>,
}

/// Accepts plain integers and exact scientific notation such as `1e10`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse() {
        return Ok(v);
    }
    let (mantissa, exp) = s.split_once(['e', 'E']).ok_or_else(|| format!("'{s}' is not a count"))?;
    let mantissa: u64 = mantissa.parse().map_err(|_| format!("'{s}' is not a count"))?;
    let exp: u32 = exp.parse().map_err(|_| format!("'{s}' is not a count"))?;
    10u64
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(mantissa))
        .ok_or_else(|| format!("'{s}' overflows"))
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the balanced-partition k-generator as a family file.
    Construct {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide the k-generator (or k-base) property, or decompose one set.
    Check {
        #[arg(long)]
        family: PathBuf,
        #[arg(short)]
        k: usize,
        /// Allow overlapping unions (k-base check).
        #[arg(long, conflicts_with = "decompose")]
        base: bool,
        /// Decompose this set (e.g. `1,3,4`, or `-` for the empty set).
        #[arg(long, allow_hyphen_values = true)]
        decompose: Option<String>,
    },
    /// Exact minimum k-generator size, for one (n, k) or a sweep.
    SearchMin {
        #[arg(short, required_unless_present = "sweep")]
        n: Option<u32>,
        #[arg(short, required_unless_present = "sweep")]
        k: Option<u32>,
        /// Sweep all k <= k-max, k <= n <= n-max (CSV by default).
        #[arg(long, requires_all = ["n_max", "k_max"])]
        sweep: bool,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Disjointness graph statistics: edges, clique counts, densities.
    Graph {
        #[command(flatten)]
        source: GraphSource,
        /// Count r-cliques.
        #[arg(long)]
        cliques: Option<usize>,
        /// Exact r-clique density.
        #[arg(long)]
        density: Option<usize>,
        /// Print the graph as an edge list instead of statistics.
        #[arg(long)]
        emit_edges: bool,
    },
    /// Turán densities, graphs, closed forms and the labeled-graph oracle.
    Turan {
        #[command(subcommand)]
        op: TuranOp,
    },
    /// Search for a blow-up K_a(t).
    Blowup {
        #[command(flatten)]
        source: GraphSource,
        #[arg(short)]
        a: usize,
        #[arg(short)]
        t: usize,
    },
    /// Counting bounds and their checks.
    Bounds {
        #[command(subcommand)]
        op: BoundsOp,
    },
    /// Exact and sampled experiments.
    Experiment {
        #[command(subcommand)]
        op: ExperimentOp,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Use the disjointness graph of a family file.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Use an edge-list graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum TuranOp {
    /// s(s-1)...(s-r+1)/s^r.
    Eta {
        #[arg(short)]
        r: u32,
        #[arg(short)]
        s: u32,
    },
    /// The complete s-partite graph K_s(T) as an edge list.
    Graph {
        #[arg(short)]
        s: usize,
        #[arg(short = 'T')]
        part_size: usize,
    },
    /// C(s, r) T^r.
    ClosedForm {
        #[arg(short)]
        s: u32,
        #[arg(short = 'T')]
        part_size: u32,
        #[arg(short)]
        r: u32,
    },
    /// Maximum r-cliques over K_{s+1}-free graphs on l vertices vs the Turán graph.
    Erdos {
        #[arg(short)]
        l: usize,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        r: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsOp {
    /// Smallest m with sum_{i<=k} C(m,i) >= 2^n.
    Trivial {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
    },
    /// (k+1) 2^(n(1-δt)) C(m,t)^(k+1) / (k+1)!.
    Lemma4 {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        m: u64,
        /// δ as p/q or a decimal; derived from m when omitted (m a power of two).
        #[arg(long)]
        delta: Option<String>,
        #[arg(short)]
        t: u32,
    },
    /// 2^n (2^(n/(k+1)) / m)^t.
    Analytic {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        m: u64,
        #[arg(short)]
        t: u32,
    },
    /// Small-union probability of a family against the analytic bound.
    UnionCheck {
        #[arg(long)]
        family: PathBuf,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        delta: String,
        #[arg(short)]
        t: u32,
        /// Monte Carlo trials instead of exact enumeration (needs --seed).
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Disjoint ≤k-tuples against 2^n.
    Coverage {
        #[arg(long)]
        family: PathBuf,
        #[arg(short)]
        k: u32,
        /// Skip verifying the generator property.
        #[arg(long)]
        assume: bool,
    },
    /// Comparison table of the lower bounds and the canonical size.
    Table {
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        k_min: u32,
        #[arg(long)]
        k_max: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentOp {
    /// Fraction of l-subsets whose r-clique density reaches the threshold.
    DenseSubset {
        #[command(flatten)]
        source: GraphSource,
        #[arg(short)]
        l: usize,
        #[arg(short)]
        r: usize,
        /// Threshold as p/q or a decimal.
        #[arg(long)]
        threshold: String,
        /// Random subsets instead of exact enumeration (needs --seed).
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Probability that t random members have a union of at most `threshold` elements.
    UnionProb {
        #[arg(long)]
        family: PathBuf,
        #[arg(short)]
        t: u32,
        #[arg(long)]
        threshold: u32,
        /// Monte Carlo trials instead of exact enumeration (needs --seed).
        #[arg(long)]
        trials: Option<u64>,
    },
}
