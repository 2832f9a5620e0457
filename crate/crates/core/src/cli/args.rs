use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "graphonlab",
    version,
    about = "Step graphons, cut metrics, hereditary graph classes and entropy experiments",
    args_override_self = true,
    after_help = "Graphon literals: constant:p, graph:<graph6>, turan:r, wrs:r,s, string:a, @file.json\n\
                  Class names: all, bipartite, split, triangle_free, kt_free:t, crs:r,s, forbidden:<g6,...>, forbidden:@file.g6\n\
                  Exit codes: 0 success, 1 other failure, 2 invalid input, 3 capacity exceeded"
)]
pub struct Cli {
    /// TOML file supplying the subcommand and flag defaults; flags on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads (falls back to GRAPHONLAB_THREADS, then available parallelism).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graphon entropy, or the binary entropy of a number.
    #[command(after_help = "Examples:\n  graphonlab entropy --graphon wrs:2,0\n  graphonlab entropy --x 0.25\n  graphonlab entropy --x 0.75 --clipped")]
    Entropy(EntropyArgs),
    /// Edge density or induced/homomorphism density of a pattern.
    #[command(after_help = "Examples:\n  graphonlab density --graphon string:1/8\n  graphonlab density --graphon turan:3 --pattern Bw\n  graphonlab density --host Dhc --pattern A_ --hom")]
    Density(DensityArgs),
    /// Cut norm of a kernel.
    #[command(after_help = "Examples:\n  graphonlab cutnorm --kernel turan:2\n  graphonlab cutnorm --u turan:2 --v constant:0.5\n  graphonlab cutnorm --u wrs:3,1 --v constant:0.5 --heuristic --seed 7")]
    Cutnorm(CutnormArgs),
    /// Labelled or rearranged cut distance.
    #[command(after_help = "Examples:\n  graphonlab cutdist --u turan:2 --v constant:0.5\n  graphonlab cutdist --u turan:2 --v turan:3 --cells 6 --seed 1\n  graphonlab cutdist --graph Dhc --graphon wrs:2,0 --seed 1")]
    Cutdist(CutdistArgs),
    /// Step a graphon on a partition of its blocks, or onto k equal parts.
    #[command(after_help = "Examples:\n  graphonlab step --graphon string:1/8 --groups 0,0,1,1,1\n  graphonlab step --graphon turan:3 --k 2")]
    Step(StepArgs),
    /// W-random graphs, or uniform members of a hereditary class.
    #[command(after_help = "Examples:\n  graphonlab sample --graphon constant:0.5 --n 10 --seed 3\n  graphonlab sample --graphon wrs:3,1 --n 8 --count 3 --seed 3\n  graphonlab sample --class triangle_free --n 8 --seed 5\n  graphonlab sample --class split --n 12 --steps 2000 --seed 5")]
    Sample(SampleArgs),
    /// Exact labelled and unlabelled counts of a class.
    #[command(after_help = "Examples:\n  graphonlab census --class kt_free:3 --n 3\n  graphonlab census --class split --n-max 6")]
    Census(CensusArgs),
    /// Growth exponents log2|Q^L_n| / C(n,2) against the predicted limit.
    #[command(after_help = "Examples:\n  graphonlab growth --class triangle_free --n-max 6\n  graphonlab growth --class bipartite --n-max 5 --format json")]
    Growth(GrowthArgs),
    /// Colouring number estimate and the predicted growth exponent.
    #[command(after_help = "Examples:\n  graphonlab colouring --class split\n  graphonlab colouring --class crs:3,2 --t-max 4 --n-check 6")]
    Colouring(ColouringArgs),
    /// Distances from uniform class members to a maximizing graphon.
    #[command(after_help = "Examples:\n  graphonlab converge --class triangle_free --maximizer wrs:2,0 --ns 4,6 --samples 20 --seed 1")]
    Converge(ConvergeArgs),
    /// Exact entropy of G(n, W) against C(n,2) Ent(W).
    #[command(name = "entropy-rate", after_help = "Examples:\n  graphonlab entropy-rate --graphon wrs:2,0 --n-max 6")]
    EntropyRate(EntropyRateArgs),
    /// Sizes of cut-distance balls around a graphon.
    #[command(after_help = "Examples:\n  graphonlab balls --graphon wrs:2,0 --n 4 --deltas 0.05,0.1,0.2")]
    Balls(BallsArgs),
    /// Weak regularity partitions of a corpus of subjects.
    #[command(after_help = "Examples:\n  graphonlab regularity --subject turan:3 --subject string:1/16 --ks 2,4\n  graphonlab regularity --subject random:16,1,constant:0.5 --ks 2 --seed 9")]
    Regularity(RegularityArgs),
    /// Graphon documents.
    #[command(subcommand)]
    Graphon(GraphonCommand),
    /// Decode, canonicalize or encode graph6 strings.
    #[command(after_help = "Examples:\n  graphonlab graph6 Dhc\n  graphonlab graph6 Dhc --canonical\n  graphonlab graph6 --n 4 --edges 0-1,1-2,2-3")]
    Graph6(Graph6Args),
}

#[derive(Debug, Subcommand)]
pub enum GraphonCommand {
    /// Build a graphon from a literal and print its JSON document.
    #[command(after_help = "Examples:\n  graphonlab graphon make turan:3\n  graphonlab graphon make string:1/16")]
    Make(MakeArgs),
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long, value_name = "LITERAL")]
    pub graphon: Option<String>,
    /// A number in [0, 1] (any x >= 0 with --clipped).
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Use h(min(x, 1/2)).
    #[arg(long)]
    pub clipped: bool,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, value_name = "LITERAL")]
    pub graphon: Option<String>,
    /// Host graph (graph6).
    #[arg(long, value_name = "G6")]
    pub host: Option<String>,
    /// Pattern graph (graph6).
    #[arg(long, value_name = "G6")]
    pub pattern: Option<String>,
    /// Homomorphism rather than induced density (graph hosts only).
    #[arg(long)]
    pub hom: bool,
}

#[derive(Debug, Args)]
pub struct CutnormArgs {
    /// Kernel: a graphon literal or @file.json with values in [-1, 1].
    #[arg(long, value_name = "LITERAL")]
    pub kernel: Option<String>,
    #[arg(long, value_name = "LITERAL")]
    pub u: Option<String>,
    #[arg(long, value_name = "LITERAL")]
    pub v: Option<String>,
    /// Alternating local search instead of the exact scan.
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CutdistArgs {
    #[arg(long, value_name = "LITERAL")]
    pub u: Option<String>,
    #[arg(long, value_name = "LITERAL")]
    pub v: Option<String>,
    /// Bound the cut distance by rearranging this many equal cells of v.
    #[arg(long, value_name = "M")]
    pub cells: Option<usize>,
    /// Graph (graph6) compared against --graphon over vertex layouts.
    #[arg(long, value_name = "G6")]
    pub graph: Option<String>,
    #[arg(long, value_name = "LITERAL")]
    pub graphon: Option<String>,
    #[arg(long, default_value_t = 4000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, default_value_t = 50_000)]
    pub max_assignments: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct StepArgs {
    #[arg(long, value_name = "LITERAL")]
    pub graphon: String,
    /// Group index of every block.
    #[arg(long, value_delimiter = ',')]
    pub groups: Vec<usize>,
    /// Average onto k equal parts.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_name = "LITERAL")]
    pub graphon: Option<String>,
    /// Sample uniformly from a class instead (exact for n <= 8).
    #[arg(long, value_name = "CLASS")]
    pub class: Option<String>,
    #[arg(long)]
    pub n: usize,
    /// Number of graphs; graph i > 0 uses a seed derived from --seed and i.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Metropolis steps for class sampling (forces the chain).
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, value_name = "CLASS")]
    pub class: String,
    #[arg(long)]
    pub n: Option<usize>,
    /// All rows 1..=N as CSV.
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report format for stdout or --output: csv, json or svg.
    #[arg(long, value_name = "FORMAT")]
    pub format: Option<String>,
    /// Write the full-precision report to this file.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Record elapsed wall-clock time in the report.
    #[arg(long)]
    pub wall_clock: bool,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[arg(long, value_name = "CLASS")]
    pub class: String,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct ColouringArgs {
    #[arg(long, value_name = "CLASS")]
    pub class: String,
    #[arg(long, default_value_t = 5)]
    pub t_max: usize,
    #[arg(long, default_value_t = 6)]
    pub n_check: usize,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_name = "CLASS")]
    pub class: String,
    #[arg(long, value_name = "LITERAL")]
    pub maximizer: String,
    #[arg(long, value_delimiter = ',', default_values_t = [4, 6, 8])]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct EntropyRateArgs {
    #[arg(long, value_name = "LITERAL")]
    pub graphon: String,
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct BallsArgs {
    #[arg(long, value_name = "LITERAL")]
    pub graphon: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub deltas: Vec<f64>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct RegularityArgs {
    /// Subject graphon literal or random:n,seed,<literal>; repeatable.
    /// Defaults to the standard 20-subject corpus.
    #[arg(long, value_name = "SUBJECT")]
    pub subject: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8])]
    pub ks: Vec<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct MakeArgs {
    /// Graphon literal.
    pub literal: String,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Graph6Args {
    /// graph6 code to decode.
    pub code: Option<String>,
    /// Print only the canonical form.
    #[arg(long)]
    pub canonical: bool,
    /// Vertex count when encoding.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edges `u-v` when encoding.
    #[arg(long, value_delimiter = ',')]
    pub edges: Vec<String>,
}
