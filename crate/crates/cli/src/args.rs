use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "mta",
    version,
    about = "Exact computations with mode transition algebras, higher Zhu algebras and lattice VOA data"
)]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Lift the desk-scale caps on rank, degree and lattice rank.
    #[arg(long, global = true)]
    pub unsafe_no_limits: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Labeled partitions P^n_m.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Heisenberg mode algebra: strong identity and pairing checks.
    #[command(subcommand)]
    Heisenberg(HeisenbergCmd),
    /// Even lattices: discriminant cosets, conformal weights, graded dimensions.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Finite Peirce algebras given as JSON.
    #[command(subcommand)]
    Peirce(PeirceCmd),
    /// Higher Zhu algebra descriptors.
    #[command(subcommand)]
    Zhu(ZhuCmd),
    /// Run the built-in verification suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct RankWeight {
    /// Number of Heisenberg generators n.
    #[arg(long)]
    pub rank: usize,
    /// Weight m.
    #[arg(long)]
    pub weight: u32,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct RankDegree {
    /// Number of Heisenberg generators n.
    #[arg(long)]
    pub rank: usize,
    /// Degree d.
    #[arg(long)]
    pub degree: u32,
}

#[derive(Debug, Subcommand)]
pub enum PartitionsCmd {
    /// p^n_m.
    Count(RankWeight),
    /// All of P^n_m in canonical order.
    List(RankWeight),
}

#[derive(Debug, Subcommand)]
pub enum HeisenbergCmd {
    /// The strong identity 1_d as a list of (σ, 1/‖σ‖).
    Identity(RankDegree),
    /// Compute the pairing matrix over P^n_d and compare with diag(‖σ‖).
    Verify(RankDegree),
    /// Certified block sizes p^n_j for j ≤ d and the resulting descriptor.
    Zhu(RankDegree),
}

#[derive(Debug, Args)]
pub struct GramArg {
    /// Lattice file: first line the rank, then the Gram rows.
    #[arg(long)]
    pub gram: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Representatives of L'/L.
    Cosets(GramArg),
    /// Conformal weight of every coset.
    Weights(GramArg),
    /// Graded dimensions dim V^λ_0 .. dim V^λ_max.
    Dims {
        #[command(flatten)]
        gram: GramArg,
        /// Coset index; all cosets when omitted.
        #[arg(long)]
        coset: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Peirce algebra JSON file, or `-` for stdin.
    #[arg(long)]
    pub algebra: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum PeirceCmd {
    /// Check the Peirce axioms in order.
    Validate(AlgebraArg),
    /// Zig-zag algebra laws, the action check and the idempotent split at degree d.
    Zigzag {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: usize,
    },
    /// Morita round trips at degree d.
    Morita {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: usize,
        /// Left module over the degree-d corner (ModuleRep JSON).
        #[arg(long)]
        module: Option<PathBuf>,
        /// Left module over Z_d (ModuleRep JSON).
        #[arg(long)]
        zd_module: Option<PathBuf>,
    },
    /// Emit a built-in algebra as JSON.
    #[command(subcommand)]
    Fixture(FixtureCmd),
}

#[derive(Debug, Subcommand)]
pub enum FixtureCmd {
    /// Block matrix model, e.g. `--sizes 2,1;1,2`.
    Matrix {
        /// Graded dimension vectors of each block, separated by `;`.
        #[arg(long)]
        sizes: String,
    },
    /// Heisenberg mode algebra truncated at max degree and evaluated at a point.
    Heisenberg {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        max_degree: u32,
        /// Comma-separated rationals, one per generator.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Degree-1 algebra without a strong identity.
    Degenerate,
    /// Q in degree 0 and zero above.
    Scalar {
        #[arg(long)]
        max_degree: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZhuCmd {
    /// Descriptor of a rational VOA from its simple modules (JSON list).
    Rational {
        #[arg(long)]
        modules: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Descriptor of the rank-n Heisenberg VOA.
    Heisenberg(RankDegree),
    /// Degrees j ≤ max with a vanishing graded component.
    Exceptional {
        /// Comma-separated dimensions dim Φ(A)_0, dim Φ(A)_1, ...
        #[arg(long, conflicts_with = "rank", required_unless_present = "rank")]
        dims: Option<String>,
        /// Use the Heisenberg VOA of this rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        max: usize,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random fixtures.
    #[arg(long, default_value_t = 8)]
    pub cases: usize,
}
