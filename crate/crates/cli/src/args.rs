use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lagquot",
    version,
    about = "Gromov-Witten invariants of LG(n), Lagrangian Quot scheme intersection numbers \
             and maximal Lagrangian subbundle counts"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Number backend; `both` runs exact and float and checks they agree.
    #[arg(long, global = true, value_enum, default_value_t = BackendChoice::Exact)]
    pub backend: BackendChoice,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Exact,
    Float,
    Both,
}

impl BackendChoice {
    pub fn name(self) -> &'static str {
        match self {
            BackendChoice::Exact => "exact",
            BackendChoice::Float => "float",
            BackendChoice::Both => "both",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus-g Gromov-Witten invariant <sigma_lambda^1, ...>_{g,d}.
    Gw(GwArgs),
    /// Number of maximal Lagrangian subbundles N(g, n, l, e).
    Count(CountArgs),
    /// Intersection number on a Lagrangian Quot scheme.
    Intersect(IntersectArgs),
    /// Maximal-subbundle counts over a range of genera.
    Table(TableArgs),
    /// Run the seeded verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GwArgs {
    /// Rank n of LG(n).
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub genus: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub degree: i64,
    /// Insertions, e.g. "2,1;2;1"; empty for none.
    #[arg(long, default_value = "")]
    pub partitions: String,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub genus: u32,
    /// Degree l of the line bundle L; the symplectic bundle has degree nl.
    #[arg(long, allow_negative_numbers = true)]
    pub ell: i64,
}

#[derive(Debug, Args)]
pub struct IntersectArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub genus: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: i64,
    /// Degree of the Lagrangian subsheaves.
    #[arg(long, allow_negative_numbers = true)]
    pub e: i64,
    /// Polynomial such as "a1^2 + 3*Q[2,1]".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: u32,
    /// Inclusive range such as 2..5.
    #[arg(long)]
    pub genus_range: String,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: i64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = ["identities", "oracle", "backends", "all"], default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub max_n: u32,
    #[arg(long, default_value_t = 4)]
    pub max_genus: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random cases per sub-suite.
    #[arg(long, default_value_t = 50)]
    pub cases: usize,
}
