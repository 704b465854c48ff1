use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgt_core::FieldDescriptor;

#[derive(Debug, Parser)]
#[command(
    name = "qgt",
    version,
    about = "Triangulation quivers, weighted surface algebras and their periodicity checks"
)]
pub struct Cli {
    /// Ground field: Q or GF:p.
    #[arg(long, global = true)]
    pub field: Option<FieldDescriptor>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest syzygy index computed.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check quiver, surface and presentation files.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Write the presentation of a generated family.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Presentation JSON destination (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the relations as text.
        #[arg(long)]
        dsl: Option<PathBuf>,
    },
    /// Run every generalized quaternion type check.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        /// Report JSON destination.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List every compatible triangulation (at most 16 arrows).
        #[arg(long)]
        all: bool,
        /// Random candidates tried by the symmetric form search.
        #[arg(long, default_value_t = 32)]
        trials: usize,
    },
    /// Minimal projective resolutions of simple modules.
    Resolve {
        #[command(flatten)]
        source: SourceArgs,
        /// Vertex id; every vertex if absent.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Convert between surfaces and triangulation quivers.
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
    /// Graphviz rendering of a quiver, presentation or surface.
    ExportDot {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceAction {
    ToQuiver { path: PathBuf },
    FromQuiver { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Markov,
    Weighted,
    Deformed,
    Tetrahedral,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_possible_value().expect("no skipped variants");
        f.write_str(s.get_name())
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Triangulation quiver for the weighted and deformed families.
    #[arg(long)]
    pub quiver: Option<PathBuf>,
    /// Uniform weight.
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Uniform parameter.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c: String,
    /// Border values, one per border vertex in quiver order, or one for all.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<String>,
    /// Tetrahedral parameter.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    /// Weight file overriding --m and --c.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Presentation JSON.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
}
