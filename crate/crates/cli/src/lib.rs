//! Batch command line over `bratteli-core`.
//!
//! [`run`] turns a [`RunConfig`] into the full text of the output, so the
//! same configuration always produces the same bytes; `main` only decides
//! where those bytes go.

mod commands;

use std::path::{Path, PathBuf};

use bratteli_core::measures::DEFAULT_SEED;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "BRATTELI_OUT_DIR";

pub mod exit {
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const UNKNOWN_FAMILY: i32 = 3;
    pub const INVALID_VERTEX: i32 = 4;
    pub const HORIZON: i32 = 5;
    pub const DOMAIN: i32 = 6;
    pub const IO: i32 = 7;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bratteli_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use bratteli_core::Error as E;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::IO,
            CliError::Core(e) => match e {
                E::UnknownFamily(_) => exit::UNKNOWN_FAMILY,
                E::UnknownVertex(_)
                | E::UnknownLabel(_)
                | E::AmbiguousLabel { .. }
                | E::InvalidPath { .. }
                | E::InvalidWalk { .. }
                | E::InvalidPartition(_)
                | E::DiagonalVertex(_) => exit::INVALID_VERTEX,
                E::Horizon { .. } => exit::HORIZON,
                _ => exit::DOMAIN,
            },
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build a graph, validate it and export it
    Graph {
        /// First level included in DOT output
        #[arg(long, default_value_t = 0)]
        from_level: usize,
    },
    /// Build and export the pascalized graph
    Pascalize {
        #[arg(long, default_value_t = 0)]
        from_level: usize,
    },
    /// Path counts from the root, or from --source
    Dims {
        /// Start vertex (JSON label); prints dim(source; w) instead
        #[arg(long)]
        source: Option<String>,
    },
    /// The table M(n, l) through --max-level
    Mtable,
    /// Vanishing criterion: ratios m_j = M(2j,0)/M(2j+2,0) for j <= --horizon
    Ratios,
    /// Check dim(n, λ) = M(n, |λ|) dim λ on the pascalized graph
    Multiplicativity,
    /// Sum of squared dimensions on each level of the pascalized graph
    AlgebraDims,
    /// Finite-horizon ergodic values along a sampled or supplied path
    Estimate {
        /// JSON array of labels, one per level starting at the root
        #[arg(long)]
        path: Option<String>,
    },
    /// Upper bounds on an off-diagonal cylinder of the pascalized graph
    Decay {
        /// Also report ergodic values along a path sampled with --seed
        #[arg(long)]
        sample: bool,
    },
    /// Harmonicity of the Plancherel-type fixture dim(v)/Σdim²
    Harmonic,
    /// Infinitesimal vertices and the K0 quotient check
    K0,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Graph { .. } => "graph",
            Command::Pascalize { .. } => "pascalize",
            Command::Dims { .. } => "dims",
            Command::Mtable => "mtable",
            Command::Ratios => "ratios",
            Command::Multiplicativity => "multiplicativity",
            Command::AlgebraDims => "algebra-dims",
            Command::Estimate { .. } => "estimate",
            Command::Decay { .. } => "decay",
            Command::Harmonic => "harmonic",
            Command::K0 => "k0",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Graph { .. } | Command::Pascalize { .. } => Format::Json,
            _ => Format::Tsv,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct RunArgs {
    /// chain, young, walled_young or doubled_young
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Graph in the JSON graph format, used instead of --family
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Highest level built [default: 8, or the top of --input]
    #[arg(long, global = true)]
    pub max_level: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Level reached by estimate/decay; index of the last ratio for
    /// ratios/harmonic/k0
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Target vertex as a JSON label, e.g. '[2,[]]' on a pascalized graph
    #[arg(long, global = true)]
    pub target: Option<String>,
    /// Output file; relative paths are resolved against $BRATTELI_OUT_DIR
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Work on the pascalized graph (graph, dims, estimate, harmonic)
    #[arg(long, global = true)]
    pub pascalized: bool,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "bratteli", version, about = "Graded graphs, pascalization and central measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub args: RunArgs,
}

pub const DEFAULT_MAX_LEVEL: usize = 8;
pub const DEFAULT_RATIO_HORIZON: usize = 50;

/// Everything that determines the output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub args: RunArgs,
}

impl RunConfig {
    pub fn format(&self) -> Format {
        self.args.format.unwrap_or_else(|| self.command.default_format())
    }

    /// File name used when only the output directory is known.
    pub fn default_file_name(&self) -> String {
        let source = match (&self.args.family, &self.args.input) {
            (Some(f), _) => f.clone(),
            (None, Some(p)) => p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            (None, None) => "graph".into(),
        };
        format!("{}_{}.{}", self.command.name(), source, self.format().extension())
    }

    /// Where the output goes, given the value of the output-directory variable.
    pub fn destination(&self, out_dir: Option<&Path>) -> Option<PathBuf> {
        match (&self.args.output, out_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(self.default_file_name())),
            (None, None) => None,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig { command: cli.command, args: cli.args }
    }
}

/// Text of a finished run; `passed` is false when a check found a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}
