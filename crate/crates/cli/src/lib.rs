//! Argument parsing, command dispatch and output rendering for `syzygy`.
//!
//! Every command produces a JSON document (`schema: 1`); the text format is
//! rendered from that document.

mod commands;
mod render;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use syzygy_core::{Error as CoreError, FieldSpec};

pub use commands::execute;
pub use render::render_text;

pub const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for bad input (arguments, model or lattice files, preconditions),
    /// 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::Overflow(_) | CoreError::Unsupported(_) | CoreError::IndexOutOfBounds { .. } => 3,
                _ => 2,
            },
        }
    }
}

/// Result of a command: the JSON document and whether its checks passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "syzygy",
    version,
    about = "Koszul cohomology, lattice and Brill-Noether computations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Coefficient field: a prime, or `rational`.
    #[arg(long, global = true, default_value = "32003", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Seed for random equations and sampled points.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Compute every Betti number directly instead of inferring by duality.
    #[arg(long, global = true)]
    pub certify: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

impl Default for GlobalArgs {
    fn default() -> Self {
        Self {
            field: FieldSpec::default(),
            seed: 1,
            format: Format::Json,
            certify: false,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    match s.to_ascii_lowercase().as_str() {
        "rational" | "q" | "0" => Ok(FieldSpec::RATIONAL),
        _ => {
            let p: u32 = s
                .parse()
                .map_err(|_| format!("expected a prime or `rational`, got {s}"))?;
            syzygy_core::PrimeField::new(p).map_err(|e| e.to_string())?;
            Ok(FieldSpec::Prime(p))
        }
    }
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("model_source").required(true).args(["plane", "ci33", "rnc", "model"])))]
pub struct ModelArgs {
    /// Smooth plane curve of degree D.
    #[arg(long, value_name = "D")]
    pub plane: Option<usize>,
    /// Complete intersection of two cubics in P^3.
    #[arg(long)]
    pub ci33: bool,
    /// Rational normal curve of degree N.
    #[arg(long, value_name = "N")]
    pub rnc: Option<usize>,
    /// JSON model file.
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti table, duality and Euler checks, Green verdict.
    Betti {
        #[command(flatten)]
        model: ModelArgs,
        /// Clifford index for the verdict (derived for plane and ci33 models).
        #[arg(long)]
        cliff: Option<usize>,
    },
    /// Exact inequality `dim K_{p+1,1}(L) <= dim K_{p+1,1}(L, W_x) + dim K_{p,1}(L(-x))`
    /// at a seeded point.
    Projection {
        #[command(flatten)]
        model: ModelArgs,
        /// Only this p (default: all).
        #[arg(long)]
        p: Option<usize>,
    },
    /// Clifford searches and certificates on Picard lattices.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Limit pencils on the elliptic chain.
    Chain {
        #[arg(long)]
        g: u32,
        /// Degree (default g).
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 2)]
        torsion: u32,
        /// Component analysis of limit g^1_{g+1} (even g).
        #[arg(long)]
        components: bool,
    },
    /// Castelnuovo-Severi gonality of a cover.
    Cs {
        #[arg(long)]
        cover: u64,
        #[arg(long)]
        base_genus: u64,
        #[arg(long)]
        base_gon: u64,
        #[arg(long)]
        g: u64,
    },
    /// Brill-Noether number, optionally adjusted at points.
    Rho {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        /// Vanishing sequence at a point, e.g. `0,3`; repeatable.
        #[arg(long, value_name = "A0,A1,..")]
        vanishing: Vec<String>,
    },
    /// Inspect curve models.
    #[command(subcommand)]
    Model(ModelCommand),
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Clifford minimum on the Nikulin overlattice.
    Nikulin {
        /// Genus, or an inclusive range `A..B`.
        #[arg(long)]
        g: GenusRange,
        #[arg(long, value_enum, default_value_t = PairingBound::Full)]
        bound: PairingBound,
    },
    /// The double-plane certificate for `φ(D) >= 12`.
    Doubleplane,
    /// Classes of small pairing on `<2g-2> ⊕ N`.
    Lambda {
        #[arg(long)]
        g: usize,
    },
    /// Clifford search on an arbitrary lattice.
    Search {
        /// Gram matrix as JSON, e.g. `[[2,0],[0,-2]]`.
        #[arg(long)]
        gram: String,
        /// The class C as JSON coordinates.
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 0)]
        pairing_min: i64,
        #[arg(long)]
        pairing_max: i64,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        min_square: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Basis listing and multiplication check.
    Export {
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairingBound {
    /// `0 <= C·D <= g - 1`
    Half,
    /// `0 <= C·D <= 2g - 2`
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusRange {
    pub start: usize,
    pub end: usize,
}

impl FromStr for GenusRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad genus {t:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(Self { start, end })
    }
}

/// Parses arguments, runs the command and prints the result; returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let start = std::time::Instant::now();
    match execute(&cli) {
        Ok(out) => {
            match cli.global.format {
                Format::Json => println!("{}", to_json(&out.json)),
                Format::Text => print!("{}", render_text(&out.json)),
            }
            eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Canonical serialization used for output.
pub fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
