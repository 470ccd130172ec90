use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "tortuo",
    version,
    about = "Entropy-based tortuosity of sampled curves",
    args_override_self = true
)]
pub struct Cli {
    /// key = value file supplying defaults for flags not given on the
    /// command line. Top-level keys apply to every subcommand; keys under
    /// a `[simulate]`, `[extract]`, ... table apply to that one only.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noise sweep of a sine standard against Gaussian-noise targets.
    Simulate(SimulateArgs),
    /// Extract the boundary curve of a segmentation mask.
    Extract(ExtractArgs),
    /// Score a target curve against a standard.
    Score(ScoreArgs),
    /// Compare two groups of scores (U test, ROC).
    Compare(CompareArgs),
    /// Write synthetic uniform or uneven masks.
    Synth(SynthArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Simulate(_) => "simulate",
            Self::Extract(_) => "extract",
            Self::Score(_) => "score",
            Self::Compare(_) => "compare",
            Self::Synth(_) => "synth",
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 5000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated, strictly increasing noise SDs.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
    )]
    pub levels: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 1.0)]
    pub periods: f64,
    /// Band cutoff as a fraction of the Nyquist index.
    #[arg(long, default_value_t = 0.05)]
    pub cutoff: f64,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Binary PGM (P5) or PNG mask.
    #[arg(long, value_name = "FILE")]
    pub mask: PathBuf,
    /// Gaussian kernel radius in pixels.
    #[arg(long, default_value_t = 51)]
    pub blur_k: usize,
    /// Gaussian SD; 0 derives it from the radius.
    #[arg(long, default_value_t = 0.0)]
    pub blur_sigma: f64,
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    #[arg(long, default_value_t = 0.1)]
    pub snake_alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub snake_beta: f64,
    #[arg(long, default_value_t = 0.1)]
    pub snake_mu: f64,
    #[arg(long, default_value_t = 500)]
    pub snake_iters: usize,
    /// Trace the lower edge of the region instead of the upper one.
    #[arg(long)]
    pub lower: bool,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long, value_name = "CSV")]
    pub target: PathBuf,
    #[arg(long, value_name = "CSV")]
    pub standard: Option<PathBuf>,
    /// file, lowpass or poly:<deg>. Defaults to file when --standard is
    /// given and lowpass otherwise.
    #[arg(long = "ref", value_name = "STRATEGY")]
    pub reference: Option<String>,
    /// Cutoff of the lowpass reference.
    #[arg(long, default_value_t = 0.05)]
    pub ref_cutoff: f64,
    /// full, low or high.
    #[arg(long, default_value = "full")]
    pub band: String,
    /// Band cutoff as a fraction of the Nyquist index.
    #[arg(long, default_value_t = 0.05)]
    pub cutoff: f64,
    /// Also write the JSON to this file.
    #[arg(long, value_name = "JSON")]
    pub out: Option<PathBuf>,
    /// Append `label,ieb` to this group CSV (created with a header if
    /// missing), ready for `compare`.
    #[arg(long, value_name = "CSV", requires = "label")]
    pub append_group: Option<PathBuf>,
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Negative group, `label,score` CSV.
    #[arg(long, value_name = "CSV")]
    pub neg: PathBuf,
    /// Positive group, `label,score` CSV.
    #[arg(long, value_name = "CSV")]
    pub pos: PathBuf,
    #[arg(long, default_value_t = 2000)]
    pub bootstrap: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// uniform or uneven.
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 30)]
    pub count: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 256)]
    pub width: usize,
    #[arg(long, default_value_t = 256)]
    pub height: usize,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}
