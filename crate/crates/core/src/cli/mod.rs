mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wavegen::BoundaryMode;

pub use commands::run;

/// Process exit codes. Stable across releases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    Io = 3,
    NotConverged = 4,
}

/// A failure carrying its exit status and a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub status: ExitStatus,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Usage,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Io,
            message: message.into(),
        }
    }
}

impl From<wavegen::Error> for Failure {
    fn from(e: wavegen::Error) -> Self {
        use wavegen::Error::*;
        let status = match e {
            InvalidConfig(_) | PinOutOfRange { .. } => ExitStatus::Usage,
            _ => ExitStatus::Io,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "wavegen", version, about = "Design, verify and apply orthogonal decomposition/reconstruction filter banks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the constraint system for a new 2n-tap bank
    Solve(SolveArgs),
    /// Print the constraint residuals of a bank file
    Verify(VerifyArgs),
    /// Split an image or signal into subbands
    Decompose(DecomposeArgs),
    /// Rebuild an image or signal from a DRC1 container
    Reconstruct(ReconstructArgs),
    /// List or export the built-in reference filters
    Catalog(CatalogArgs),
    /// Convert a convergence trace to log10 columns for plotting
    TraceReplot(TraceReplotArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Half filter length; the bank has 2n taps
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stop once the summed absolute residual is below this
    #[arg(long, default_value_t = wavegen::solver::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = wavegen::solver::DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: usize,
    /// Pin tap POS (1-based) to VALUE; repeatable
    #[arg(long = "fix", value_name = "POS=VALUE", value_parser = parse_pin)]
    pub fix: Vec<(usize, f64)>,
    /// Bank JSON output path
    #[arg(long)]
    pub out: PathBuf,
    /// Per-sweep CSV trace output path
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Name recorded in the bank file
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub bank: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
#[group(id = "bank_source", required = true, multiple = false, args = ["bank", "reference_name"])]
pub struct BankSource {
    /// Bank JSON file
    #[arg(long)]
    pub bank: Option<PathBuf>,
    /// Built-in reference filter name (see `catalog`)
    #[arg(long = "ref", value_name = "NAME")]
    pub reference_name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Periodic,
    Paper,
}

impl From<ModeArg> for BoundaryMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Periodic => BoundaryMode::Periodic,
            ModeArg::Paper => BoundaryMode::PaperExtension,
        }
    }
}

#[derive(Debug, Args)]
#[group(id = "input", required = true, multiple = false, args = ["image", "signal"])]
pub struct DecomposeArgs {
    /// Grayscale PGM input
    pub image: Option<PathBuf>,
    /// 1D signal, one sample per line
    #[arg(long)]
    pub signal: Option<PathBuf>,
    #[command(flatten)]
    pub source: BankSource,
    #[arg(long, value_enum, default_value_t = ModeArg::Periodic)]
    pub mode: ModeArg,
    /// Output prefix P: writes P.drc, P.energy.json and, for images, P.<plane>.pgm
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// DRC1 container
    pub container: PathBuf,
    #[command(flatten)]
    pub source: BankSource,
    /// Original PGM (or CSV signal) to measure the reconstruction error against
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Output PGM (images) or CSV (signals)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Write the named entry as a bank JSON file
    #[arg(long, num_args = 2, value_names = ["NAME", "PATH"])]
    pub export: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct TraceReplotArgs {
    pub trace: PathBuf,
    /// Keep every K-th sweep (the last sweep is always kept)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub every: u64,
    /// Output CSV; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_pin(s: &str) -> Result<(usize, f64), String> {
    let (pos, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected POS=VALUE, got {s:?}"))?;
    let pos: usize = pos
        .trim()
        .parse()
        .map_err(|_| format!("bad position {pos:?}"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("bad value {value:?}"))?;
    if !value.is_finite() {
        return Err(format!("value for position {pos} is not finite"));
    }
    Ok((pos, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pin_parsing() {
        assert_eq!(parse_pin("1=0.0352"), Ok((1, 0.0352)));
        assert_eq!(parse_pin(" 6 = -2e-3"), Ok((6, -2e-3)));
        assert!(parse_pin("3").is_err());
        assert!(parse_pin("x=1").is_err());
        assert!(parse_pin("1=inf").is_err());
    }

    #[test]
    fn exclusive_flags() {
        assert!(Cli::try_parse_from(["wavegen", "decompose", "a.pgm", "--ref", "db3", "--out-prefix", "p"]).is_ok());
        assert!(Cli::try_parse_from(["wavegen", "decompose", "a.pgm", "--signal", "s.csv", "--ref", "db3", "--out-prefix", "p"]).is_err());
        assert!(Cli::try_parse_from(["wavegen", "decompose", "a.pgm", "--bank", "b.json", "--ref", "db3", "--out-prefix", "p"]).is_err());
        assert!(Cli::try_parse_from(["wavegen", "decompose", "a.pgm", "--out-prefix", "p"]).is_err());
        assert!(Cli::try_parse_from(["wavegen", "solve", "--n", "0", "--out", "b.json"]).is_err());
    }
}
