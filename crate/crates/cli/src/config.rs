//! Command-line flags, the optional TOML config file, and the resolved
//! experiment configuration. A flag always beats the file.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use kcycle::measures::{Cap, TPrime};
use kcycle::perm::DeckParams;
use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;

const ABOUT: &str = "Random k-cycle shuffles of a deck with l copies of each of m card types.";

const LONG_ABOUT: &str = "\
Random k-cycle shuffles of a deck with l copies of each of m card types (n = m*l).

All logarithms are natural (ln). The window parameter c places the walk at
t = round((n/k)(ln n + c)) steps, or t = round((n/k)(ln n - ln(l)/2 + c)) with
--mode-growing-l.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 size limit exceeded.";

#[derive(Debug, Parser)]
#[command(name = "kcycle", version, about = ABOUT, long_about = LONG_ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo TV between the |F| laws of a source and of a uniform permutation.
    Simulate(Args),
    /// Cutoff profile over a grid of c, or the limiting curves with --theory-only.
    Profile(Args),
    /// Exact TV on the quotient by enumeration of S_n (n <= 8).
    Exact(Args),
    /// Plancherel upper bound on the TV to the uniform parity class or to nu (n <= 40).
    Plancherel(Args),
    /// Characters, character ratios and main terms on k-cycles for every partition of n.
    Characters(Args),
    /// Run the oracle-versus-formula checks and report each one.
    Verify(Args),
}

impl Command {
    pub fn mode(&self) -> Mode {
        match self {
            Command::Simulate(_) => Mode::Simulate,
            Command::Profile(_) => Mode::Profile,
            Command::Exact(_) => Mode::Exact,
            Command::Plancherel(_) => Mode::Plancherel,
            Command::Characters(_) => Mode::Characters,
            Command::Verify(_) => Mode::Verify,
        }
    }

    pub fn args(&self) -> &Args {
        match self {
            Command::Simulate(a)
            | Command::Profile(a)
            | Command::Exact(a)
            | Command::Plancherel(a)
            | Command::Characters(a)
            | Command::Verify(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Simulate,
    Profile,
    Exact,
    Plancherel,
    Characters,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CapArg {
    /// M <= n
    N,
    /// M <= floor(ln n)
    Logn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TPrimeArg {
    /// t - floor(n ln n / k)
    Floored,
    /// t - n ln n / k
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceArg {
    #[default]
    Walk,
    Nu,
    NuSym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetArg {
    #[default]
    Uniform,
    Nu,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Args {
    /// TOML file with any of the options below (kebab-case keys).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Deck size n = m*l.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of card types.
    #[arg(long)]
    pub m: Option<usize>,
    /// Copies of each card type.
    #[arg(long)]
    pub l: Option<usize>,
    /// Cycle length of each shuffle step.
    #[arg(long)]
    pub k: Option<usize>,
    /// First window parameter c of the grid
    #[arg(long, allow_hyphen_values = true)]
    pub c_from: Option<f64>,
    /// Last window parameter c, inclusive (default: --c-from)
    #[arg(long, allow_hyphen_values = true)]
    pub c_to: Option<f64>,
    /// Grid spacing in c (default 1)
    #[arg(long)]
    pub c_step: Option<f64>,
    /// Explicit step counts, comma separated; replaces the c grid.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<u64>,
    /// Monte Carlo samples per source.
    #[arg(long)]
    pub samples: Option<u64>,
    /// 64-bit seed for every random stream.
    #[arg(long, env = "KCYCLE_SEED")]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Use the growing-l window t = (n/k)(ln n - ln(l)/2 + c).
    #[arg(long)]
    pub mode_growing_l: bool,
    /// Truncation of the number of set-aside points in nu.
    #[arg(long, value_enum)]
    pub cap: Option<CapArg>,
    /// Rounding of t' in nu.
    #[arg(long, value_enum)]
    pub tprime: Option<TPrimeArg>,
    /// Permutation source for simulate.
    #[arg(long, value_enum)]
    pub source: Option<SourceArg>,
    /// Comparison measure for plancherel.
    #[arg(long, value_enum)]
    pub target: Option<TargetArg>,
    /// Report only the Plancherel sum over partitions without a long first row or column.
    #[arg(long)]
    pub outside_long: bool,
    /// Emit the limiting profile curves without sampling (profile only).
    #[arg(long)]
    pub theory_only: bool,
    /// Fill wall_time_ms with measured times (breaks byte-identical reruns).
    #[arg(long)]
    pub record_timing: bool,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Keys accepted in the config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    n: Option<usize>,
    m: Option<usize>,
    l: Option<usize>,
    k: Option<usize>,
    c_from: Option<f64>,
    c_to: Option<f64>,
    c_step: Option<f64>,
    t: Option<Vec<u64>>,
    samples: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    mode_growing_l: Option<bool>,
    cap: Option<CapArg>,
    tprime: Option<TPrimeArg>,
    source: Option<SourceArg>,
    target: Option<TargetArg>,
    outside_long: Option<bool>,
    theory_only: Option<bool>,
    record_timing: Option<bool>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Where the walk is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    C(Vec<f64>),
    T(Vec<u64>),
}

pub const DEFAULT_SAMPLES: u64 = 10_000;

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub grid: Option<Grid>,
    pub samples: u64,
    pub seed: u64,
    pub workers: Option<usize>,
    pub growing_l: bool,
    pub cap: Cap,
    pub tprime: TPrime,
    pub source: SourceArg,
    pub target: TargetArg,
    pub outside_long: bool,
    pub theory_only: bool,
    pub record_timing: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn resolve(mode: Mode, args: &Args) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let (n, m, l) = resolve_deck(args.n.or(file.n), args.m.or(file.m), args.l.or(file.l))?;
        let grid = resolve_grid(
            args.c_from.or(file.c_from),
            args.c_to.or(file.c_to),
            args.c_step.or(file.c_step),
            if args.t.is_empty() { file.t.unwrap_or_default() } else { args.t.clone() },
        )?;
        let samples = args.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES);
        if samples == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        let workers = args.workers.or(file.workers);
        if workers == Some(0) {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        // The Plancherel comparison uses the ⌊ln n⌋ cap by default.
        let default_cap = if mode == Mode::Plancherel { CapArg::Logn } else { CapArg::N };
        let cap = match args.cap.or(file.cap).unwrap_or(default_cap) {
            CapArg::N => Cap::Full,
            CapArg::Logn => Cap::Log,
        };
        let tprime = match args.tprime.or(file.tprime).unwrap_or(TPrimeArg::Floored) {
            TPrimeArg::Floored => TPrime::Floored,
            TPrimeArg::Real => TPrime::Real,
        };
        Ok(ExperimentConfig {
            mode,
            n,
            m,
            l,
            k: args.k.or(file.k),
            grid,
            samples,
            seed: args.seed.or(file.seed).unwrap_or(0),
            workers,
            growing_l: args.mode_growing_l || file.mode_growing_l.unwrap_or(false),
            cap,
            tprime,
            source: args.source.or(file.source).unwrap_or_default(),
            target: args.target.or(file.target).unwrap_or_default(),
            outside_long: args.outside_long || file.outside_long.unwrap_or(false),
            theory_only: args.theory_only || file.theory_only.unwrap_or(false),
            record_timing: args.record_timing || file.record_timing.unwrap_or(false),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or_default(),
        })
    }

    pub fn deck(&self) -> Result<DeckParams, CliError> {
        match (self.n, self.m, self.l) {
            (Some(n), Some(m), Some(l)) => Ok(DeckParams::new(n, m, l)?),
            _ => Err(CliError::Usage("the deck needs two of --n, --m, --l".into())),
        }
    }

    pub fn k(&self) -> Result<usize, CliError> {
        self.k.ok_or_else(|| CliError::Usage("--k is required".into()))
    }

    pub fn grid(&self) -> Result<&Grid, CliError> {
        self.grid
            .as_ref()
            .ok_or_else(|| CliError::Usage("give --t or --c-from/--c-to/--c-step".into()))
    }
}

type Deck = (Option<usize>, Option<usize>, Option<usize>);

/// Fills in the third of `n = m·l` from the other two.
fn resolve_deck(
    n: Option<usize>,
    m: Option<usize>,
    l: Option<usize>,
) -> Result<Deck, CliError> {
    let split = |total: usize, part: usize, what: &str| {
        if part == 0 || !total.is_multiple_of(part) {
            Err(CliError::Usage(format!("n={total} is not divisible by {what}={part}")))
        } else {
            Ok(total / part)
        }
    };
    Ok(match (n, m, l) {
        (Some(n), Some(m), Some(l)) => {
            if m * l != n {
                return Err(CliError::Usage(format!("n={n} differs from m*l={}", m * l)));
            }
            (Some(n), Some(m), Some(l))
        }
        (Some(n), Some(m), None) => (Some(n), Some(m), Some(split(n, m, "m")?)),
        (Some(n), None, Some(l)) => (Some(n), Some(split(n, l, "l")?), Some(l)),
        (None, Some(m), Some(l)) => (Some(m * l), Some(m), Some(l)),
        (Some(n), None, None) => (Some(n), Some(n), Some(1)),
        other => other,
    })
}

fn resolve_grid(
    from: Option<f64>,
    to: Option<f64>,
    step: Option<f64>,
    t: Vec<u64>,
) -> Result<Option<Grid>, CliError> {
    let any_c = from.is_some() || to.is_some() || step.is_some();
    if !t.is_empty() {
        if any_c {
            return Err(CliError::Usage("give either --t or a c grid, not both".into()));
        }
        return Ok(Some(Grid::T(t)));
    }
    if !any_c {
        return Ok(None);
    }
    let from = from.ok_or_else(|| CliError::Usage("--c-from is required".into()))?;
    let to = to.unwrap_or(from);
    let step = step.unwrap_or(1.0);
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 || to < from {
        return Err(CliError::Usage(format!("invalid c grid {from}..{to} by {step}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::Usage(format!("c grid has {count} points")));
    }
    // Snap to 1e-12 so that accumulated rounding does not leak into the output.
    let grid = (0..count)
        .map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12)
        .map(|c| if c == 0.0 { 0.0 } else { c })
        .collect();
    Ok(Some(Grid::C(grid)))
}
