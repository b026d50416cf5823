//! Executes a resolved configuration and writes its rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use kcycle::distances::{
    empirical_f_histogram, exact_tv_labels, gaussian_profile, poisson_theory, profile_sweep,
    realized_t, Estimator, PlancherelTarget, ProfileMode, Source, Spectrum, TvEstimate,
};
use kcycle::measures::NuParams;
use kcycle::partitions::{character_on_k_cycle, main_term, main_term_in_regime, partitions_of, CharacterTable};
use kcycle::perm::{
    all_permutations, exact_walk_distribution, is_clustered, label_pushforward, rank,
    uniform_on_labels, DeckParams, WalkParams, EXACT_MAX_N,
};

use crate::config::{ExperimentConfig, Grid, Mode, SourceArg, TargetArg};
use crate::error::CliError;
use crate::output::{format_float, Format, ResultRow, RowWriter};
use crate::verify;

/// Largest `n` for the characters table.
pub const CHARACTERS_MAX_N: usize = 40;

/// Either a fixed number of copies or the growing-copies limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LSpec {
    Fixed(usize),
    /// The Gaussian limit; the finite `l`, when known, fills `theory_poisson`.
    Growing(Option<usize>),
}

/// The limiting profile at each `c`, without sampling: the Poisson profile
/// for a fixed number of copies, the Gaussian one for a growing number.
pub fn emit_theory_curves(l: LSpec, c_grid: &[f64]) -> Vec<ResultRow> {
    c_grid
        .iter()
        .map(|&c| {
            let gaussian = gaussian_profile(c);
            let (estimator, tv, poisson, l) = match l {
                LSpec::Fixed(l) => {
                    let p = poisson_theory(c, l, ProfileMode::FixedL);
                    (Estimator::TheoryPoisson, p, Some(p), Some(l))
                }
                LSpec::Growing(l) => {
                    let p = l.map(|l| poisson_theory(c, l, ProfileMode::GrowingL));
                    (Estimator::TheoryGaussian, gaussian, p, l)
                }
            };
            ResultRow {
                l,
                c: Some(c),
                estimator: estimator.as_str(),
                tv,
                theory_poisson: poisson,
                theory_gaussian: Some(gaussian),
                ..Default::default()
            }
        })
        .collect()
}

fn profile_mode(cfg: &ExperimentConfig) -> ProfileMode {
    if cfg.growing_l {
        ProfileMode::GrowingL
    } else {
        ProfileMode::FixedL
    }
}

/// The window parameter realized by `t` steps.
fn c_of_t(deck: &DeckParams, k: usize, t: u64, mode: ProfileMode) -> f64 {
    let n = deck.n as f64;
    let shift = match mode {
        ProfileMode::FixedL => 0.0,
        ProfileMode::GrowingL => 0.5 * (deck.l as f64).ln(),
    };
    k as f64 * t as f64 / n - n.ln() + shift
}

/// `(c, t)` for every grid point.
fn grid_points(cfg: &ExperimentConfig, deck: &DeckParams, k: usize) -> Result<Vec<(f64, u64)>, CliError> {
    let mode = profile_mode(cfg);
    Ok(match cfg.grid()? {
        Grid::C(cs) => cs.iter().map(|&c| (c, realized_t(deck, k, c, mode))).collect(),
        Grid::T(ts) => ts.iter().map(|&t| (c_of_t(deck, k, t, mode), t)).collect(),
    })
}

struct Timer {
    start: Instant,
    enabled: bool,
}

impl Timer {
    fn start(enabled: bool) -> Self {
        Timer { start: Instant::now(), enabled }
    }

    fn ms(&self) -> u64 {
        if self.enabled {
            self.start.elapsed().as_millis() as u64
        } else {
            0
        }
    }
}

fn base_row(cfg: &ExperimentConfig, deck: &DeckParams, k: usize, c: f64, t: u64, estimator: Estimator) -> ResultRow {
    let mode = profile_mode(cfg);
    ResultRow {
        n: Some(deck.n),
        m: Some(deck.m),
        l: Some(deck.l),
        k: Some(k),
        c: Some(c),
        t: Some(t),
        estimator: estimator.as_str(),
        theory_poisson: Some(poisson_theory(c, deck.l, mode)),
        theory_gaussian: Some(gaussian_profile(c)),
        ..Default::default()
    }
}

fn simulate(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    let deck = cfg.deck()?;
    let k = cfg.k()?;
    WalkParams::new(deck, k, 0)?;
    let points = grid_points(cfg, &deck, k)?;
    let uniform = empirical_f_histogram(&Source::Uniform, &deck, cfg.samples, cfg.seed)?;
    points
        .into_iter()
        .map(|(c, t)| {
            let timer = Timer::start(cfg.record_timing);
            let walk = WalkParams::new(deck, k, t)?;
            let source = match cfg.source {
                SourceArg::Walk => Source::Walk(walk),
                SourceArg::Nu => Source::Nu(NuParams::new(walk, cfg.tprime, cfg.cap)?),
                SourceArg::NuSym => Source::NuSym(NuParams::new(walk, cfg.tprime, cfg.cap)?),
            };
            let f = empirical_f_histogram(&source, &deck, cfg.samples, cfg.seed)?;
            let est = TvEstimate::from_histograms(&f.histogram, &uniform.histogram)?;
            Ok(ResultRow {
                tv: est.tv,
                stderr: Some(est.stderr),
                clustered_freq: Some(f.clustered_frequency()),
                samples: Some(cfg.samples),
                seed: Some(cfg.seed),
                wall_time_ms: timer.ms(),
                ..base_row(cfg, &deck, k, c, t, Estimator::EmpiricalF)
            })
        })
        .collect()
}

fn profile(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    let c_grid = match cfg.grid()? {
        Grid::C(cs) => cs.clone(),
        Grid::T(_) => return Err(CliError::Usage("profile takes a c grid, not --t".into())),
    };
    if cfg.theory_only {
        let l = if cfg.growing_l {
            LSpec::Growing(cfg.l)
        } else {
            LSpec::Fixed(cfg.l.ok_or_else(|| CliError::Usage("--l is required".into()))?)
        };
        let mut rows = emit_theory_curves(l, &c_grid);
        if let (Ok(deck), Some(k)) = (cfg.deck(), cfg.k) {
            for row in &mut rows {
                row.n = Some(deck.n);
                row.m = Some(deck.m);
                row.k = Some(k);
                row.t = Some(realized_t(&deck, k, row.c.unwrap_or(0.0), profile_mode(cfg)));
            }
        }
        return Ok(rows);
    }
    let deck = cfg.deck()?;
    let k = cfg.k()?;
    let timer = Timer::start(cfg.record_timing);
    let points = profile_sweep(&deck, k, &c_grid, cfg.samples, cfg.seed, profile_mode(cfg))?;
    let elapsed = timer.ms();
    Ok(points
        .into_iter()
        .map(|p| ResultRow {
            tv: p.tv_estimate,
            stderr: Some(p.stderr),
            clustered_freq: Some(p.clustered_freq),
            theory_poisson: Some(p.theory_poisson),
            theory_gaussian: Some(p.theory_gaussian),
            samples: Some(cfg.samples),
            seed: Some(cfg.seed),
            wall_time_ms: elapsed,
            ..base_row(cfg, &deck, k, p.c, p.t, p.method)
        })
        .collect())
}

fn exact(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    let deck = cfg.deck()?;
    let k = cfg.k()?;
    if deck.n > EXACT_MAX_N {
        return Err(kcycle::Error::SizeLimit { what: "exact walk distribution", size: deck.n, limit: EXACT_MAX_N }.into());
    }
    let points = grid_points(cfg, &deck, k)?;
    let uniform = uniform_on_labels(&deck)?;
    let perms: Vec<_> = all_permutations(deck.n).collect();
    points
        .into_iter()
        .map(|(c, t)| {
            let timer = Timer::start(cfg.record_timing);
            let dist = exact_walk_distribution(&WalkParams::new(deck, k, t)?)?;
            let tv = exact_tv_labels(&label_pushforward(&dist, &deck)?, &uniform)?;
            let clustered: f64 = perms
                .iter()
                .filter(|p| is_clustered(p, &deck))
                .map(|p| dist.mass[rank(p)])
                .sum();
            Ok(ResultRow {
                tv,
                stderr: Some(0.0),
                clustered_freq: Some(clustered),
                wall_time_ms: timer.ms(),
                ..base_row(cfg, &deck, k, c, t, Estimator::ExactEnumeration)
            })
        })
        .collect()
}

fn plancherel(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    let deck = cfg.deck()?;
    let k = cfg.k()?;
    let points = grid_points(cfg, &deck, k)?;
    let spectrum = Spectrum::new(deck.n, k)?;
    points
        .into_iter()
        .map(|(c, t)| {
            let timer = Timer::start(cfg.record_timing);
            let walk = WalkParams::new(deck, k, t)?;
            let target = match cfg.target {
                TargetArg::Uniform => PlancherelTarget::UniformParityClass,
                TargetArg::Nu => PlancherelTarget::Nu(NuParams::new(walk, cfg.tprime, cfg.cap)?),
            };
            let b = spectrum.bound(t, &target)?;
            let value = if cfg.outside_long { 0.5 * b.outside_long.sqrt() } else { b.bound };
            Ok(ResultRow {
                tv: value.min(1.0),
                wall_time_ms: timer.ms(),
                ..base_row(cfg, &deck, k, c, t, Estimator::PlancherelBound)
            })
        })
        .collect()
}

fn characters(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let n = cfg.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
    let k = cfg.k()?;
    if n > CHARACTERS_MAX_N {
        return Err(kcycle::Error::SizeLimit { what: "character table", size: n, limit: CHARACTERS_MAX_N }.into());
    }
    if k < 2 || k > n {
        return Err(CliError::Usage(format!("--k must satisfy 2 <= k <= n={n}")));
    }
    let mut table = CharacterTable::new();
    if cfg.format == Format::Csv {
        writeln!(out, "lambda,dimension,character,ratio,ratio_float,main_term,in_regime,long_row_or_column")?;
    }
    for lambda in partitions_of(n) {
        let chi = character_on_k_cycle(&lambda, k)?;
        let dim = table.dimension(&lambda).clone();
        let ratio = table.ratio(&lambda, k)?.clone();
        let mt = main_term(&lambda, k).ok();
        let parts: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
        let regime = main_term_in_regime(&lambda, k);
        let long = lambda.in_long_set();
        match cfg.format {
            Format::Csv => writeln!(
                out,
                "{},{dim},{chi},{},{},{},{regime},{long}",
                parts.join(" "),
                ratio.value,
                format_float(ratio.approx),
                mt.map(format_float).unwrap_or_default(),
            )?,
            Format::Jsonl => writeln!(
                out,
                "{{\"lambda\":[{}],\"dimension\":\"{dim}\",\"character\":\"{chi}\",\"ratio\":\"{}\",\"ratio_float\":{},\"main_term\":{},\"in_regime\":{regime},\"long_row_or_column\":{long}}}",
                parts.join(","),
                ratio.value,
                format_float(ratio.approx),
                mt.map(format_float).unwrap_or_else(|| "null".into()),
            )?,
        }
    }
    Ok(())
}

fn write_rows(rows: &[ResultRow], format: Format, out: &mut dyn Write) -> io::Result<()> {
    let mut w = RowWriter::new(out, format);
    for row in rows {
        w.write(row)?;
    }
    w.finish()?;
    Ok(())
}

fn rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cfg.mode {
        Mode::Simulate => simulate(cfg),
        Mode::Profile => profile(cfg),
        Mode::Exact => exact(cfg),
        Mode::Plancherel => plancherel(cfg),
        Mode::Characters | Mode::Verify => unreachable!("not a row mode"),
    })
}

fn dispatch(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match cfg.mode {
        Mode::Characters => characters(cfg, out),
        Mode::Verify => {
            let failed = verify::report(&verify::run_all(), out)?;
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::VerifyFailed(failed))
            }
        }
        _ => {
            let rows = rows(cfg)?;
            write_rows(&rows, cfg.format, out)?;
            Ok(())
        }
    }
}

/// Runs `cfg` on its own worker pool, writing to `--out` or to `stdout`.
pub fn run(cfg: &ExperimentConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            let result = dispatch(cfg, &mut file);
            file.flush()?;
            result
        }
        None => dispatch(cfg, stdout),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kcycle::distances::{poisson_profile, tv_poisson};

    #[test]
    fn theory_curves() {
        let growing = emit_theory_curves(LSpec::Growing(None), &[0.0]);
        assert!((growing[0].tv - 0.3829).abs() < 1e-4);
        assert_eq!(growing[0].estimator, "theory-gaussian");
        let single = emit_theory_curves(LSpec::Fixed(1), &[0.0]);
        assert_eq!(single[0].tv, tv_poisson(2.0, 1.0));
        let grid: Vec<f64> = (-30..=40).map(|i| i as f64 / 10.0).collect();
        for l in [LSpec::Fixed(1), LSpec::Fixed(2), LSpec::Growing(Some(16))] {
            let rows = emit_theory_curves(l, &grid);
            // erf rounds to exactly 1 far left of the window.
            assert!(rows.windows(2).all(|w| w[0].tv > w[1].tv || w[1].tv == 1.0), "{l:?}");
        }
        assert_eq!(emit_theory_curves(LSpec::Fixed(2), &[1.0])[0].tv, poisson_profile(1.0, 2));
    }

    #[test]
    fn c_and_t_round_trip() {
        let deck = DeckParams::new(2000, 1000, 2).unwrap();
        for c in [-3.0, 0.0, 2.5] {
            let t = realized_t(&deck, 2, c, ProfileMode::FixedL);
            assert!((c_of_t(&deck, 2, t, ProfileMode::FixedL) - c).abs() < 2.0 / 2000.0);
        }
        let g = DeckParams::new(4096, 256, 16).unwrap();
        let t = realized_t(&g, 2, 0.5, ProfileMode::GrowingL);
        assert!((c_of_t(&g, 2, t, ProfileMode::GrowingL) - 0.5).abs() < 1e-3);
    }
}
