//! Monte Carlo laws of the quotient fixed-point count `|F(σ)|`.
//!
//! Sample `i` of a source always draws from stream `i` of that source's
//! namespace, and per-worker histograms are merged by integer addition, so the
//! result does not depend on the number of workers or on scheduling.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{gaussian_profile, poisson_profile, tv_histograms, tv_poisson, Histogram};
use crate::error::{param, Result};
use crate::measures::{sample_xi, NuParams, NuSampler, XiParams, XiVariant};
use crate::perm::{DeckParams, WalkChain, WalkParams};
use crate::rng::{namespace, StreamFamily};

/// Where the permutations come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Walk(WalkParams),
    Nu(NuParams),
    NuSym(NuParams),
    /// Uniform on `S_n`.
    Uniform,
    /// A uniform `x`-subset fixed pointwise, the rest uniform.
    SetAside { x: usize },
}

impl Source {
    fn namespace(&self) -> u64 {
        match self {
            Source::Walk(_) => namespace::WALK,
            Source::Nu(_) => namespace::NU,
            Source::NuSym(_) => namespace::NU_SYM,
            Source::Uniform => namespace::UNIFORM,
            Source::SetAside { .. } => namespace::SET_ASIDE,
        }
    }

    fn n(&self) -> Option<usize> {
        match self {
            Source::Walk(w) => Some(w.n()),
            Source::Nu(p) | Source::NuSym(p) => Some(p.n()),
            Source::Uniform | Source::SetAside { .. } => None,
        }
    }
}

/// The law of `|F|` and how often the sample was clustered.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmpiricalF {
    pub histogram: Histogram,
    pub clustered: u64,
}

impl EmpiricalF {
    pub fn samples(&self) -> u64 {
        self.histogram.total()
    }

    pub fn clustered_frequency(&self) -> f64 {
        self.clustered as f64 / self.samples() as f64
    }

    fn record(&mut self, count: usize, clustered: bool) {
        self.histogram.add(count);
        self.clustered += clustered as u64;
    }

    fn merge(mut self, other: EmpiricalF) -> EmpiricalF {
        self.histogram.merge(&other.histogram);
        self.clustered += other.clustered;
        self
    }
}

/// `|F|` and the clustered flag from `(position, image)` pairs.
fn f_stats(pairs: impl Iterator<Item = (usize, usize)>, m: usize, blocks: &mut [u32]) -> (usize, bool) {
    blocks.fill(0);
    let mut count = 0;
    let mut clustered = false;
    for (i, y) in pairs {
        if y % m == i % m {
            count += 1;
            let b = &mut blocks[i % m];
            *b += 1;
            clustered |= *b >= 2;
        }
    }
    (count, clustered)
}

/// `samples` independent draws of `|F|` from `source`.
pub fn empirical_f_histogram(source: &Source, deck: &DeckParams, samples: u64, seed: u64) -> Result<EmpiricalF> {
    if samples == 0 {
        return param("at least one sample is required");
    }
    if let Some(n) = source.n() {
        if n != deck.n {
            return param(format!("source acts on {n} points but the deck has {}", deck.n));
        }
    }
    let n = deck.n;
    let m = deck.m;
    let family = StreamFamily::new(seed, source.namespace());
    let sampler = match source {
        Source::Nu(p) => Some(NuSampler::nu(p)?),
        Source::NuSym(p) => Some(NuSampler::nu_sym(p)?),
        _ => None,
    };
    let xi = match source {
        Source::SetAside { x } => Some(XiParams::new(n, *x, XiVariant::Symmetric)?),
        _ => None,
    };

    (0..samples)
        .into_par_iter()
        .try_fold(
            || (EmpiricalF::default(), vec![0u32; m], Vec::<u32>::new()),
            |(mut acc, mut blocks, mut scratch), i| {
                let mut rng = family.chain(i);
                let (count, clustered) = match source {
                    Source::Walk(w) => {
                        let mut chain = WalkChain::new(n);
                        chain.advance_to(w.k, w.t, &mut rng);
                        (chain.quotient_fixed_point_count(m), chain.is_clustered(m, &mut blocks))
                    }
                    Source::Uniform => {
                        scratch.clear();
                        scratch.extend(0..n as u32);
                        scratch.shuffle(&mut rng);
                        f_stats(scratch.iter().map(|&y| y as usize).enumerate(), m, &mut blocks)
                    }
                    Source::Nu(_) | Source::NuSym(_) => {
                        let p = sampler.as_ref().expect("sampler built above").sample(&mut rng)?;
                        f_stats(p.images().iter().copied().enumerate(), m, &mut blocks)
                    }
                    Source::SetAside { .. } => {
                        let p = sample_xi(xi.as_ref().expect("params built above"), &mut rng)?;
                        f_stats(p.images().iter().copied().enumerate(), m, &mut blocks)
                    }
                };
                acc.record(count, clustered);
                Ok((acc, blocks, scratch))
            },
        )
        .map(|r: Result<_>| r.map(|(acc, _, _)| acc))
        .try_reduce(EmpiricalF::default, |a, b| Ok(a.merge(b)))
}

/// How `t` is tied to the window parameter `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProfileMode {
    /// `t = (n/k)(ln n + c)`.
    #[default]
    FixedL,
    /// `t = (n/k)(ln n - (1/2) ln l + c)`.
    GrowingL,
}

/// The step count realizing `c`, rounded to the nearest integer and floored
/// at zero.
pub fn realized_t(deck: &DeckParams, k: usize, c: f64, mode: ProfileMode) -> u64 {
    let n = deck.n as f64;
    let shift = match mode {
        ProfileMode::FixedL => 0.0,
        ProfileMode::GrowingL => 0.5 * (deck.l as f64).ln(),
    };
    (n / k as f64 * (n.ln() - shift + c)).round().max(0.0) as u64
}

/// A total variation estimate and its delta-method standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvEstimate {
    pub tv: f64,
    pub stderr: f64,
}

impl TvEstimate {
    /// Plug-in estimate from two independent histograms. The standard error
    /// treats the sign pattern of `p̂ - q̂` as fixed.
    pub fn from_histograms(h1: &Histogram, h2: &Histogram) -> Result<Self> {
        let tv = tv_histograms(h1, h2)?;
        let len = h1.counts().len().max(h2.counts().len());
        let (mut sp, mut sq, mut vp, mut vq) = (0.0, 0.0, 0.0, 0.0);
        for x in 0..len {
            let (p, q) = (h1.frequency(x), h2.frequency(x));
            let s = (p - q).signum();
            sp += s * p;
            sq += s * q;
            vp += s * s * p;
            vq += s * s * q;
        }
        let var = (vp - sp * sp) / h1.total() as f64 + (vq - sq * sq) / h2.total() as f64;
        Ok(TvEstimate { tv, stderr: 0.5 * var.max(0.0).sqrt() })
    }
}

/// How a reported distance was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    EmpiricalF,
    ExactEnumeration,
    PlancherelBound,
    TheoryPoisson,
    TheoryGaussian,
}

impl Estimator {
    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::EmpiricalF => "empirical-F",
            Estimator::ExactEnumeration => "exact-enumeration",
            Estimator::PlancherelBound => "plancherel-bound",
            Estimator::TheoryPoisson => "theory-poisson",
            Estimator::TheoryGaussian => "theory-gaussian",
        }
    }
}

/// One point of a cutoff profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub c: f64,
    pub t: u64,
    pub tv_estimate: f64,
    pub stderr: f64,
    pub method: Estimator,
    pub clustered_freq: f64,
    /// `d_TV(Pois(l + e^{-c}), Pois(l))` in fixed-l mode and
    /// `d_TV(Pois(l + √l e^{-c}), Pois(l))` in growing-l mode.
    pub theory_poisson: f64,
    pub theory_gaussian: f64,
}

/// The finite-`l` Poisson curve matching a profile mode.
pub fn poisson_theory(c: f64, l: usize, mode: ProfileMode) -> f64 {
    match mode {
        ProfileMode::FixedL => poisson_profile(c, l),
        ProfileMode::GrowingL => {
            let l = l as f64;
            tv_poisson(l + l.sqrt() * (-c).exp(), l)
        }
    }
}

/// Walk versus uniform `|F|` laws along a grid of window parameters.
///
/// Chain `i` runs once through the sorted realized times and is read off at
/// each, so the points of one sweep are correlated but cheap. The uniform
/// reference histogram is shared by all points.
pub fn profile_sweep(
    deck: &DeckParams,
    k: usize,
    c_grid: &[f64],
    samples: u64,
    seed: u64,
    mode: ProfileMode,
) -> Result<Vec<ProfilePoint>> {
    if c_grid.is_empty() {
        return param("the grid of window parameters is empty");
    }
    if samples == 0 {
        return param("at least one sample is required");
    }
    WalkParams::new(*deck, k, 0)?;
    let ts: Vec<u64> = c_grid.iter().map(|&c| realized_t(deck, k, c, mode)).collect();
    let mut times = ts.clone();
    times.sort_unstable();
    times.dedup();

    let n = deck.n;
    let m = deck.m;
    let family = StreamFamily::new(seed, namespace::WALK);
    let walk: Vec<EmpiricalF> = (0..samples)
        .into_par_iter()
        .fold(
            || (vec![EmpiricalF::default(); times.len()], vec![0u32; m]),
            |(mut acc, mut blocks), i| {
                let mut rng = family.chain(i);
                let mut chain = WalkChain::new(n);
                for (slot, &t) in times.iter().enumerate() {
                    chain.advance_to(k, t, &mut rng);
                    acc[slot].record(chain.quotient_fixed_point_count(m), chain.is_clustered(m, &mut blocks));
                }
                (acc, blocks)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(
            || vec![EmpiricalF::default(); times.len()],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        );
    let uniform = empirical_f_histogram(&Source::Uniform, deck, samples, seed)?;

    c_grid
        .iter()
        .zip(&ts)
        .map(|(&c, &t)| {
            let slot = times.binary_search(&t).expect("time was recorded");
            let est = TvEstimate::from_histograms(&walk[slot].histogram, &uniform.histogram)?;
            Ok(ProfilePoint {
                c,
                t,
                tv_estimate: est.tv,
                stderr: est.stderr,
                method: Estimator::EmpiricalF,
                clustered_freq: walk[slot].clustered_frequency(),
                theory_poisson: poisson_theory(c, deck.l, mode),
                theory_gaussian: gaussian_profile(c),
            })
        })
        .collect()
}
