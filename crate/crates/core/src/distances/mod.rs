//! Total variation: exact, Poisson and Gaussian limiting profiles, Plancherel
//! upper bounds and Monte Carlo estimates from fixed-point histograms.

mod empirical;
mod plancherel;

use std::collections::BTreeMap;

use crate::error::{param, Error, Result};
use crate::perm::{ExactDistribution, EXACT_MAX_N, LABEL_MAX_N};
use crate::sum::{neumaier_sum, Neumaier};

pub use empirical::{
    empirical_f_histogram, poisson_theory, profile_sweep, realized_t, EmpiricalF, Estimator,
    ProfileMode, ProfilePoint, Source, TvEstimate,
};
pub use plancherel::{
    plancherel_l2_bound, PlancherelBound, PlancherelTarget, Spectrum, PLANCHEREL_MAX_N,
};

/// Counts over the nonnegative integers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        let mut h = Histogram { counts, total };
        h.trim();
        h
    }

    fn trim(&mut self) {
        while self.counts.last() == Some(&0) {
            self.counts.pop();
        }
    }

    pub fn add(&mut self, x: usize) {
        self.add_count(x, 1);
    }

    pub fn add_count(&mut self, x: usize, count: u64) {
        if count == 0 {
            return;
        }
        if x >= self.counts.len() {
            self.counts.resize(x + 1, 0);
        }
        self.counts[x] += count;
        self.total += count;
    }

    pub fn merge(&mut self, other: &Histogram) {
        for (x, &c) in other.counts.iter().enumerate() {
            self.add_count(x, c);
        }
    }

    pub fn count(&self, x: usize) -> u64 {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn frequency(&self, x: usize) -> f64 {
        self.count(x) as f64 / self.total as f64
    }

    pub fn mean(&self) -> f64 {
        let s: f64 = self.counts.iter().enumerate().map(|(x, &c)| x as f64 * c as f64).sum();
        s / self.total as f64
    }
}

fn check_nonempty(h: &Histogram) -> Result<()> {
    if h.total == 0 {
        return param("histogram is empty");
    }
    Ok(())
}

/// Plug-in total variation between two empirical laws.
pub fn tv_histograms(h1: &Histogram, h2: &Histogram) -> Result<f64> {
    check_nonempty(h1)?;
    check_nonempty(h2)?;
    let len = h1.counts.len().max(h2.counts.len());
    let tv = 0.5 * neumaier_sum((0..len).map(|x| (h1.frequency(x) - h2.frequency(x)).abs()));
    Ok(tv.min(1.0))
}

/// Total variation between an empirical law and a reference pmf on `0..`.
pub fn tv_histogram_pmf(h: &Histogram, pmf: &[f64]) -> Result<f64> {
    check_nonempty(h)?;
    let len = h.counts.len().max(pmf.len());
    let tv = 0.5 * neumaier_sum((0..len).map(|x| (h.frequency(x) - pmf.get(x).copied().unwrap_or(0.0)).abs()));
    Ok(tv.min(1.0))
}

/// Mass left in both tails before [`tv_poisson`] stops summing.
pub const POISSON_TAIL: f64 = 1e-14;

/// Poisson probabilities on a window `start..start + probs.len()` holding all
/// but a negligible tail.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonPmf {
    pub start: usize,
    pub probs: Vec<f64>,
}

impl PoissonPmf {
    pub fn get(&self, x: usize) -> f64 {
        x.checked_sub(self.start)
            .and_then(|i| self.probs.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn end(&self) -> usize {
        self.start + self.probs.len()
    }
}

/// Poisson(`mean`) probabilities, grown outward from the mode by the ratio
/// recurrence until each tail left out is below `tail`, then renormalized.
/// Working from the mode keeps the relative error near machine precision even
/// for means in the thousands.
pub fn poisson_pmf(mean: f64, tail: f64) -> PoissonPmf {
    assert!(mean > 0.0 && mean.is_finite(), "Poisson mean must be positive");
    let mode = mean.floor() as usize;
    let p_mode = (mode as f64 * mean.ln() - mean - libm::lgamma(mode as f64 + 1.0)).exp();

    let mut below = Vec::new();
    let mut p = p_mode;
    let mut x = mode;
    while x > 0 {
        // For x < mean the lower tail is dominated by a geometric series.
        let ratio = x as f64 / mean;
        if ratio < 1.0 && p * ratio / (1.0 - ratio) < tail {
            break;
        }
        p *= ratio;
        x -= 1;
        below.push(p);
    }
    let start = x;

    let mut probs: Vec<f64> = below.into_iter().rev().collect();
    probs.push(p_mode);
    let mut p = p_mode;
    let mut x = mode;
    loop {
        let ratio = mean / (x + 1) as f64;
        if ratio < 1.0 && p * ratio / (1.0 - ratio) < tail {
            break;
        }
        p *= ratio;
        x += 1;
        probs.push(p);
    }
    let total = neumaier_sum(probs.iter().copied());
    probs.iter_mut().for_each(|q| *q /= total);
    PoissonPmf { start, probs }
}

/// `d_TV(Pois(a), Pois(b))` by direct summation.
pub fn tv_poisson(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let pa = poisson_pmf(a, POISSON_TAIL);
    let pb = poisson_pmf(b, POISSON_TAIL);
    let lo = pa.start.min(pb.start);
    let hi = pa.end().max(pb.end());
    let tv = 0.5 * neumaier_sum((lo..hi).map(|x| (pa.get(x) - pb.get(x)).abs()));
    tv.min(1.0)
}

/// `2Φ(e^{-c}/2) - 1 = erf(e^{-c} / (2√2))`, the profile for a growing
/// number of copies.
pub fn gaussian_profile(c: f64) -> f64 {
    libm::erf((-c).exp() / (2.0 * std::f64::consts::SQRT_2))
}

/// `d_TV(Pois(l + e^{-c}), Pois(l))`, the profile for `l` copies of each card.
pub fn poisson_profile(c: f64, l: usize) -> f64 {
    assert!(l >= 1, "l must be at least 1");
    tv_poisson(l as f64 + (-c).exp(), l as f64)
}

/// Exact total variation between two masses on `S_n`.
pub fn exact_tv(p: &ExactDistribution, q: &ExactDistribution) -> Result<f64> {
    if p.n != q.n || p.mass.len() != q.mass.len() {
        return Err(Error::MismatchedSupport);
    }
    if p.n > EXACT_MAX_N {
        return Err(Error::SizeLimit { what: "exact total variation", size: p.n, limit: EXACT_MAX_N });
    }
    Ok(0.5 * neumaier_sum(p.mass.iter().zip(&q.mass).map(|(a, b)| (a - b).abs())))
}

/// Exact total variation between two masses on quotient labels.
pub fn exact_tv_labels(p: &BTreeMap<Vec<u16>, f64>, q: &BTreeMap<Vec<u16>, f64>) -> Result<f64> {
    if p.len() != q.len() || p.keys().zip(q.keys()).any(|(a, b)| a != b) {
        return Err(Error::MismatchedSupport);
    }
    let n = p.keys().next().map_or(0, Vec::len);
    if n > LABEL_MAX_N {
        return Err(Error::SizeLimit { what: "exact label total variation", size: n, limit: LABEL_MAX_N });
    }
    let mut acc = Neumaier::default();
    for (a, b) in p.values().zip(q.values()) {
        acc.add((a - b).abs());
    }
    Ok(0.5 * acc.value())
}
