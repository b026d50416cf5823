//! Measures that set aside a random set of fixed points and randomize the rest.
//!
//! `ξ_M` picks a uniform `M`-subset `S` of positions, fixes it pointwise and
//! draws a uniform permutation of the complement, from the alternating group
//! (`ξ_M`), its odd coset (`ξ_M^c`) or the whole symmetric group
//! (`ξ_M^sym`). `ν` mixes `ξ_M` over a truncated Poisson number `M` of set
//! aside points, with parity matched to the walk; `ν^sym` mixes `ξ_M^sym`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{param, Error, Result};
use crate::partitions::{kostka_hook_with, CharacterTable, Partition};
use crate::perm::{
    all_permutations, factorial, sample_uniform_on_subset, ExactDistribution, Parity,
    Permutation, WalkParams, EXACT_MAX_N,
};
use crate::sum::neumaier_sum;

/// How the shifted time `t' = t - n ln n / k` is rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TPrime {
    /// `t - ⌊n ln n / k⌋`, used by the sampler definition.
    #[default]
    Floored,
    /// `t - n ln n / k`, used by the limiting profiles.
    Real,
}

impl TPrime {
    pub fn of(self, n: usize, k: usize, t: u64) -> f64 {
        let shift = n as f64 * (n as f64).ln() / k as f64;
        match self {
            TPrime::Floored => (t as i64 - shift.floor() as i64) as f64,
            TPrime::Real => t as f64 - shift,
        }
    }
}

/// Truncation level for the number of set-aside points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cap {
    /// `M ≤ n`.
    #[default]
    Full,
    /// `M ≤ ⌊ln n⌋`.
    Log,
    Fixed(usize),
}

impl Cap {
    pub fn level(self, n: usize) -> usize {
        match self {
            Cap::Full => n,
            Cap::Log => (n as f64).ln().floor().max(0.0) as usize,
            Cap::Fixed(c) => c,
        }
    }
}

/// Parameters of `ν` and `ν^sym` at the time of a walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuParams {
    pub walk: WalkParams,
    pub t_prime: f64,
    /// `exp(-k t' / n)`.
    pub gamma: f64,
    pub cap: usize,
}

impl NuParams {
    pub fn new(walk: WalkParams, convention: TPrime, cap: Cap) -> Result<Self> {
        let t_prime = convention.of(walk.n(), walk.k, walk.t);
        Self::with_t_prime(walk, t_prime, cap.level(walk.n()))
    }

    pub fn with_t_prime(walk: WalkParams, t_prime: f64, cap: usize) -> Result<Self> {
        let n = walk.n();
        if cap > n {
            return param(format!("cap {cap} exceeds n={n}"));
        }
        let gamma = (-(walk.k as f64) * t_prime / n as f64).exp();
        if !(gamma > 0.0 && gamma.is_finite()) {
            return param(format!("t'={t_prime} gives γ={gamma} outside (0, ∞)"));
        }
        Ok(NuParams { walk, t_prime, gamma, cap })
    }

    pub fn n(&self) -> usize {
        self.walk.n()
    }

    pub fn parity(&self) -> Parity {
        self.walk.parity()
    }

    /// The `ξ_M` variant mixed by `ν`.
    pub fn variant(&self) -> XiVariant {
        match self.parity() {
            Parity::Even => XiVariant::Alternating,
            Parity::Odd => XiVariant::Complement,
        }
    }

    /// Law of `M` under `ν^sym`: Poisson(γ) conditioned on `M ≤ cap`.
    pub fn sym_weights(&self) -> Vec<f64> {
        truncated_poisson_pmf(self.gamma, self.cap)
    }

    /// Law of `M` under `ν`. In the odd case at least two points must stay
    /// free, so the mass of `M > n-2` is moved onto `M = n-2`.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = self.sym_weights();
        let n = self.n();
        if self.parity() == Parity::Odd && self.cap > n - 2 {
            let excess: f64 = w.drain(n - 1..).sum();
            w[n - 2] += excess;
        }
        w
    }
}

/// Which permutations of the complement `ξ_M` draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XiVariant {
    Alternating,
    Complement,
    Symmetric,
}

impl XiVariant {
    fn parity(self) -> Option<Parity> {
        match self {
            XiVariant::Alternating => Some(Parity::Even),
            XiVariant::Complement => Some(Parity::Odd),
            XiVariant::Symmetric => None,
        }
    }
}

/// `ξ_M` on `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct XiParams {
    pub n: usize,
    /// Number of points set aside.
    pub m: usize,
    pub variant: XiVariant,
}

impl XiParams {
    pub fn new(n: usize, m: usize, variant: XiVariant) -> Result<Self> {
        if m > n {
            return param(format!("set-aside size M={m} exceeds n={n}"));
        }
        if variant == XiVariant::Complement && n - m < 2 {
            return Err(Error::UnsatisfiableParity(n - m));
        }
        Ok(XiParams { n, m, variant })
    }
}

/// `P(Pois(γ) = x | Pois(γ) ≤ cap)` for `x = 0..=cap`, normalized in log space
/// so large `γ` does not overflow.
pub fn truncated_poisson_pmf(gamma: f64, cap: usize) -> Vec<f64> {
    let ln_gamma = gamma.ln();
    let mut log_w = Vec::with_capacity(cap + 1);
    let mut ln_fact = 0.0;
    for x in 0..=cap {
        if x > 0 {
            ln_fact += (x as f64).ln();
        }
        let lw = if x == 0 { 0.0 } else { x as f64 * ln_gamma - ln_fact };
        log_w.push(lw);
    }
    let top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = log_w.iter().map(|lw| (lw - top).exp()).collect();
    let total = neumaier_sum(w.iter().copied());
    w.into_iter().map(|x| x / total).collect()
}

/// Inverse-CDF sampler for a distribution on `{0, …, len-1}`.
#[derive(Debug, Clone)]
pub struct Categorical {
    cdf: Vec<f64>,
}

impl Categorical {
    pub fn new(pmf: &[f64]) -> Result<Self> {
        if pmf.is_empty() || pmf.iter().any(|p| !(*p >= 0.0)) {
            return param("weights must be a nonempty list of nonnegative numbers");
        }
        let mut acc = crate::sum::Neumaier::default();
        let mut cdf: Vec<f64> = pmf
            .iter()
            .map(|&p| {
                acc.add(p);
                acc.value()
            })
            .collect();
        let total = acc.value();
        if !(total > 0.0) {
            return param("weights sum to zero");
        }
        cdf.iter_mut().for_each(|c| *c /= total);
        // Pin the last atom with positive mass so every u < 1 lands somewhere.
        let last = pmf.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        cdf[last..].iter_mut().for_each(|c| *c = 1.0);
        Ok(Categorical { cdf })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1)
    }
}

pub fn sample_truncated_poisson<R: Rng + ?Sized>(gamma: f64, cap: usize, rng: &mut R) -> Result<usize> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return param(format!("γ={gamma} must be positive and finite"));
    }
    Ok(Categorical::new(&truncated_poisson_pmf(gamma, cap))?.sample(rng))
}

/// Fixes a uniform `m`-subset and draws the complement with the given parity.
fn set_aside<R: Rng + ?Sized>(n: usize, m: usize, parity: Option<Parity>, rng: &mut R) -> Result<Permutation> {
    let mut kept = vec![false; n];
    for i in rand::seq::index::sample(rng, n, m) {
        kept[i] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&i| !kept[i]).collect();
    sample_uniform_on_subset(n, &free, parity, rng)
}

pub fn sample_xi<R: Rng + ?Sized>(params: &XiParams, rng: &mut R) -> Result<Permutation> {
    set_aside(params.n, params.m, params.variant.parity(), rng)
}

/// Reusable sampler for `ν` or `ν^sym`.
#[derive(Debug, Clone)]
pub struct NuSampler {
    n: usize,
    parity: Option<Parity>,
    size: Categorical,
}

impl NuSampler {
    pub fn nu(params: &NuParams) -> Result<Self> {
        Ok(NuSampler {
            n: params.n(),
            parity: Some(params.parity()),
            size: Categorical::new(&params.weights())?,
        })
    }

    pub fn nu_sym(params: &NuParams) -> Result<Self> {
        Ok(NuSampler {
            n: params.n(),
            parity: None,
            size: Categorical::new(&params.sym_weights())?,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Permutation> {
        let m = self.size.sample(rng);
        set_aside(self.n, m, self.parity, rng)
    }
}

pub fn sample_nu<R: Rng + ?Sized>(params: &NuParams, rng: &mut R) -> Result<Permutation> {
    NuSampler::nu(params)?.sample(rng)
}

pub fn sample_nu_sym<R: Rng + ?Sized>(params: &NuParams, rng: &mut R) -> Result<Permutation> {
    NuSampler::nu_sym(params)?.sample(rng)
}

/// `ξ_M(λ) = tr ρ_λ(ξ_M) / d_λ`.
///
/// With `μ = (n-M, 1^M)`: `(K_{λ,μ} + K_{λ',μ}) / d_λ` for the alternating
/// variant, `(K_{λ,μ} - K_{λ',μ}) / d_λ` for its odd coset and `K_{λ,μ} / d_λ`
/// for the symmetric one. When at most one point is left free the alternating
/// variant is the point mass at the identity and every coefficient is 1.
pub fn xi_fourier(lambda: &Partition, params: &XiParams) -> Result<BigRational> {
    xi_fourier_with(&mut CharacterTable::new(), lambda, params)
}

pub fn xi_fourier_with(table: &mut CharacterTable, lambda: &Partition, params: &XiParams) -> Result<BigRational> {
    let XiParams { n, m, variant } = *params;
    if lambda.size() != n {
        return param(format!("{lambda} is not a partition of {n}"));
    }
    if variant == XiVariant::Alternating && n - m < 2 {
        return Ok(BigRational::from_integer(1.into()));
    }
    let free = n - m;
    if lambda.first_row() < free && lambda.len() < free {
        return Ok(BigRational::zero());
    }
    let mut dim = |p: &Partition| table.dimension(p).clone();
    let k = BigInt::from(kostka_hook_with(lambda, n, m, &mut dim)?);
    let numer = match variant {
        XiVariant::Symmetric => k,
        XiVariant::Alternating | XiVariant::Complement => {
            let kc = BigInt::from(kostka_hook_with(&lambda.conjugate(), n, m, &mut dim)?);
            if variant == XiVariant::Alternating { k + kc } else { k - kc }
        }
    };
    let d = BigInt::from(table.dimension(lambda).clone());
    Ok(BigRational::new(numer, d))
}

fn mix_fourier(
    table: &mut CharacterTable,
    lambda: &Partition,
    n: usize,
    weights: &[f64],
    variant: XiVariant,
) -> Result<f64> {
    let mut acc = crate::sum::Neumaier::default();
    for (m, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let coeff = xi_fourier_with(table, lambda, &XiParams { n, m, variant })?;
        acc.add(w * coeff.to_f64().unwrap_or(f64::NAN));
    }
    Ok(acc.value())
}

/// `ν(λ) = Σ_M w_M ξ_M(λ)`.
pub fn nu_fourier(lambda: &Partition, params: &NuParams) -> Result<f64> {
    nu_fourier_with(&mut CharacterTable::new(), lambda, params)
}

pub fn nu_fourier_with(table: &mut CharacterTable, lambda: &Partition, params: &NuParams) -> Result<f64> {
    mix_fourier(table, lambda, params.n(), &params.weights(), params.variant())
}

/// `ν^sym(λ) = Σ_M w_M ξ_M^sym(λ)`.
pub fn nu_sym_fourier(lambda: &Partition, params: &NuParams) -> Result<f64> {
    let mut table = CharacterTable::new();
    mix_fourier(&mut table, lambda, params.n(), &params.sym_weights(), XiVariant::Symmetric)
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn pmf_guard(n: usize) -> Result<()> {
    if n > EXACT_MAX_N {
        return Err(Error::SizeLimit { what: "exact probability mass", size: n, limit: EXACT_MAX_N });
    }
    Ok(())
}

/// `ξ_M(σ)`: the set-aside set must lie inside the fixed points of `σ`.
pub fn xi_pmf(sigma: &Permutation, params: &XiParams) -> Result<f64> {
    pmf_guard(params.n)?;
    if sigma.len() != params.n {
        return param(format!("permutation of {} points, expected {}", sigma.len(), params.n));
    }
    Ok(xi_pmf_unchecked(sigma.fixed_point_count(), sigma.parity(), params))
}

fn xi_pmf_unchecked(fixed: usize, parity: Parity, params: &XiParams) -> f64 {
    let XiParams { n, m, variant } = *params;
    let free = n - m;
    let class = match variant.parity() {
        Some(want) if want != parity => return 0.0,
        Some(_) if free >= 2 => factorial(free) as f64 / 2.0,
        Some(_) => 1.0,
        None => factorial(free) as f64,
    };
    binomial_f64(fixed, m) / binomial_f64(n, m) / class
}

fn mix_pmf(sigma: &Permutation, n: usize, weights: &[f64], variant: XiVariant) -> Result<f64> {
    pmf_guard(n)?;
    if sigma.len() != n {
        return param(format!("permutation of {} points, expected {n}", sigma.len()));
    }
    let fixed = sigma.fixed_point_count();
    let parity = sigma.parity();
    Ok(neumaier_sum(weights.iter().enumerate().map(|(m, &w)| {
        if w == 0.0 {
            0.0
        } else {
            w * xi_pmf_unchecked(fixed, parity, &XiParams { n, m, variant })
        }
    })))
}

pub fn nu_pmf(sigma: &Permutation, params: &NuParams) -> Result<f64> {
    mix_pmf(sigma, params.n(), &params.weights(), params.variant())
}

pub fn nu_sym_pmf(sigma: &Permutation, params: &NuParams) -> Result<f64> {
    mix_pmf(sigma, params.n(), &params.sym_weights(), XiVariant::Symmetric)
}

fn tabulate(n: usize, pmf: impl Fn(&Permutation) -> Result<f64>) -> Result<ExactDistribution> {
    pmf_guard(n)?;
    let mass = all_permutations(n).map(|p| pmf(&p)).collect::<Result<Vec<_>>>()?;
    Ok(ExactDistribution { n, mass })
}

pub fn nu_distribution(params: &NuParams) -> Result<ExactDistribution> {
    tabulate(params.n(), |p| nu_pmf(p, params))
}

pub fn nu_sym_distribution(params: &NuParams) -> Result<ExactDistribution> {
    tabulate(params.n(), |p| nu_sym_pmf(p, params))
}

pub fn xi_distribution(params: &XiParams) -> Result<ExactDistribution> {
    tabulate(params.n, |p| xi_pmf(p, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{character, partitions_of};
    use crate::perm::{label_pushforward, rank, DeckParams};
    use crate::rng::stream;
    use std::collections::BTreeMap;

    fn walk(n: usize, m: usize, k: usize, t: u64) -> WalkParams {
        WalkParams::new(DeckParams::new(n, m, n / m).unwrap(), k, t).unwrap()
    }

    fn nu(n: usize, k: usize, t: u64, cap: Cap) -> NuParams {
        NuParams::new(walk(n, 1, k, t), TPrime::Floored, cap).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// `Σ_σ P(σ) χ_λ(σ) / d_λ`, grouping the mass by cycle type first.
    fn direct_fourier(dist: &ExactDistribution, lambda: &Partition) -> f64 {
        let mut by_type: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for sigma in all_permutations(dist.n) {
            let mass = dist.prob(&sigma);
            if mass != 0.0 {
                *by_type.entry(sigma.cycle_type()).or_default() += mass;
            }
        }
        let d = crate::partitions::dimension(lambda).to_f64().unwrap();
        by_type
            .iter()
            .map(|(ct, mass)| mass * character(lambda, ct).unwrap().to_f64().unwrap() / d)
            .sum()
    }

    #[test]
    fn t_prime_conventions() {
        let floored = TPrime::Floored.of(10, 3, 20);
        let real = TPrime::Real.of(10, 3, 20);
        let shift = 10.0 * 10f64.ln() / 3.0;
        assert_eq!(floored, 20.0 - shift.floor());
        assert!((real - (20.0 - shift)).abs() < 1e-12);
        let params = nu(10, 3, 20, Cap::Full);
        assert_eq!(params.gamma, (-3.0 * params.t_prime / 10.0).exp());
    }

    #[test]
    fn cap_levels() {
        assert_eq!(Cap::Full.level(50), 50);
        assert_eq!(Cap::Log.level(50), 3);
        assert_eq!(Cap::Log.level(2), 0);
        assert!(NuParams::with_t_prime(walk(6, 1, 2, 0), 0.0, 7).is_err());
    }

    #[test]
    fn truncated_poisson_weights() {
        assert_eq!(truncated_poisson_pmf(1.0, 0), vec![1.0]);
        let w = truncated_poisson_pmf(2.0, 3);
        let raw = [1.0, 2.0, 2.0, 4.0 / 3.0];
        let z: f64 = raw.iter().sum();
        for (a, b) in w.iter().zip(raw) {
            assert!((a - b / z).abs() < 1e-15);
        }
        let huge = truncated_poisson_pmf(5000.0, 4096);
        assert!((huge.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(huge[4096], huge.iter().copied().fold(0.0, f64::max));
        let tiny = truncated_poisson_pmf(1e-300, 5);
        assert_eq!(tiny[0], 1.0);
    }

    #[test]
    fn truncated_poisson_sampler_examples() {
        let mut rng = stream(1, 0, 0);
        for _ in 0..1000 {
            assert_eq!(sample_truncated_poisson(1.0, 0, &mut rng).unwrap(), 0);
            assert_eq!(sample_truncated_poisson(1e-200, 8, &mut rng).unwrap(), 0);
        }
        assert!(sample_truncated_poisson(0.0, 3, &mut rng).is_err());
        assert!(sample_truncated_poisson(f64::NAN, 3, &mut rng).is_err());
    }

    #[test]
    fn truncated_poisson_mean() {
        let w = truncated_poisson_pmf(1.0, 10);
        let mean: f64 = w.iter().enumerate().map(|(x, p)| x as f64 * p).sum();
        let var: f64 = w.iter().enumerate().map(|(x, p)| (x as f64 - mean).powi(2) * p).sum();
        let draws = 200_000;
        let mut rng = stream(2, 0, 0);
        let total: usize = (0..draws).map(|_| sample_truncated_poisson(1.0, 10, &mut rng).unwrap()).sum();
        let se = (var / draws as f64).sqrt();
        assert!((total as f64 / draws as f64 - mean).abs() < 3.0 * se);
    }

    #[test]
    fn truncated_poisson_chi_square() {
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        let (gamma, cap) = (2.5, 6);
        let w = truncated_poisson_pmf(gamma, cap);
        let sampler = Categorical::new(&w).unwrap();
        let draws = 1_000_000;
        let mut counts = vec![0u64; cap + 1];
        let mut rng = stream(3, 0, 0);
        for _ in 0..draws {
            counts[sampler.sample(&mut rng)] += 1;
        }
        let stat: f64 = counts
            .iter()
            .zip(&w)
            .map(|(&o, &p)| {
                let e = p * draws as f64;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        let p_value = 1.0 - ChiSquared::new(cap as f64).unwrap().cdf(stat);
        assert!(p_value > 0.001, "chi-square {stat}, p = {p_value}");
    }

    #[test]
    fn categorical_skips_empty_atoms() {
        let c = Categorical::new(&[0.0, 0.5, 0.0, 0.5, 0.0]).unwrap();
        let mut rng = stream(4, 0, 0);
        for _ in 0..10_000 {
            let x = c.sample(&mut rng);
            assert!(x == 1 || x == 3);
        }
        assert!(Categorical::new(&[0.0, 0.0]).is_err());
        assert!(Categorical::new(&[]).is_err());
        assert!(Categorical::new(&[1.0, -0.5]).is_err());
    }

    #[test]
    fn odd_case_clamps_mass() {
        let params = nu(6, 2, 1, Cap::Full);
        assert_eq!(params.parity(), Parity::Odd);
        let w = params.weights();
        assert_eq!(w.len(), 5);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let raw = params.sym_weights();
        assert!((w[4] - raw[4] - raw[5] - raw[6]).abs() < 1e-15);
        let even = nu(6, 2, 2, Cap::Full);
        assert_eq!(even.weights(), even.sym_weights());
    }

    #[test]
    fn nu_parity_law() {
        let mut rng = stream(5, 0, 0);
        for (n, k, t) in [(7, 3, 4), (6, 2, 1), (6, 2, 2), (9, 4, 3), (5, 5, 0)] {
            let params = nu(n, k, t, Cap::Full);
            let sampler = NuSampler::nu(&params).unwrap();
            for _ in 0..2000 {
                assert_eq!(sampler.sample(&mut rng).unwrap().parity(), params.parity());
            }
        }
    }

    #[test]
    fn nu_tiny_gamma_is_uniform_on_class() {
        let params = NuParams::with_t_prime(walk(4, 1, 3, 50), 100.0, 4).unwrap();
        let mut rng = stream(6, 0, 0);
        let mut counts = [0u32; 24];
        for _ in 0..12_000 {
            counts[rank(&sample_nu(&params, &mut rng).unwrap())] += 1;
        }
        for (r, &c) in counts.iter().enumerate() {
            let even = crate::perm::unrank(4, r).parity() == Parity::Even;
            if even {
                assert!((c as f64 - 1000.0).abs() < 4.0 * (1000.0f64 * 11.0 / 12.0).sqrt());
            } else {
                assert_eq!(c, 0);
            }
        }
    }

    #[test]
    fn nu_sym_full_set_aside_is_identity() {
        let params = NuParams::with_t_prime(walk(5, 1, 2, 0), -200.0, 5).unwrap();
        let mut rng = stream(7, 0, 0);
        for _ in 0..100 {
            assert!(sample_nu_sym(&params, &mut rng).unwrap().is_identity());
        }
    }

    #[test]
    fn xi_fourier_examples() {
        let n = 6;
        for variant in [XiVariant::Alternating, XiVariant::Complement, XiVariant::Symmetric] {
            for m in 0..=n {
                let Ok(params) = XiParams::new(n, m, variant) else {
                    assert_eq!(variant, XiVariant::Complement);
                    continue;
                };
                assert_eq!(xi_fourier(&Partition::row(n), &params).unwrap(), BigRational::from_integer(1.into()));
            }
        }
        let c = XiParams::new(n, 0, XiVariant::Complement).unwrap();
        assert_eq!(xi_fourier(&Partition::column(n), &c).unwrap(), BigRational::from_integer((-1).into()));
        let a = XiParams::new(9, 2, XiVariant::Alternating).unwrap();
        assert!(xi_fourier(&p(&[3, 3, 3]), &a).unwrap().is_zero());
        assert!(xi_fourier(&p(&[3, 3]), &a).is_err());
    }

    #[test]
    fn xi_fourier_matches_direct_sum() {
        for n in 2..=6 {
            for m in 0..=n {
                for variant in [XiVariant::Alternating, XiVariant::Complement, XiVariant::Symmetric] {
                    let Ok(params) = XiParams::new(n, m, variant) else { continue };
                    let dist = xi_distribution(&params).unwrap();
                    assert!((dist.total() - 1.0).abs() < 1e-12);
                    for lambda in partitions_of(n) {
                        let exact = xi_fourier(&lambda, &params).unwrap().to_f64().unwrap();
                        let direct = direct_fourier(&dist, &lambda);
                        assert!((exact - direct).abs() < 1e-12, "{lambda} {params:?}: {exact} vs {direct}");
                    }
                }
            }
        }
    }

    #[test]
    fn nu_fourier_matches_direct_sum() {
        for (k, t) in [(3, 0), (3, 5), (3, 9), (2, 7), (2, 8), (4, 3), (6, 2)] {
            for cap in [Cap::Full, Cap::Log] {
                let params = nu(7, k, t, cap);
                let dist = nu_distribution(&params).unwrap();
                let sym = nu_sym_distribution(&params).unwrap();
                for lambda in partitions_of(7) {
                    let a = nu_fourier(&lambda, &params).unwrap();
                    assert!((a - direct_fourier(&dist, &lambda)).abs() < 1e-10, "{lambda} k={k} t={t}");
                    let b = nu_sym_fourier(&lambda, &params).unwrap();
                    assert!((b - direct_fourier(&sym, &lambda)).abs() < 1e-10, "{lambda} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn nu_fourier_low_depth_closed_forms() {
        let n = 50;
        let params = nu(n, 3, 100, Cap::Log);
        let w = params.weights();
        let moment = |f: fn(f64) -> f64| -> f64 { w.iter().enumerate().map(|(m, p)| p * f(m as f64)).sum() };
        let one = nu_fourier(&p(&[n - 1, 1]), &params).unwrap();
        assert!((one - moment(|m| m) / (n - 1) as f64).abs() < 1e-14);
        let two = nu_fourier(&p(&[n - 2, 2]), &params).unwrap();
        let expect = moment(|m| m * (m - 1.0)) / (n * (n - 3)) as f64;
        assert!((two - expect).abs() < 1e-14);
        assert_eq!(nu_fourier(&Partition::row(n), &params).unwrap(), 1.0);
        assert_eq!(nu_fourier(&p(&[10; 5]), &params).unwrap(), 0.0);
    }

    #[test]
    fn nu_pmf_normalization_and_parity() {
        for n in 2..=8 {
            for (k, t) in [(2, 1), (2, 2), (3, 4), (n, 3)] {
                if k > n {
                    continue;
                }
                for cap in [Cap::Full, Cap::Log] {
                    let params = nu(n, k, t, cap);
                    let dist = nu_distribution(&params).unwrap();
                    assert!((dist.total() - 1.0).abs() < 1e-12);
                    for (r, &mass) in dist.mass.iter().enumerate() {
                        if crate::perm::unrank(n, r).parity() != params.parity() {
                            assert_eq!(mass, 0.0);
                        }
                    }
                    assert!((nu_sym_distribution(&params).unwrap().total() - 1.0).abs() < 1e-12);
                }
            }
        }
        assert!(nu_pmf(&Permutation::identity(9), &nu(9, 3, 1, Cap::Full)).is_err());
    }

    #[test]
    fn nu_sampler_matches_pmf() {
        let params = nu(6, 2, 2, Cap::Full);
        let dist = nu_distribution(&params).unwrap();
        let draws = 1_000_000u32;
        let mut counts = vec![0u32; 720];
        let mut rng = stream(8, 0, 0);
        let sampler = NuSampler::nu(&params).unwrap();
        for _ in 0..draws {
            counts[rank(&sampler.sample(&mut rng).unwrap())] += 1;
        }
        // The law is a class function, so compare cycle-type frequencies.
        let mut by_type: BTreeMap<Vec<usize>, (f64, f64)> = BTreeMap::new();
        for sigma in all_permutations(6) {
            let e = by_type.entry(sigma.cycle_type()).or_default();
            e.0 += dist.prob(&sigma);
            e.1 += counts[rank(&sigma)] as f64 / draws as f64;
        }
        for (ct, (p, freq)) in by_type {
            let se = (p * (1.0 - p) / draws as f64).sqrt();
            assert!((freq - p).abs() <= 3.0 * se, "{ct:?}: {freq} vs {p}");
        }
    }

    /// Mass of set-aside sizes whose free positions are at most one per card type,
    /// where no transposition inside one type can swap the two parity classes.
    fn unpaired_mass(params: &NuParams, deck: &DeckParams) -> f64 {
        let n = params.n();
        let mut total = 0.0;
        for (m, &w) in params.weights().iter().enumerate() {
            let free = n - m;
            if free < 2 {
                continue;
            }
            let mut bad = 0.0;
            for subset in 0u32..(1 << n) {
                if subset.count_ones() as usize != m {
                    continue;
                }
                let mut seen = vec![0; deck.m];
                (0..n).filter(|i| subset & (1 << i) == 0).for_each(|i| seen[deck.card_type(i)] += 1);
                if seen.iter().all(|&c| c <= 1) {
                    bad += 1.0;
                }
            }
            total += w * bad / binomial_f64(n, m);
        }
        total
    }

    #[test]
    fn quotient_identity() {
        for (n, m) in [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4)] {
            let deck = DeckParams::new(n, m, n / m).unwrap();
            for (k, t) in [(2, 3), (2, 4), (3, 2), (4, 5)] {
                for cap in [Cap::Log, Cap::Full] {
                    let w = WalkParams::new(deck, k, t).unwrap();
                    let params = NuParams::new(w, TPrime::Floored, cap).unwrap();
                    let a = label_pushforward(&nu_distribution(&params).unwrap(), &deck).unwrap();
                    let b = label_pushforward(&nu_sym_distribution(&params).unwrap(), &deck).unwrap();
                    let tv: f64 = a.iter().map(|(key, pa)| (pa - b[key]).abs()).sum::<f64>() / 2.0;
                    let bound = unpaired_mass(&params, &deck);
                    if cap == Cap::Log {
                        assert_eq!(bound, 0.0);
                    }
                    assert!(tv <= bound + 1e-12, "n={n} m={m} k={k} t={t} {cap:?}: {tv} > {bound}");
                }
            }
        }
    }

    #[test]
    fn nu_sym_sampler_quotient_matches_nu() {
        let deck = DeckParams::new(8, 2, 4).unwrap();
        let w = WalkParams::new(deck, 3, 5).unwrap();
        let params = NuParams::new(w, TPrime::Floored, Cap::Log).unwrap();
        let draws = 200_000;
        let mut rng = stream(9, 0, 0);
        let mut hist = |s: &NuSampler| {
            let mut h = vec![0.0; 9];
            for _ in 0..draws {
                let p = s.sample(&mut rng).unwrap();
                h[crate::perm::quotient_fixed_points(&p, &deck).len()] += 1.0 / draws as f64;
            }
            h
        };
        let a = hist(&NuSampler::nu(&params).unwrap());
        let b = hist(&NuSampler::nu_sym(&params).unwrap());
        let tv: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0;
        assert!(tv < 0.01, "{tv}");
    }
}
