use rand::seq::SliceRandom;
use rand::Rng;

use super::{DeckParams, Parity, Permutation};
use crate::error::{param, Error, Result};

/// `t` steps of the uniform k-cycle walk on a deck.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkParams {
    pub deck: DeckParams,
    pub k: usize,
    pub t: u64,
}

impl WalkParams {
    pub fn new(deck: DeckParams, k: usize, t: u64) -> Result<Self> {
        check_k(deck.n, k)?;
        Ok(WalkParams { deck, k, t })
    }

    pub fn n(&self) -> usize {
        self.deck.n
    }

    /// Parity class the walk lives in after `t` steps.
    pub fn parity(&self) -> Parity {
        Parity::of_cycle(self.k).pow(self.t)
    }

    pub fn with_t(&self, t: u64) -> WalkParams {
        WalkParams { t, ..*self }
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return param(format!("cycle length k={k} must satisfy 2 ≤ k ≤ n={n}"));
    }
    Ok(())
}

/// Draws uniform k-cycles with a reusable scratch buffer.
///
/// The cycle is read off a Fisher–Yates prefix: `k` distinct positions are
/// drawn in order and cycled `p0 → p1 → … → p(k-1) → p0`. Each k-cycle arises
/// from exactly `k` ordered tuples, so it has probability `k / n(n-1)…(n-k+1)`.
#[derive(Debug, Clone)]
pub struct CycleSampler {
    scratch: Vec<u32>,
    swaps: Vec<u32>,
}

impl CycleSampler {
    pub fn new(n: usize) -> Self {
        CycleSampler {
            scratch: (0..n as u32).collect(),
            swaps: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.scratch.len()
    }

    /// Returns the ordered cycle points. The slice is valid until the next call.
    pub fn draw<R: Rng + ?Sized>(&mut self, k: usize, rng: &mut R) -> &[u32] {
        let n = self.scratch.len();
        debug_assert!(k >= 2 && k <= n);
        // Undo the previous draw so the scratch is the identity again.
        for (j, &r) in self.swaps.iter().enumerate().rev() {
            self.scratch.swap(j, r as usize);
        }
        self.swaps.clear();
        for j in 0..k {
            let r = rng.random_range(j..n);
            self.scratch.swap(j, r);
            self.swaps.push(r as u32);
        }
        &self.scratch[..k]
    }
}

/// A uniformly random k-cycle on `{0, …, n-1}`.
pub fn sample_k_cycle<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Permutation> {
    check_k(n, k)?;
    let mut sampler = CycleSampler::new(n);
    Ok(cycle_from_points(n, sampler.draw(k, rng)))
}

fn cycle_from_points(n: usize, points: &[u32]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (j, &p) in points.iter().enumerate() {
        images[p as usize] = points[(j + 1) % points.len()] as usize;
    }
    Permutation::from_images_unchecked(images)
}

/// State of one walk chain.
///
/// The chain keeps `σ⁻¹` rather than `σ`: left-multiplying `σ` by a k-cycle
/// `c` right-multiplies `σ⁻¹` by `c⁻¹`, which only rotates `k` entries.
#[derive(Debug, Clone)]
pub struct WalkChain {
    inv: Vec<u32>,
    sampler: CycleSampler,
    steps: u64,
}

impl WalkChain {
    pub fn new(n: usize) -> Self {
        WalkChain {
            inv: (0..n as u32).collect(),
            sampler: CycleSampler::new(n),
            steps: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// One step `σ ← c ∘ σ` with `c` a uniform k-cycle.
    pub fn step<R: Rng + ?Sized>(&mut self, k: usize, rng: &mut R) {
        let pts = self.sampler.draw(k, rng);
        // σ⁻¹(p_{j+1}) ← σ⁻¹(p_j), cyclically.
        let last = self.inv[pts[k - 1] as usize];
        for j in (1..k).rev() {
            self.inv[pts[j] as usize] = self.inv[pts[j - 1] as usize];
        }
        self.inv[pts[0] as usize] = last;
        self.steps += 1;
    }

    pub fn advance_to<R: Rng + ?Sized>(&mut self, k: usize, t: u64, rng: &mut R) {
        while self.steps < t {
            self.step(k, rng);
        }
    }

    /// `|F(σ)|`. Counting over `y = σ(x)` gives the same number as over `x`.
    pub fn quotient_fixed_point_count(&self, m: usize) -> usize {
        self.inv
            .iter()
            .enumerate()
            .filter(|&(y, &x)| x as usize % m == y % m)
            .count()
    }

    /// Whether some type block holds two quotient fixed points. `blocks` is
    /// scratch space of length `m`.
    pub fn is_clustered(&self, m: usize, blocks: &mut [u32]) -> bool {
        blocks.fill(0);
        for (y, &x) in self.inv.iter().enumerate() {
            let x = x as usize;
            if x % m == y % m {
                let b = &mut blocks[x % m];
                *b += 1;
                if *b >= 2 {
                    return true;
                }
            }
        }
        false
    }

    pub fn permutation(&self) -> Permutation {
        let mut images = vec![0; self.inv.len()];
        for (y, &x) in self.inv.iter().enumerate() {
            images[x as usize] = y;
        }
        Permutation::from_images_unchecked(images)
    }
}

/// `c_t ∘ … ∘ c_1` for independent uniform k-cycles `c_i`.
pub fn run_walk<R: Rng + ?Sized>(params: &WalkParams, rng: &mut R) -> Result<Permutation> {
    check_k(params.n(), params.k)?;
    let mut chain = WalkChain::new(params.n());
    chain.advance_to(params.k, params.t, rng);
    Ok(chain.permutation())
}

/// A uniform permutation of the positions in `subset`, extended by the
/// identity to `{0, …, n-1}`, optionally restricted to one parity.
///
/// A draw of the wrong parity is corrected by swapping the images of the two
/// smallest elements of `subset`; this pairs the two parity classes one to one.
pub fn sample_uniform_on_subset<R: Rng + ?Sized>(
    n: usize,
    subset: &[usize],
    parity: Option<Parity>,
    rng: &mut R,
) -> Result<Permutation> {
    let mut points = subset.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.len() != subset.len() || points.last().is_some_and(|&x| x >= n) {
        return param(format!("subset {subset:?} is not a set of positions in 0..{n}"));
    }
    let s = points.len();
    if parity == Some(Parity::Odd) && s < 2 {
        return Err(Error::UnsatisfiableParity(s));
    }
    let mut local: Vec<usize> = (0..s).collect();
    local.shuffle(rng);
    if let Some(want) = parity {
        if s >= 2 && local_parity(&local) != want {
            local.swap(0, 1);
        }
    }
    let mut images: Vec<usize> = (0..n).collect();
    for (i, &j) in local.iter().enumerate() {
        images[points[i]] = points[j];
    }
    Ok(Permutation::from_images_unchecked(images))
}

fn local_parity(images: &[usize]) -> Parity {
    let mut seen = vec![false; images.len()];
    let mut transpositions = 0;
    for start in 0..images.len() {
        let mut x = start;
        let mut len = 0usize;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        transpositions += len.saturating_sub(1);
    }
    Parity::from_transpositions(transpositions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{exact_walk_distribution, rank};
    use crate::rng::stream;
    use std::collections::HashMap;

    fn deck(n: usize) -> DeckParams {
        DeckParams::new(n, n, 1).unwrap()
    }

    #[test]
    fn k_bounds_are_checked() {
        let mut rng = stream(1, 0, 0);
        assert!(sample_k_cycle(5, 1, &mut rng).is_err());
        assert!(sample_k_cycle(5, 6, &mut rng).is_err());
        assert!(WalkParams::new(deck(3), 4, 1).is_err());
    }

    #[test]
    fn two_cycle_on_two_points_is_the_swap() {
        let mut rng = stream(2, 0, 0);
        for _ in 0..20 {
            assert_eq!(sample_k_cycle(2, 2, &mut rng).unwrap().images(), &[1, 0]);
        }
    }

    #[test]
    fn k_cycle_has_the_right_shape() {
        let mut rng = stream(3, 0, 0);
        for (n, k) in [(10, 2), (10, 3), (10, 7), (10, 10), (50, 13)] {
            for _ in 0..50 {
                let c = sample_k_cycle(n, k, &mut rng).unwrap();
                let mut expected = vec![k];
                expected.extend(std::iter::repeat_n(1, n - k));
                assert_eq!(c.cycle_type(), expected);
            }
        }
    }

    // Chi-square style check: every outcome within 5 standard errors of its
    // expected frequency.
    fn assert_uniform_over<K: std::hash::Hash + Eq + std::fmt::Debug>(
        counts: &HashMap<K, u64>,
        outcomes: usize,
        draws: u64,
    ) {
        assert_eq!(counts.len(), outcomes, "support size");
        let p = 1.0 / outcomes as f64;
        let se = (draws as f64 * p * (1.0 - p)).sqrt();
        for (key, &c) in counts {
            let z = (c as f64 - draws as f64 * p) / se;
            assert!(z.abs() < 5.0, "{key:?}: count {c}, z = {z}");
        }
    }

    #[test]
    fn three_cycles_on_four_points_are_uniform() {
        let mut rng = stream(4, 0, 0);
        let draws = 80_000;
        let mut counts = HashMap::new();
        for _ in 0..draws {
            *counts.entry(sample_k_cycle(4, 3, &mut rng).unwrap()).or_insert(0) += 1;
        }
        // 4!/(3·1!) = 8 distinct 3-cycles.
        assert_uniform_over(&counts, 8, draws);
    }

    #[test]
    fn full_cycles_are_uniform() {
        let mut rng = stream(5, 0, 0);
        let draws = 60_000;
        let mut counts = HashMap::new();
        for _ in 0..draws {
            *counts.entry(sample_k_cycle(5, 5, &mut rng).unwrap()).or_insert(0) += 1;
        }
        assert_uniform_over(&counts, 24, draws);
    }

    #[test]
    fn walk_at_time_zero_is_identity() {
        let mut rng = stream(6, 0, 0);
        let p = WalkParams::new(deck(6), 3, 0).unwrap();
        assert!(run_walk(&p, &mut rng).unwrap().is_identity());
    }

    #[test]
    fn walk_matches_explicit_product_of_cycles() {
        let p = WalkParams::new(DeckParams::with_types(3, 3).unwrap(), 4, 25).unwrap();
        let fast = run_walk(&p, &mut stream(7, 0, 0)).unwrap();
        let mut rng = stream(7, 0, 0);
        let mut sampler = CycleSampler::new(9);
        let mut slow = Permutation::identity(9);
        for _ in 0..p.t {
            let c = cycle_from_points(9, sampler.draw(p.k, &mut rng));
            slow = c.compose(&slow).unwrap();
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn walk_parity_is_deterministic() {
        let mut rng = stream(8, 0, 0);
        for (n, k, t) in [(5, 2, 3), (7, 2, 4), (7, 3, 5), (9, 4, 7), (9, 5, 2)] {
            let p = WalkParams::new(deck(n), k, t).unwrap();
            for _ in 0..100 {
                assert_eq!(run_walk(&p, &mut rng).unwrap().parity(), p.parity());
            }
        }
        let p = WalkParams::new(deck(5), 2, 3).unwrap();
        assert_eq!(p.parity(), Parity::Odd);
    }

    #[test]
    fn walk_frequencies_match_exact_convolution() {
        let p = WalkParams::new(deck(4), 3, 2).unwrap();
        let exact = exact_walk_distribution(&p).unwrap();
        let draws = 200_000u64;
        let mut counts = [0u64; 24];
        let mut rng = stream(9, 0, 0);
        for _ in 0..draws {
            counts[rank(&run_walk(&p, &mut rng).unwrap())] += 1;
        }
        for (r, &c) in counts.iter().enumerate() {
            let q = exact.mass[r];
            let se = (draws as f64 * q * (1.0 - q)).sqrt().max(1.0);
            assert!(
                (c as f64 - draws as f64 * q).abs() <= 4.0 * se,
                "rank {r}: {c} vs {}",
                draws as f64 * q
            );
        }
    }

    #[test]
    fn chain_fixed_point_count_matches_permutation() {
        let d = DeckParams::with_types(5, 3).unwrap();
        let mut rng = stream(10, 0, 0);
        let mut chain = WalkChain::new(d.n);
        let mut blocks = vec![0; d.m];
        for _ in 0..40 {
            chain.step(2, &mut rng);
            let p = chain.permutation();
            assert_eq!(
                chain.quotient_fixed_point_count(d.m),
                crate::perm::quotient_fixed_points(&p, &d).len()
            );
            assert_eq!(chain.is_clustered(d.m, &mut blocks), crate::perm::is_clustered(&p, &d));
        }
    }

    #[test]
    fn subset_sampler_edge_cases() {
        let mut rng = stream(12, 0, 0);
        assert!(sample_uniform_on_subset(5, &[], None, &mut rng).unwrap().is_identity());
        assert!(sample_uniform_on_subset(5, &[3], Some(Parity::Even), &mut rng)
            .unwrap()
            .is_identity());
        assert_eq!(
            sample_uniform_on_subset(5, &[3], Some(Parity::Odd), &mut rng),
            Err(Error::UnsatisfiableParity(1))
        );
        for _ in 0..10 {
            let p = sample_uniform_on_subset(5, &[4, 1], Some(Parity::Odd), &mut rng).unwrap();
            assert_eq!(p, Permutation::transposition(5, 1, 4).unwrap());
        }
        assert!(sample_uniform_on_subset(5, &[1, 1], None, &mut rng).is_err());
        assert!(sample_uniform_on_subset(5, &[7], None, &mut rng).is_err());
    }

    #[test]
    fn even_permutations_of_three_points_are_uniform() {
        let mut rng = stream(13, 0, 0);
        let draws = 60_000;
        let mut counts = HashMap::new();
        for _ in 0..draws {
            let p = sample_uniform_on_subset(6, &[0, 2, 5], Some(Parity::Even), &mut rng).unwrap();
            assert_eq!(p.parity(), Parity::Even);
            for i in [1, 3, 4] {
                assert_eq!(p.apply(i), i);
            }
            *counts.entry(p).or_insert(0) += 1;
        }
        assert_uniform_over(&counts, 3, draws);
    }

    #[test]
    fn odd_and_unconstrained_subset_draws_are_uniform() {
        let mut rng = stream(14, 0, 0);
        let draws = 96_000;
        let mut odd = HashMap::new();
        let mut all = HashMap::new();
        for _ in 0..draws {
            let p = sample_uniform_on_subset(7, &[6, 0, 3, 4], Some(Parity::Odd), &mut rng).unwrap();
            assert_eq!(p.parity(), Parity::Odd);
            *odd.entry(p).or_insert(0) += 1;
            let q = sample_uniform_on_subset(7, &[6, 0, 3, 4], None, &mut rng).unwrap();
            *all.entry(q).or_insert(0) += 1;
        }
        assert_uniform_over(&odd, 12, draws);
        assert_uniform_over(&all, 24, draws);
    }
}
