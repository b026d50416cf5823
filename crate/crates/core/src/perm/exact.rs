//! Brute-force distributions on small symmetric groups.

use std::collections::BTreeMap;

use super::{quotient_label, DeckParams, Parity, Permutation, WalkParams};
use crate::error::{Error, Result};

/// Largest `n` for which a distribution over all of `S_n` is materialized.
pub const EXACT_MAX_N: usize = 8;
/// Largest `n` for which distributions over coset labels are materialized.
pub const LABEL_MAX_N: usize = 10;

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation (Lehmer code).
pub fn rank(p: &Permutation) -> usize {
    let v = p.images();
    let n = v.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = v[i + 1..].iter().filter(|&&x| x < v[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

pub fn unrank(n: usize, mut r: usize) -> Permutation {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let images = digits.into_iter().map(|d| pool.remove(d)).collect();
    Permutation::from_images_unchecked(images)
}

/// Every permutation of `{0, …, n-1}`, in rank order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..factorial(n)).map(move |r| unrank(n, r))
}

/// A probability mass on `S_n`, indexed by [`rank`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    pub n: usize,
    pub mass: Vec<f64>,
}

impl ExactDistribution {
    pub fn point_mass(p: &Permutation) -> Result<Self> {
        guard(p.len())?;
        let mut mass = vec![0.0; factorial(p.len())];
        mass[rank(p)] = 1.0;
        Ok(ExactDistribution { n: p.len(), mass })
    }

    pub fn prob(&self, p: &Permutation) -> f64 {
        self.mass[rank(p)]
    }

    pub fn total(&self) -> f64 {
        crate::sum::neumaier_sum(self.mass.iter().copied())
    }
}

fn guard(n: usize) -> Result<()> {
    if n > EXACT_MAX_N {
        return Err(Error::SizeLimit {
            what: "exact distribution over S_n",
            size: n,
            limit: EXACT_MAX_N,
        });
    }
    Ok(())
}

/// All k-cycles on `n` points, each listed once (smallest point first).
fn all_k_cycles(n: usize, k: usize) -> Vec<Permutation> {
    fn extend(n: usize, k: usize, pts: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if pts.len() == k {
            out.push(Permutation::cycle(n, pts).expect("distinct points"));
            return;
        }
        for x in pts[0] + 1..n {
            if !used[x] {
                used[x] = true;
                pts.push(x);
                extend(n, k, pts, used, out);
                pts.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    for first in 0..n {
        let mut used = vec![false; n];
        used[first] = true;
        extend(n, k, &mut vec![first], &mut used, &mut out);
    }
    out
}

/// The law of the walk after `t` steps, by iterated convolution over `S_n`.
pub fn exact_walk_distribution(params: &WalkParams) -> Result<ExactDistribution> {
    let n = params.n();
    guard(n)?;
    WalkParams::new(params.deck, params.k, params.t)?;
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let cycles = all_k_cycles(n, params.k);
    let step = 1.0 / cycles.len() as f64;
    let mut mass = vec![0.0; perms.len()];
    mass[0] = 1.0;
    for _ in 0..params.t {
        let mut next = vec![0.0; perms.len()];
        for (r, &q) in mass.iter().enumerate() {
            if q == 0.0 {
                continue;
            }
            for c in &cycles {
                let moved = c.compose(&perms[r]).expect("equal sizes");
                next[rank(&moved)] += q * step;
            }
        }
        mass = next;
    }
    Ok(ExactDistribution { n, mass })
}

/// Uniform mass on the even or odd permutations of `S_n` (`n ≥ 2`).
pub fn uniform_on_parity_class(n: usize, parity: Parity) -> Result<ExactDistribution> {
    guard(n)?;
    if n < 2 {
        return crate::error::param("parity classes need n ≥ 2");
    }
    let w = 2.0 / factorial(n) as f64;
    let mass = all_permutations(n)
        .map(|p| if p.parity() == parity { w } else { 0.0 })
        .collect();
    Ok(ExactDistribution { n, mass })
}

/// Push a distribution on `S_n` forward to coset labels.
pub fn label_pushforward(dist: &ExactDistribution, deck: &DeckParams) -> Result<BTreeMap<Vec<u16>, f64>> {
    if dist.n != deck.n {
        return crate::error::param("distribution and deck sizes differ");
    }
    let mut out: BTreeMap<Vec<u16>, f64> = BTreeMap::new();
    for (r, &q) in dist.mass.iter().enumerate() {
        *out.entry(quotient_label(&unrank(dist.n, r), deck)).or_insert(0.0) += q;
    }
    Ok(out)
}

/// Uniform mass on all `n!/(l!)^m` coset labels.
pub fn uniform_on_labels(deck: &DeckParams) -> Result<BTreeMap<Vec<u16>, f64>> {
    if deck.n > LABEL_MAX_N {
        return Err(Error::SizeLimit {
            what: "distribution over coset labels",
            size: deck.n,
            limit: LABEL_MAX_N,
        });
    }
    fn fill(word: &mut Vec<u16>, left: &mut [usize], n: usize, out: &mut Vec<Vec<u16>>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for letter in 0..left.len() {
            if left[letter] > 0 {
                left[letter] -= 1;
                word.push(letter as u16);
                fill(word, left, n, out);
                word.pop();
                left[letter] += 1;
            }
        }
    }
    let mut words = Vec::new();
    fill(&mut Vec::new(), &mut vec![deck.l; deck.m], deck.n, &mut words);
    let w = 1.0 / words.len() as f64;
    Ok(words.into_iter().map(|word| (word, w)).collect())
}
