//! Permutations of `{0, …, n-1}`, the k-cycle walk and the repeated-card
//! quotient.
//!
//! A [`Permutation`] stores its images: `images[i]` is `σ(i)`. Composition is
//! right-to-left, `(a ∘ b)(i) = a(b(i))`, and the walk multiplies new steps on
//! the left.

mod deck;
mod exact;
mod walk;

use std::fmt;
use std::ops::Mul;

use crate::error::{param, Result};

pub use deck::{is_clustered, quotient_fixed_points, quotient_label, DeckParams};
pub use exact::{
    all_permutations, exact_walk_distribution, factorial, label_pushforward, rank,
    uniform_on_labels, uniform_on_parity_class, unrank, ExactDistribution, EXACT_MAX_N,
    LABEL_MAX_N,
};
pub use walk::{
    run_walk, sample_k_cycle, sample_uniform_on_subset, CycleSampler, WalkChain, WalkParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_transpositions(count: usize) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a single k-cycle, `(-1)^(k-1)`.
    pub fn of_cycle(k: usize) -> Parity {
        Parity::from_transpositions(k.saturating_sub(1))
    }

    /// Parity of `steps` factors each of parity `self`.
    pub fn pow(self, steps: u64) -> Parity {
        match self {
            Parity::Even => Parity::Even,
            Parity::Odd if steps.is_multiple_of(2) => Parity::Even,
            Parity::Odd => Parity::Odd,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// A bijection on `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return param(format!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::cycle(n, &[a, b])
    }

    /// The cycle `points[0] → points[1] → … → points[last] → points[0]`.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for &p in points {
            if p >= n || seen[p] {
                return param(format!("cycle points {points:?} are not distinct in 0..{n}"));
            }
            seen[p] = true;
        }
        for (j, &p) in points.iter().enumerate() {
            images[p] = points[(j + 1) % points.len()];
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return param(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            ));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    /// Cycle lengths in weakly decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycle_type().len();
        Parity::from_transpositions(self.len() - cycles)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .count()
    }
}

/// `a ∘ b`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn parity(p: &Permutation) -> Parity {
    p.parity()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}
