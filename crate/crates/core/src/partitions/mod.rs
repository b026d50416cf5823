//! Partitions of `n` and the exact representation theory of `S_n` they index.

mod characters;
mod dimension;
mod kostka;

use std::fmt;

use crate::error::{param, Result};

pub use characters::{
    character, character_on_k_cycle, character_ratio, main_term, main_term_in_regime,
    small_r_asymptote, CharacterRatio, CharacterTable,
};
pub use dimension::{binomial, dimension, hook_lengths};
pub use kostka::{kostka_brute, kostka_hook, skew_row_tableaux, KOSTKA_BRUTE_MAX_N};
pub(crate) use kostka::kostka_hook_with;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return param(format!("partition {parts:?} has a zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return param(format!("partition {parts:?} is not weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(n - M, 1^M)`, read as `(1^n)` when `M ≥ n - 1`.
    pub fn hook(n: usize, m: usize) -> Self {
        assert!(m <= n, "hook leg {m} longer than n = {n}");
        let mut parts = Vec::with_capacity(m + 1);
        if n - m > 0 {
            parts.push(n - m);
        }
        parts.extend(std::iter::repeat_n(1, m));
        Partition::from_unsorted(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` with 0-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first_row(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_row();
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// `λ*`: drop the first row.
    pub fn truncate_star(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// `λ•`: drop the first column.
    pub fn truncate_bullet(&self) -> Partition {
        Partition {
            parts: self.parts.iter().filter(|&&p| p > 1).map(|p| p - 1).collect(),
        }
    }

    /// Number of boxes on the main diagonal.
    pub fn diagonal_length(&self) -> usize {
        self.parts.iter().enumerate().take_while(|&(i, &p)| p > i).count()
    }

    pub fn frobenius(&self) -> FrobeniusCoords {
        let d = self.diagonal_length();
        let conj = self.conjugate();
        let arms = (0..d).map(|i| 2 * (self.part(i) as i64 - i as i64) - 1).collect();
        let legs = (0..d).map(|i| 2 * (conj.part(i) as i64 - i as i64) - 1).collect();
        FrobeniusCoords {
            doubled_arms: arms,
            doubled_legs: legs,
        }
    }

    /// `r = n - λ_1`.
    pub fn depth(&self) -> usize {
        self.size() - self.first_row()
    }

    /// Whether this partition has a long first row or a long first column:
    /// `λ_1 ≥ n - ln n` or `l(λ) ≥ n - ln n`.
    pub fn in_long_set(&self) -> bool {
        let n = self.size() as f64;
        if n == 0.0 {
            return true;
        }
        let threshold = n - n.ln();
        self.first_row() as f64 >= threshold || self.len() as f64 >= threshold
    }

    /// Dominance order: `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

/// Membership in the long-first-row-or-column set for a partition of `n`.
pub fn in_long_set(lambda: &Partition, n: usize) -> bool {
    assert_eq!(lambda.size(), n);
    lambda.in_long_set()
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Frobenius coordinates `(a_1,…,a_d | b_1,…,b_d)` with `a_i = λ_i - i + ½`
/// and `b_i = λ'_i - i + ½`, stored doubled so they are odd integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCoords {
    pub doubled_arms: Vec<i64>,
    pub doubled_legs: Vec<i64>,
}

impl FrobeniusCoords {
    pub fn diagonal_length(&self) -> usize {
        self.doubled_arms.len()
    }

    pub fn arms(&self) -> Vec<f64> {
        self.doubled_arms.iter().map(|&a| a as f64 / 2.0).collect()
    }

    pub fn legs(&self) -> Vec<f64> {
        self.doubled_legs.iter().map(|&b| b as f64 / 2.0).collect()
    }
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
