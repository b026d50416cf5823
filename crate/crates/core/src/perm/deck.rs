use crate::error::{param, Result};

use super::Permutation;

/// A deck of `n = m·l` cards: `m` types, `l` copies of each.
///
/// Position `i` holds a card of type `i mod m`, so type block `j` is
/// `{j, j + m, …, j + (l-1)m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeckParams {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl DeckParams {
    pub fn new(n: usize, m: usize, l: usize) -> Result<Self> {
        if m == 0 || l == 0 {
            return param(format!("deck needs m ≥ 1 and l ≥ 1 (got m={m}, l={l})"));
        }
        if m.checked_mul(l) != Some(n) {
            return param(format!("deck size n={n} must equal m·l = {m}·{l}"));
        }
        Ok(DeckParams { n, m, l })
    }

    /// `m` types with `l` copies each.
    pub fn with_types(m: usize, l: usize) -> Result<Self> {
        match m.checked_mul(l) {
            Some(n) => DeckParams::new(n, m, l),
            None => param("deck size overflows"),
        }
    }

    pub fn card_type(&self, position: usize) -> usize {
        position % self.m
    }

    /// Positions of type block `j`.
    pub fn block(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.l).map(move |c| j + c * self.m)
    }

    fn check(&self, p: &Permutation) {
        assert_eq!(
            p.len(),
            self.n,
            "permutation of size {} used with a deck of {} cards",
            p.len(),
            self.n
        );
    }
}

/// `F(σ) = {i : σ(i) ≡ i (mod m)}`, in increasing order.
pub fn quotient_fixed_points(p: &Permutation, deck: &DeckParams) -> Vec<usize> {
    deck.check(p);
    (0..deck.n)
        .filter(|&i| p.apply(i) % deck.m == i % deck.m)
        .collect()
}

/// True when some type block holds two or more quotient fixed points.
pub fn is_clustered(p: &Permutation, deck: &DeckParams) -> bool {
    deck.check(p);
    let mut per_block = vec![0u32; deck.m];
    for i in 0..deck.n {
        if p.apply(i) % deck.m == i % deck.m {
            let b = &mut per_block[i % deck.m];
            *b += 1;
            if *b >= 2 {
                return true;
            }
        }
    }
    false
}

/// The coset label `w[i] = σ(i) mod m`; two permutations share a left coset of
/// the type-preserving subgroup exactly when their labels agree.
pub fn quotient_label(p: &Permutation, deck: &DeckParams) -> Vec<u16> {
    deck.check(p);
    p.images().iter().map(|&x| (x % deck.m) as u16).collect()
}
