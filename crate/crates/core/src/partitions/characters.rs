//! Characters of `S_n` by the Murnaghan–Nakayama rule, character ratios on
//! k-cycles and the main-term product approximating them.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{dimension, Partition};
use crate::error::{param, Error, Result};

/// Every way to remove a border strip of `k` boxes from `λ`, with the sign
/// `(-1)^(rows spanned - 1)`.
///
/// Works on beta numbers `β_i = λ_i + (L - 1 - i)`: removing a strip moves one
/// bead from `β` to the free slot `β - k`, and the height of the strip is the
/// number of beads strictly between the two.
fn border_strips(lambda: &Partition, k: usize) -> Vec<(Partition, i32)> {
    let len = lambda.len();
    let beta: Vec<usize> = (0..len).map(|i| lambda.part(i) + (len - 1 - i)).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_sorted_unchecked(parts), sign));
    }
    out
}

/// `χ_λ(τ_k)` for a k-cycle `τ_k`: each removable k-strip contributes
/// `±d_{λ∖strip}`, since the remaining cycles are fixed points.
pub fn character_on_k_cycle(lambda: &Partition, k: usize) -> Result<BigInt> {
    let n = lambda.size();
    if k < 2 || k > n {
        return param(format!("cycle length k={k} must satisfy 2 ≤ k ≤ n={n}"));
    }
    Ok(border_strips(lambda, k)
        .into_iter()
        .map(|(rest, sign)| BigInt::from(sign) * BigInt::from(dimension(&rest)))
        .sum())
}

/// `χ_λ` on the conjugacy class with the given cycle lengths (fixed points
/// included, any order).
pub fn character(lambda: &Partition, cycle_type: &[usize]) -> Result<BigInt> {
    let total: usize = cycle_type.iter().sum();
    if total != lambda.size() || cycle_type.contains(&0) {
        return param(format!(
            "cycle type {cycle_type:?} is not a class of S_{}",
            lambda.size()
        ));
    }
    let mut cycles = cycle_type.to_vec();
    cycles.sort_unstable();
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda, &cycles, &mut memo))
}

// Removes the largest remaining cycle first; `cycles` is sorted ascending.
fn mn_rec(
    lambda: &Partition,
    cycles: &[usize],
    memo: &mut HashMap<(Partition, usize), BigInt>,
) -> BigInt {
    let Some((&k, rest)) = cycles.split_last() else {
        return BigInt::one();
    };
    if rest.iter().all(|&c| c == 1) {
        // Only fixed points after this strip.
        return border_strips(lambda, k)
            .into_iter()
            .map(|(mu, sign)| BigInt::from(sign) * BigInt::from(dimension(&mu)))
            .sum();
    }
    let key = (lambda.clone(), cycles.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let v: BigInt = border_strips(lambda, k)
        .into_iter()
        .map(|(mu, sign)| BigInt::from(sign) * mn_rec(&mu, rest, memo))
        .sum();
    memo.insert(key, v.clone());
    v
}

/// `s_λ(k) = χ_λ(τ_k) / d_λ`, exactly and as a float.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRatio {
    pub value: BigRational,
    pub approx: f64,
}

impl CharacterRatio {
    fn new(value: BigRational) -> Self {
        let approx = value.to_f64().unwrap_or(f64::NAN);
        CharacterRatio { value, approx }
    }
}

pub fn character_ratio(lambda: &Partition, k: usize) -> Result<CharacterRatio> {
    let chi = character_on_k_cycle(lambda, k)?;
    let d = BigInt::from(dimension(lambda));
    Ok(CharacterRatio::new(BigRational::new(chi, d)))
}

/// Memoized dimensions and character ratios, one table per worker.
#[derive(Debug, Default, Clone)]
pub struct CharacterTable {
    dims: HashMap<Partition, BigUint>,
    ratios: HashMap<(Partition, usize), CharacterRatio>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&mut self, lambda: &Partition) -> &BigUint {
        self.dims
            .entry(lambda.clone())
            .or_insert_with(|| dimension(lambda))
    }

    pub fn ratio(&mut self, lambda: &Partition, k: usize) -> Result<&CharacterRatio> {
        let key = (lambda.clone(), k);
        if !self.ratios.contains_key(&key) {
            let n = lambda.size();
            if k < 2 || k > n {
                return param(format!("cycle length k={k} must satisfy 2 ≤ k ≤ n={n}"));
            }
            let chi: BigInt = border_strips(lambda, k)
                .into_iter()
                .map(|(rest, sign)| BigInt::from(sign) * BigInt::from(self.dimension(&rest).clone()))
                .sum();
            let d = BigInt::from(self.dimension(lambda).clone());
            self.ratios
                .insert(key.clone(), CharacterRatio::new(BigRational::new(chi, d)));
        }
        Ok(&self.ratios[&key])
    }
}

/// Whether `r + k + 1 < n/2`, the range where the main term is a controlled
/// approximation of `s_λ(k)`.
pub fn main_term_in_regime(lambda: &Partition, k: usize) -> bool {
    2 * (lambda.depth() + k + 1) < lambda.size()
}

/// Above this size the product is accumulated as a sum of logarithms.
const LOG_SPACE_ABOVE: usize = 1000;

/// The main-term product `P0·P1·P2` approximating `s_λ(k)`, with `r = n - λ_1`
/// and `d` the diagonal length:
///
/// * `P0 = (n-r-1)↓k / n↓k`
/// * `P1 = ∏_{i=2..d} (1 - k / (n - (1 + r + λ_i - i)))`
/// * `P2 = ∏_{i=1..d} (1 - k / (n - (r - λ'_i + i)))^{-1}`
///
/// It equals `s_λ(k)` exactly when `r < k`.
pub fn main_term(lambda: &Partition, k: usize) -> Result<f64> {
    let n = lambda.size() as i64;
    let ki = k as i64;
    let r = lambda.depth() as i64;
    let d = lambda.diagonal_length();
    let conj = lambda.conjugate();
    let degenerate = || Error::DegenerateRegime {
        partition: lambda.to_string(),
        k,
    };
    if k < 2 {
        return param(format!("cycle length k={k} must be at least 2"));
    }

    let mut factors: Vec<f64> = Vec::with_capacity(k + 2 * d);
    for j in 0..ki {
        let den = n - j;
        if den == 0 {
            return Err(degenerate());
        }
        factors.push((n - r - 1 - j) as f64 / den as f64);
    }
    for i in 2..=d as i64 {
        let lam_i = lambda.part(i as usize - 1) as i64;
        let den = n - (1 + r + lam_i - i);
        if den == 0 {
            return Err(degenerate());
        }
        factors.push((den - ki) as f64 / den as f64);
    }
    for i in 1..=d as i64 {
        let conj_i = conj.part(i as usize - 1) as i64;
        let den = n - (r - conj_i + i);
        if den == 0 || den == ki {
            return Err(degenerate());
        }
        factors.push(den as f64 / (den - ki) as f64);
    }

    if lambda.size() > LOG_SPACE_ABOVE {
        let mut log = 0.0;
        let mut negative = false;
        for f in factors {
            if f == 0.0 {
                return Ok(0.0);
            }
            negative ^= f < 0.0;
            log += f.abs().ln();
        }
        let mag = log.exp();
        Ok(if negative { -mag } else { mag })
    } else {
        Ok(factors.into_iter().product())
    }
}

/// Leading-order approximation of `s_λ(k)^t` for shallow partitions:
/// `exp(-r·k·t/n - r(k+r)·ln(n)/(2n))`. Returns 1 for `r = 0`.
pub fn small_r_asymptote(lambda: &Partition, k: usize, t: u64) -> f64 {
    let r = lambda.depth() as f64;
    if r == 0.0 {
        return 1.0;
    }
    let n = lambda.size() as f64;
    let k = k as f64;
    (-r * k * t as f64 / n - r * (k + r) * n.ln() / (2.0 * n)).exp()
}
