//! Kostka numbers `K_{λ,μ}`: the closed form for hook content
//! `μ = (n-M, 1^M)` and a brute-force tableau count.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{binomial, dimension, Partition};
use crate::error::{param, Error, Result};

/// Largest size accepted by [`kostka_brute`].
pub const KOSTKA_BRUTE_MAX_N: usize = 12;

/// `K_{λ,(n-M,1^M)}`.
///
/// The `n-M` ones fill the start of the first row, and the remaining `M`
/// distinct entries form a standard filling of the skew shape `λ/(n-M)`.
/// When `λ_2 ≤ n-M` that skew shape splits into the tail of the first row and
/// `λ*`, giving the closed form `C(M, n-λ_1)·d_{λ*}` (zero when `λ_1 < n-M`).
/// This covers every `M ≤ n/2`. Larger `M` can leave `λ_2 > n-M`, where the
/// rows interlock and the skew tableaux are counted with [`skew_row_tableaux`].
pub fn kostka_hook(lambda: &Partition, n: usize, m: usize) -> Result<BigUint> {
    kostka_hook_with(lambda, n, m, &mut dimension)
}

pub(crate) fn kostka_hook_with(
    lambda: &Partition,
    n: usize,
    m: usize,
    dim: &mut impl FnMut(&Partition) -> BigUint,
) -> Result<BigUint> {
    if lambda.size() != n {
        return param(format!("{lambda} is not a partition of {n}"));
    }
    if m > n {
        return param(format!("hook leg M={m} exceeds n={n}"));
    }
    let first = n - m;
    if lambda.first_row() < first {
        return Ok(BigUint::zero());
    }
    if lambda.part(1) <= first {
        return Ok(binomial(m, n - lambda.first_row()) * dim(&lambda.truncate_star()));
    }
    Ok(skew_row_tableaux_with(lambda, first, dim))
}

/// Number of standard fillings of the skew shape `λ / (a)`.
///
/// By the Pieri rule `s_{λ/(a)} = Σ s_ν` over `ν ⊆ λ` with `λ/ν` a horizontal
/// strip of `a` boxes, so the count is `Σ d_ν` over those `ν`.
pub fn skew_row_tableaux(lambda: &Partition, a: usize) -> BigUint {
    skew_row_tableaux_with(lambda, a, &mut dimension)
}

fn skew_row_tableaux_with(
    lambda: &Partition,
    a: usize,
    dim: &mut impl FnMut(&Partition) -> BigUint,
) -> BigUint {
    fn rec(
        shape: &[usize],
        inner: &mut Vec<usize>,
        row: usize,
        left: usize,
        dim: &mut impl FnMut(&Partition) -> BigUint,
    ) -> BigUint {
        if row == shape.len() {
            if left > 0 {
                return BigUint::zero();
            }
            return dim(&Partition::from_unsorted(inner.clone()));
        }
        let floor = shape.get(row + 1).copied().unwrap_or(0);
        let mut total = BigUint::zero();
        for take in 0..=(shape[row] - floor).min(left) {
            inner[row] = shape[row] - take;
            total += rec(shape, inner, row + 1, left - take, dim);
        }
        inner[row] = shape[row];
        total
    }
    if lambda.size() < a {
        return BigUint::zero();
    }
    let shape = lambda.parts();
    rec(shape, &mut shape.to_vec(), 0, a, dim)
}

/// Counts semistandard tableaux of shape `λ` and content `μ` by peeling off
/// the largest entry: the boxes holding it form a horizontal strip of size
/// `μ_last`.
pub fn kostka_brute(lambda: &Partition, mu: &Partition) -> Result<BigUint> {
    if lambda.size() != mu.size() {
        return param(format!("{lambda} and {mu} have different sizes"));
    }
    if lambda.size() > KOSTKA_BRUTE_MAX_N {
        return Err(Error::SizeLimit {
            what: "brute-force Kostka count",
            size: lambda.size(),
            limit: KOSTKA_BRUTE_MAX_N,
        });
    }

    fn peel(shape: &[usize], content: &[usize]) -> u64 {
        let Some((&last, rest)) = content.split_last() else {
            return shape.iter().all(|&r| r == 0) as u64;
        };
        let mut inner = shape.to_vec();
        strips(shape, &mut inner, 0, last, rest)
    }

    // Choose how many boxes to take from each row, keeping the removed boxes a
    // horizontal strip: row i may shrink down to the length of row i+1.
    fn strips(shape: &[usize], inner: &mut Vec<usize>, row: usize, left: usize, rest: &[usize]) -> u64 {
        if row == shape.len() {
            return if left == 0 { peel(inner, rest) } else { 0 };
        }
        let floor = shape.get(row + 1).copied().unwrap_or(0);
        let room = shape[row] - floor;
        let mut total = 0;
        for take in 0..=room.min(left) {
            inner[row] = shape[row] - take;
            total += strips(shape, inner, row + 1, left - take, rest);
        }
        inner[row] = shape[row];
        total
    }

    Ok(BigUint::from(peel(lambda.parts(), mu.parts())))
}
