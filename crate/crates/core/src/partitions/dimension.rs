use num_bigint::BigUint;
use num_traits::One;

use super::Partition;

/// Hook length of every box, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    let conj = lambda.conjugate();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| (0..row).map(|j| (row - j) + (conj.part(j) - i) - 1).collect())
        .collect()
}

/// `d_λ = n! / ∏ hooks`.
pub fn dimension(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    let numerator: BigUint = (1..=n as u64).map(BigUint::from).product();
    let denominator: BigUint = hook_lengths(lambda)
        .into_iter()
        .flatten()
        .map(|h| BigUint::from(h as u64))
        .product();
    numerator / denominator
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    // Count standard Young tableaux by removing the largest entry.
    fn syt_count(lambda: &Partition) -> u64 {
        if lambda.size() <= 1 {
            return 1;
        }
        let parts = lambda.parts();
        let mut total = 0;
        for i in 0..parts.len() {
            if i + 1 == parts.len() || parts[i] > parts[i + 1] {
                let mut smaller = parts.to_vec();
                smaller[i] -= 1;
                total += syt_count(&Partition::from_unsorted(smaller));
            }
        }
        total
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(dimension(&Partition::row(7)), BigUint::from(1u32));
        assert_eq!(dimension(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(dimension(&p(&[3, 2])), BigUint::from(5u32));
        assert_eq!(dimension(&Partition::empty()), BigUint::from(1u32));
    }

    #[test]
    fn hook_formula_counts_standard_tableaux() {
        for n in 1..=9 {
            for lambda in partitions_of(n) {
                assert_eq!(dimension(&lambda), BigUint::from(syt_count(&lambda)), "{lambda}");
            }
        }
    }

    #[test]
    fn dimension_is_conjugation_invariant() {
        for n in 1..=20 {
            for lambda in partitions_of(n) {
                assert_eq!(dimension(&lambda), dimension(&lambda.conjugate()));
            }
        }
    }

    #[test]
    fn squared_dimensions_sum_to_group_order() {
        for n in 0..=12 {
            let total: BigUint = partitions_of(n).iter().map(|l| dimension(l).pow(2)).sum();
            let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
            assert_eq!(total, fact, "n = {n}");
        }
    }

    #[test]
    fn dimension_bound_by_depth() {
        // d_λ ≤ C(n, r)·sqrt(r!) with r = n - λ_1, i.e. d_λ² ≤ C(n, r)²·r!.
        for n in 1..=15 {
            for lambda in partitions_of(n) {
                let r = lambda.depth();
                let fact: BigUint = (1..=r as u64).map(BigUint::from).product();
                let bound = binomial(n, r).pow(2) * fact;
                assert!(dimension(&lambda).pow(2) <= bound, "{lambda}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 4), BigUint::ZERO);
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(40, 20), BigUint::from(137846528820u64));
    }
}
