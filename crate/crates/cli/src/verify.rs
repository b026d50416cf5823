//! Oracle-versus-formula checks behind `kcycle verify`.
//!
//! Every closed form used by the library is recomputed here by brute force on
//! small instances: tableau enumeration, sums over the whole group, exact
//! convolution and numerical quadrature.

use std::io::{self, Write};

use kcycle::distances::{
    exact_tv, exact_tv_labels, gaussian_profile, plancherel_l2_bound, poisson_profile, PlancherelTarget,
};
use kcycle::measures::{
    nu_distribution, nu_fourier, nu_sym_distribution, xi_distribution, xi_fourier, Cap, NuParams, TPrime,
    XiParams, XiVariant,
};
use kcycle::partitions::{
    character, character_ratio, dimension, kostka_brute, kostka_hook, main_term, partitions_of, Partition,
};
use kcycle::perm::{
    all_permutations, exact_walk_distribution, factorial, label_pushforward, quotient_fixed_points, quotient_label,
    uniform_on_labels, uniform_on_parity_class, DeckParams, ExactDistribution, Parity, Permutation, WalkParams,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

type Check = fn() -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("trivial and sign character ratios", trivial_and_sign),
    ("conjugation flips ratios by the cycle sign", conjugation_sign),
    ("squared dimensions sum to n!", dimension_squares),
    ("k-cycle character column orthogonality", column_orthogonality),
    ("main term is exact below depth k", main_term_exact),
    ("hook-content Kostka numbers match tableau enumeration", kostka),
    ("set-aside Fourier coefficients match group sums", xi_coefficients),
    ("set-aside coefficients vanish off long rows and columns", xi_vanishing),
    ("nu Fourier coefficients match its exact mass", nu_coefficients),
    ("one walk step is uniform on k-cycles", one_step),
    ("walk mass lives on one parity class", walk_parity),
    ("Plancherel bound dominates exact total variation", plancherel_dominates),
    ("nu and nu-sym agree on the quotient", quotient_identity),
    ("uniform permutations push forward to uniform labels", uniform_labels),
    ("quotient fixed points are coset invariant", coset_invariance),
    ("Gaussian profile matches quadrature", gaussian_quadrature),
    ("Poisson profile matches the one-crossing formula", poisson_crossing),
];

pub fn run_all() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&(name, check)| CheckResult { name, outcome: check() })
        .collect()
}

/// Writes one line per check and returns the number of failures.
pub fn report(results: &[CheckResult], out: &mut dyn Write) -> io::Result<usize> {
    let mut failed = 0;
    for r in results {
        match &r.outcome {
            Ok(()) => writeln!(out, "PASS  {}", r.name)?,
            Err(detail) => {
                failed += 1;
                writeln!(out, "FAIL  {}: {detail}", r.name)?;
            }
        }
    }
    writeln!(out, "{} passed, {failed} failed", results.len() - failed)?;
    Ok(failed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cycle_sign(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(Parity::of_cycle(k).sign()))
}

fn trivial_and_sign() -> Result<(), String> {
    for n in 2..=10 {
        for k in 2..=n {
            let one = character_ratio(&Partition::row(n), k).map_err(err)?.value;
            ensure(one.is_one(), || format!("s_(n) = {one} at n={n}, k={k}"))?;
            let sign = character_ratio(&Partition::column(n), k).map_err(err)?.value;
            ensure(sign == cycle_sign(k), || format!("s_(1^n) = {sign} at n={n}, k={k}"))?;
        }
    }
    Ok(())
}

fn conjugation_sign() -> Result<(), String> {
    for n in 2..=10 {
        for lambda in partitions_of(n) {
            for k in 2..=n {
                let a = character_ratio(&lambda, k).map_err(err)?.value;
                let b = character_ratio(&lambda.conjugate(), k).map_err(err)?.value;
                ensure(b == a * cycle_sign(k), || format!("{lambda}, k={k}"))?;
            }
        }
    }
    Ok(())
}

fn dimension_squares() -> Result<(), String> {
    for n in 0..=12 {
        let total: BigUint = partitions_of(n).iter().map(|l| dimension(l).pow(2)).sum();
        let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
        ensure(total == fact, || format!("n={n}"))?;
    }
    Ok(())
}

fn column_orthogonality() -> Result<(), String> {
    for n in 2..=10 {
        for k in 2..=n {
            let total: BigInt = partitions_of(n)
                .iter()
                .map(|l| kcycle::partitions::character_on_k_cycle(l, k).map(|c| &c * &c))
                .sum::<Result<BigInt, _>>()
                .map_err(err)?;
            let expect = BigInt::from(k) * BigInt::from(factorial(n - k));
            ensure(total == expect, || format!("n={n}, k={k}: {total} vs {expect}"))?;
        }
    }
    Ok(())
}

fn main_term_exact() -> Result<(), String> {
    for k in [5, 6] {
        for lambda in partitions_of(20).into_iter().filter(|l| l.depth() < k) {
            let exact = character_ratio(&lambda, k).map_err(err)?.approx;
            let mt = main_term(&lambda, k).map_err(err)?;
            let scale = exact.abs().max(f64::MIN_POSITIVE);
            ensure((mt - exact).abs() <= 1e-12 * scale || (mt == 0.0 && exact == 0.0), || {
                format!("{lambda}, k={k}: {mt} vs {exact}")
            })?;
        }
    }
    Ok(())
}

fn kostka() -> Result<(), String> {
    for n in 1..=8 {
        for big_m in 0..=n.min(4) {
            let mu = Partition::hook(n, big_m);
            for lambda in partitions_of(n) {
                let a = kostka_hook(&lambda, n, big_m).map_err(err)?;
                let b = kostka_brute(&lambda, &mu).map_err(err)?;
                ensure(a == b, || format!("{lambda}, M={big_m}: {a} vs {b}"))?;
            }
        }
    }
    Ok(())
}

/// `Σ_σ P(σ) χ_λ(σ) / d_λ`.
fn direct_fourier(dist: &ExactDistribution, lambda: &Partition) -> Result<f64, String> {
    let mut by_type = std::collections::BTreeMap::<Vec<usize>, f64>::new();
    for (sigma, &mass) in all_permutations(dist.n).zip(&dist.mass) {
        if mass != 0.0 {
            *by_type.entry(sigma.cycle_type()).or_default() += mass;
        }
    }
    let d = dimension(lambda).to_f64().unwrap_or(f64::NAN);
    let mut total = 0.0;
    for (ct, mass) in by_type {
        total += mass * character(lambda, &ct).map_err(err)?.to_f64().unwrap_or(f64::NAN) / d;
    }
    Ok(total)
}

fn xi_coefficients() -> Result<(), String> {
    for n in 2..=7 {
        for big_m in 0..=3.min(n) {
            for variant in [XiVariant::Alternating, XiVariant::Complement] {
                let Ok(params) = XiParams::new(n, big_m, variant) else { continue };
                let dist = xi_distribution(&params).map_err(err)?;
                for lambda in partitions_of(n) {
                    let a = xi_fourier(&lambda, &params).map_err(err)?.to_f64().unwrap_or(f64::NAN);
                    let b = direct_fourier(&dist, &lambda)?;
                    ensure((a - b).abs() <= 1e-12, || format!("{lambda} {params:?}: {a} vs {b}"))?;
                }
            }
        }
    }
    Ok(())
}

fn xi_vanishing() -> Result<(), String> {
    for n in 4..=12 {
        for big_m in 0..n - 1 {
            let free = n - big_m;
            for lambda in partitions_of(n).into_iter().filter(|l| l.first_row() < free && l.len() < free) {
                for variant in [XiVariant::Alternating, XiVariant::Complement] {
                    let params = XiParams::new(n, big_m, variant).map_err(err)?;
                    let v = xi_fourier(&lambda, &params).map_err(err)?;
                    ensure(v.is_zero(), || format!("{lambda} {params:?}: {v}"))?;
                }
            }
        }
    }
    Ok(())
}

fn nu_coefficients() -> Result<(), String> {
    let deck = DeckParams::new(7, 7, 1).map_err(err)?;
    for k in [2, 3] {
        for t in [3, 8, 13] {
            let walk = WalkParams::new(deck, k, t).map_err(err)?;
            let params = NuParams::new(walk, TPrime::Floored, Cap::Full).map_err(err)?;
            let dist = nu_distribution(&params).map_err(err)?;
            for lambda in partitions_of(7) {
                let a = nu_fourier(&lambda, &params).map_err(err)?;
                let b = direct_fourier(&dist, &lambda)?;
                ensure((a - b).abs() <= 1e-10, || format!("{lambda}, k={k}, t={t}: {a} vs {b}"))?;
            }
        }
    }
    Ok(())
}

fn one_step() -> Result<(), String> {
    for n in 3..=7 {
        for k in 2..=n {
            let deck = DeckParams::new(n, n, 1).map_err(err)?;
            let dist = exact_walk_distribution(&WalkParams::new(deck, k, 1).map_err(err)?).map_err(err)?;
            let falling: f64 = (0..k).map(|i| (n - i) as f64).product();
            let want = k as f64 / falling;
            for (sigma, &mass) in all_permutations(n).zip(&dist.mass) {
                let is_k_cycle = sigma.cycle_type().first() == Some(&k) && sigma.fixed_point_count() == n - k;
                let expect = if is_k_cycle { want } else { 0.0 };
                ensure((mass - expect).abs() <= 1e-15, || format!("n={n}, k={k}, {sigma:?}"))?;
            }
        }
    }
    Ok(())
}

fn walk_parity() -> Result<(), String> {
    for (n, k, t) in [(6, 2, 3), (6, 3, 4), (7, 4, 5), (5, 2, 6)] {
        let deck = DeckParams::new(n, n, 1).map_err(err)?;
        let walk = WalkParams::new(deck, k, t).map_err(err)?;
        let dist = exact_walk_distribution(&walk).map_err(err)?;
        let total: f64 = dist.mass.iter().sum();
        ensure((total - 1.0).abs() <= 1e-12, || format!("mass {total}"))?;
        for (sigma, &mass) in all_permutations(n).zip(&dist.mass) {
            ensure(mass == 0.0 || sigma.parity() == walk.parity(), || format!("{sigma:?}"))?;
        }
    }
    Ok(())
}

fn plancherel_dominates() -> Result<(), String> {
    for n in [5, 6] {
        for k in [2, 3] {
            for t in 1..=8 {
                let deck = DeckParams::new(n, n, 1).map_err(err)?;
                let walk = WalkParams::new(deck, k, t).map_err(err)?;
                let exact = exact_tv(
                    &exact_walk_distribution(&walk).map_err(err)?,
                    &uniform_on_parity_class(n, walk.parity()).map_err(err)?,
                )
                .map_err(err)?;
                let bound = plancherel_l2_bound(&walk, &PlancherelTarget::UniformParityClass).map_err(err)?;
                ensure(exact <= bound.bound + 1e-10, || format!("n={n}, k={k}, t={t}: {exact} > {}", bound.bound))?;
            }
        }
    }
    Ok(())
}

fn quotient_identity() -> Result<(), String> {
    for (n, m) in [(6, 3), (8, 4), (8, 2)] {
        let deck = DeckParams::new(n, m, n / m).map_err(err)?;
        for (k, t) in [(2, 3), (3, 4)] {
            let walk = WalkParams::new(deck, k, t).map_err(err)?;
            let params = NuParams::new(walk, TPrime::Floored, Cap::Log).map_err(err)?;
            let a = label_pushforward(&nu_distribution(&params).map_err(err)?, &deck).map_err(err)?;
            let b = label_pushforward(&nu_sym_distribution(&params).map_err(err)?, &deck).map_err(err)?;
            let tv = exact_tv_labels(&a, &b).map_err(err)?;
            ensure(tv <= 1e-12, || format!("n={n}, m={m}, k={k}, t={t}: {tv}"))?;
        }
    }
    Ok(())
}

fn uniform_labels() -> Result<(), String> {
    for (n, m) in [(4, 2), (6, 3), (6, 2), (8, 4)] {
        let deck = DeckParams::new(n, m, n / m).map_err(err)?;
        let size = factorial(n);
        let uniform = ExactDistribution { n, mass: vec![1.0 / size as f64; size] };
        let pushed = label_pushforward(&uniform, &deck).map_err(err)?;
        let tv = exact_tv_labels(&pushed, &uniform_on_labels(&deck).map_err(err)?).map_err(err)?;
        ensure(tv <= 1e-12, || format!("n={n}, m={m}: {tv}"))?;
    }
    Ok(())
}

fn coset_invariance() -> Result<(), String> {
    let deck = DeckParams::new(6, 3, 2).map_err(err)?;
    // Type-preserving permutations: swaps inside each block {j, j+3}.
    let swaps: Vec<Permutation> = (0..8u32)
        .map(|mask| {
            let mut images: Vec<usize> = (0..6).collect();
            for j in 0..3 {
                if mask & (1 << j) != 0 {
                    images.swap(j, j + 3);
                }
            }
            Permutation::from_images(images)
        })
        .collect::<Result<_, _>>()
        .map_err(err)?;
    for sigma in all_permutations(6) {
        let f = quotient_fixed_points(&sigma, &deck);
        let w = quotient_label(&sigma, &deck);
        for h in &swaps {
            let moved = h.compose(&sigma).map_err(err)?;
            ensure(quotient_fixed_points(&moved, &deck) == f, || format!("{sigma:?}"))?;
            ensure(quotient_label(&moved, &deck) == w, || format!("{sigma:?}"))?;
        }
    }
    Ok(())
}

fn gaussian_quadrature() -> Result<(), String> {
    for c in [-2.0f64, -1.0, 0.0, 1.0, 3.0] {
        let x: f64 = (-c).exp() / 2.0;
        let steps = 20_000;
        let h = x / steps as f64;
        let phi = |u: f64| (-u * u / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut s = phi(0.0) + phi(x);
        for i in 1..steps {
            s += phi(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let quad = 2.0 * s * h / 3.0;
        let g = gaussian_profile(c);
        ensure((g - quad).abs() <= 1e-12, || format!("c={c}: {g} vs {quad}"))?;
    }
    Ok(())
}

fn poisson_crossing() -> Result<(), String> {
    let cdf = |mean: f64, upto: u64| -> f64 {
        let mut p = (-mean).exp();
        let mut total = p;
        for x in 1..=upto {
            p *= mean / x as f64;
            total += p;
        }
        total
    };
    for l in [1usize, 2, 3, 5] {
        for c in [-1.0f64, 0.0, 1.0, 2.0] {
            let lo = l as f64;
            let hi = lo + (-c).exp();
            let cross = ((hi - lo) / (hi / lo).ln()).floor() as u64;
            let expect = cdf(lo, cross) - cdf(hi, cross);
            let got = poisson_profile(c, l);
            ensure((got - expect).abs() <= 1e-12, || format!("l={l}, c={c}: {got} vs {expect}"))?;
        }
    }
    Ok(())
}
