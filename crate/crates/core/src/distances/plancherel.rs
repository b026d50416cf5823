//! The Cauchy–Schwarz / Plancherel upper bound on total variation.
//!
//! For class measures `P` and `Q` on `S_n`,
//! `4 d_TV(P, Q)^2 ≤ n! Σ_σ (P(σ) - Q(σ))^2 = Σ_λ d_λ^2 (P(λ) - Q(λ))^2`,
//! where `P(λ)` is the scalar Fourier coefficient. The walk after `t` steps has
//! coefficient `s_λ(k)^t`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::measures::{nu_fourier_with, NuParams};
use crate::partitions::{partitions_of, CharacterTable, Partition};
use crate::perm::{Parity, WalkParams};
use crate::sum::Neumaier;

/// Largest `n` for which the sum over all partitions is attempted
/// (`p(40) = 37338`).
pub const PLANCHEREL_MAX_N: usize = 40;

/// What the walk is compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlancherelTarget {
    /// Uniform on the walk's parity class: coefficient 1 at `(n)`, the class
    /// sign at `(1^n)` and 0 elsewhere.
    UniformParityClass,
    Nu(NuParams),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelBound {
    /// `(1/2) sqrt(total)`.
    pub bound: f64,
    /// `Σ_λ d_λ^2 (s_λ(k)^t - a_λ)^2`.
    pub total: f64,
    /// The part of `total` from partitions outside the long-row-or-column set.
    pub outside_long: f64,
}

#[derive(Debug, Clone)]
struct Entry {
    lambda: Partition,
    dim_sq: f64,
    ratio: f64,
    long: bool,
}

/// Dimensions and k-cycle character ratios for every partition of `n`,
/// reusable across times.
#[derive(Debug, Clone)]
pub struct Spectrum {
    n: usize,
    k: usize,
    entries: Vec<Entry>,
}

impl Spectrum {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > PLANCHEREL_MAX_N {
            return Err(Error::SizeLimit { what: "Plancherel sum", size: n, limit: PLANCHEREL_MAX_N });
        }
        let mut table = CharacterTable::new();
        let entries = partitions_of(n)
            .into_iter()
            .map(|lambda| {
                let ratio = table.ratio(&lambda, k)?.approx;
                let dim = table.dimension(&lambda).to_f64().unwrap_or(f64::INFINITY);
                let long = lambda.in_long_set();
                Ok(Entry { lambda, dim_sq: dim * dim, ratio, long })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Spectrum { n, k, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The bound after `t` steps.
    pub fn bound(&self, t: u64, target: &PlancherelTarget) -> Result<PlancherelBound> {
        let class = Parity::of_cycle(self.k).pow(t);
        let mut table = CharacterTable::new();
        let mut total = Neumaier::default();
        let mut outside = Neumaier::default();
        for e in &self.entries {
            let walk = signed_power(e.ratio, t);
            let target_coeff = match target {
                PlancherelTarget::UniformParityClass => {
                    if e.lambda.first_row() == self.n {
                        1.0
                    } else if e.lambda.len() == self.n {
                        class.sign() as f64
                    } else {
                        0.0
                    }
                }
                PlancherelTarget::Nu(params) => nu_fourier_with(&mut table, &e.lambda, params)?,
            };
            let term = e.dim_sq * (walk - target_coeff).powi(2);
            total.add(term);
            if !e.long {
                outside.add(term);
            }
        }
        let total = total.value();
        Ok(PlancherelBound { bound: 0.5 * total.sqrt(), total, outside_long: outside.value() })
    }
}

/// `x^t` for possibly negative `x` and large `t`.
fn signed_power(x: f64, t: u64) -> f64 {
    let mag = x.abs().powf(t as f64);
    if x < 0.0 && t % 2 == 1 {
        -mag
    } else {
        mag
    }
}

/// `(1/2) sqrt(Σ_λ d_λ^2 (s_λ(k)^t - a_λ)^2)`, an upper bound on the total
/// variation between the walk at time `t` and the target.
pub fn plancherel_l2_bound(walk: &WalkParams, target: &PlancherelTarget) -> Result<PlancherelBound> {
    if let PlancherelTarget::Nu(nu) = target {
        if nu.n() != walk.n() {
            return Err(Error::Parameter(format!("ν is on {} points, the walk on {}", nu.n(), walk.n())));
        }
    }
    Spectrum::new(walk.n(), walk.k)?.bound(walk.t, target)
}
