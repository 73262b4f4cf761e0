use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::ffpoly::{splitting_distribution, symmetric_group_cycle_law, Restriction, SplittingMode};
use crate::serde_big;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplittingRow {
    pub p: u64,
    /// TV between the restricted and unrestricted splitting laws, with the
    /// repeated-factor outcome included.
    #[serde(with = "serde_big::rational")]
    pub tv_restricted: BigRational,
    /// TV between the unrestricted law and the `S_d` cycle-type law, with
    /// the repeated-factor mass counted as disagreement.
    #[serde(with = "serde_big::rational")]
    pub tv_unrestricted_to_cycle_law: BigRational,
    pub unrestricted_mode: SplittingMode,
}

impl SplittingRow {
    pub fn tv_restricted_f64(&self) -> f64 {
        self.tv_restricted.to_f64().unwrap_or(f64::NAN)
    }

    pub fn tv_cycle_law_f64(&self) -> f64 {
        self.tv_unrestricted_to_cycle_law.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictedSplittingReport {
    pub degree: usize,
    pub index: usize,
    pub value: u32,
    pub rows: Vec<SplittingRow>,
}

impl RestrictedSplittingReport {
    /// TV at the largest prime is below TV at the smallest.
    pub fn endpoint_decrease(&self) -> bool {
        self.rows.len() >= 2 && self.rows.last().unwrap().tv_restricted < self.rows[0].tv_restricted
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].tv_restricted < w[0].tv_restricted)
    }
}

/// Compares monic degree-`d` polynomials with the coefficient of `x^k` fixed
/// to `a` against all monic degree-`d` polynomials, prime by prime. The
/// restricted family is always enumerated; the unrestricted one is
/// enumerated when it fits `budget` and otherwise counted exactly.
pub fn run_restricted_splitting(
    d: usize,
    k: usize,
    a: u32,
    primes: &[u64],
    budget: u128,
) -> Result<RestrictedSplittingReport> {
    if primes.is_empty() || primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("primes must be nonempty and strictly increasing"));
    }
    let law = symmetric_group_cycle_law(d as u32);
    let mut rows = Vec::new();
    for &p in primes {
        let restricted = splitting_distribution(
            d,
            p,
            Restriction::Fix { index: k, value: a },
            SplittingMode::Exhaustive,
            budget,
        )?;
        let full_size = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        let mode = if full_size <= budget {
            SplittingMode::Exhaustive
        } else {
            SplittingMode::Counting
        };
        let full = splitting_distribution(d, p, Restriction::None, mode, budget)?;
        let mut abs_sum = full.violation_mass();
        for (t, q) in &law {
            abs_sum += (full.probability(t) - q).abs();
        }
        for t in full.counts.keys().filter(|t| !law.contains_key(*t)) {
            abs_sum += full.probability(t);
        }
        let tv_law = abs_sum / BigRational::from_integer(2.into());
        rows.push(SplittingRow {
            p,
            tv_restricted: restricted.tv_distance(&full),
            tv_unrestricted_to_cycle_law: tv_law,
            unrestricted_mode: mode,
        });
    }
    Ok(RestrictedSplittingReport {
        degree: d,
        index: k,
        value: a,
        rows,
    })
}
