use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::factor::splitting_type;
use super::field::PrimeField;
use super::poly::FpPoly;
use crate::error::{check_budget, invalid, Result};

/// Degrees of the irreducible factors of a squarefree polynomial, sorted
/// descending. Equals the Frobenius cycle type at an unramified prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SplittingType {
    parts: Vec<u32>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&k| k > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn contains_part(&self, k: u32) -> bool {
        self.parts.contains(&k)
    }

    /// Multiplicity of each part size.
    pub fn part_counts(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &k in &self.parts {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl From<SplittingType> for String {
    fn from(t: SplittingType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for SplittingType {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        if s.is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

/// Result of [`splitting_type`](super::splitting_type).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitOutcome {
    Type(SplittingType),
    SquarefreeViolation,
}

impl SplitOutcome {
    pub fn as_type(&self) -> Option<&SplittingType> {
        match self {
            SplitOutcome::Type(t) => Some(t),
            SplitOutcome::SquarefreeViolation => None,
        }
    }
}

/// Optional coefficient constraint on the polynomials being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Restriction {
    None,
    /// The coefficient of `x^index` is fixed to `value`.
    Fix { index: usize, value: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplittingMode {
    /// Factor every polynomial in the family.
    Exhaustive,
    /// Factor `samples` uniformly drawn members.
    Sample { samples: u64, seed: u64 },
    /// Exact counts from the number of monic irreducibles of each degree.
    /// Only valid without a restriction.
    Counting,
}

/// Exact tally of splitting types over a family of monic polynomials.
/// Polynomials with a repeated factor are counted under `violations`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDistribution {
    pub degree: usize,
    pub p: u64,
    pub counts: BTreeMap<SplittingType, u128>,
    pub violations: u128,
    pub total: u128,
}

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl SplittingDistribution {
    pub fn probability(&self, t: &SplittingType) -> BigRational {
        ratio(self.counts.get(t).copied().unwrap_or(0), self.total)
    }

    pub fn violation_mass(&self) -> BigRational {
        ratio(self.violations, self.total)
    }

    /// Probabilities of each type among squarefree members only.
    pub fn conditioned(&self) -> BTreeMap<SplittingType, BigRational> {
        let sf = self.total - self.violations;
        self.counts
            .iter()
            .map(|(t, &c)| (t.clone(), ratio(c, sf)))
            .collect()
    }

    /// Total variation distance between two distributions, with the
    /// squarefree violation treated as one more outcome.
    pub fn tv_distance(&self, other: &Self) -> BigRational {
        let mut keys: Vec<&SplittingType> = self.counts.keys().collect();
        keys.extend(other.counts.keys());
        keys.sort();
        keys.dedup();
        let mut sum: BigRational = keys
            .into_iter()
            .map(|t| (self.probability(t) - other.probability(t)).abs())
            .sum();
        sum += (self.violation_mass() - other.violation_mass()).abs();
        sum / BigInt::from(2)
    }

    /// Total variation distance between the squarefree-conditioned law and a
    /// reference law on splitting types.
    pub fn conditioned_tv_to(&self, law: &BTreeMap<SplittingType, BigRational>) -> BigRational {
        let cond = self.conditioned();
        let mut keys: Vec<&SplittingType> = cond.keys().chain(law.keys()).collect();
        keys.sort();
        keys.dedup();
        let zero = BigRational::zero();
        let sum: BigRational = keys
            .into_iter()
            .map(|t| (cond.get(t).unwrap_or(&zero) - law.get(t).unwrap_or(&zero)).abs())
            .sum();
        sum / BigInt::from(2)
    }
}

/// Cycle-type law of the symmetric group `S_d`: a type with `m_k` parts of
/// size `k` has probability `1 / prod(k^{m_k} m_k!)`.
pub fn symmetric_group_cycle_law(d: u32) -> BTreeMap<SplittingType, BigRational> {
    partitions(d)
        .into_iter()
        .map(|parts| {
            let t = SplittingType::new(parts);
            let mut den = BigInt::from(1);
            for (k, m) in t.part_counts() {
                den *= BigInt::from(k).pow(m);
                den *= (1..=m).map(BigInt::from).product::<BigInt>();
            }
            (t, BigRational::new(BigInt::from(1), den))
        })
        .collect()
}

/// All partitions of `d`, parts descending.
pub fn partitions(d: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Number of monic irreducible polynomials of degree `k` over `F_p`.
pub fn irreducible_count(p: u64, k: u32) -> u128 {
    let mut acc: i128 = 0;
    for e in 1..=k {
        if k % e == 0 {
            let mu = mobius(e as u64);
            if mu != 0 {
                acc += mu as i128 * (p as i128).pow(k / e);
            }
        }
    }
    (acc / k as i128) as u128
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn binomial(n: u128, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        if n < i + 1 {
            return 0;
        }
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Distribution of splitting types over monic polynomials of degree `d` over
/// `F_p`, optionally with one lower coefficient fixed.
///
/// `budget` bounds the number of polynomials an exhaustive run may factor.
pub fn splitting_distribution(
    d: usize,
    p: u64,
    restriction: Restriction,
    mode: SplittingMode,
    budget: u128,
) -> Result<SplittingDistribution> {
    let field = PrimeField::new(p)?;
    if d == 0 {
        return Err(invalid("degree must be positive"));
    }
    let fixed = match restriction {
        Restriction::None => None,
        Restriction::Fix { index, value } => {
            if index >= d {
                return Err(invalid(format!(
                    "restricted coefficient index {index} must be below the degree {d}"
                )));
            }
            Some((index, value % field.p()))
        }
    };
    let free: Vec<usize> = (0..d).filter(|&i| Some(i) != fixed.map(|f| f.0)).collect();
    let mut base = vec![0u32; d + 1];
    base[d] = 1;
    if let Some((i, v)) = fixed {
        base[i] = v;
    }

    let mut dist = SplittingDistribution {
        degree: d,
        p,
        counts: BTreeMap::new(),
        violations: 0,
        total: 0,
    };
    match mode {
        SplittingMode::Exhaustive => {
            let size = (p as u128)
                .checked_pow(free.len() as u32)
                .unwrap_or(u128::MAX);
            check_budget("exhaustive splitting-type enumeration", size, budget)?;
            // Partition the family by its top free coefficient; each slice is
            // tallied independently and merged with exact counters.
            let (head, tail) = match free.split_last() {
                Some((&h, t)) => (Some(h), t.to_vec()),
                None => (None, Vec::new()),
            };
            let slices: Vec<u32> = match head {
                Some(_) => (0..field.p()).collect(),
                None => vec![0],
            };
            let partials: Vec<SplittingDistribution> = slices
                .into_par_iter()
                .map(|top| {
                    let mut coeffs = base.clone();
                    if let Some(h) = head {
                        coeffs[h] = top;
                    }
                    let mut part = SplittingDistribution {
                        degree: d,
                        p,
                        counts: BTreeMap::new(),
                        violations: 0,
                        total: 0,
                    };
                    odometer(&mut coeffs, &tail, field.p(), |c| {
                        tally(&mut part, &FpPoly::new(field, c.to_vec()));
                    });
                    part
                })
                .collect();
            for part in partials {
                merge(&mut dist, part);
            }
        }
        SplittingMode::Sample { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut coeffs = base.clone();
            for _ in 0..samples {
                for &i in &free {
                    coeffs[i] = rng.gen_range(0..field.p());
                }
                tally(&mut dist, &FpPoly::new(field, coeffs.clone()));
            }
        }
        SplittingMode::Counting => {
            if fixed.is_some() {
                return Err(invalid("counting mode has no closed form under a restriction"));
            }
            let total = (p as u128)
                .checked_pow(d as u32)
                .ok_or_else(|| invalid("p^d overflows the exact counters"))?;
            let irr: Vec<u128> = (0..=d as u32)
                .map(|k| if k == 0 { 0 } else { irreducible_count(p, k) })
                .collect();
            let mut squarefree = 0u128;
            for parts in partitions(d as u32) {
                let t = SplittingType::new(parts);
                let count: u128 = t
                    .part_counts()
                    .into_iter()
                    .map(|(k, m)| binomial(irr[k as usize], m))
                    .product();
                if count > 0 {
                    squarefree += count;
                    dist.counts.insert(t, count);
                }
            }
            dist.total = total;
            dist.violations = total - squarefree;
        }
    }
    Ok(dist)
}

fn tally(dist: &mut SplittingDistribution, f: &FpPoly) {
    dist.total += 1;
    match splitting_type(f).expect("monic by construction") {
        SplitOutcome::Type(t) => *dist.counts.entry(t).or_insert(0) += 1,
        SplitOutcome::SquarefreeViolation => dist.violations += 1,
    }
}

fn merge(into: &mut SplittingDistribution, part: SplittingDistribution) {
    into.total += part.total;
    into.violations += part.violations;
    for (t, c) in part.counts {
        *into.counts.entry(t).or_insert(0) += c;
    }
}

/// Runs `visit` on every assignment of the positions `free` to `[0, p)`.
pub(crate) fn odometer(coeffs: &mut [u32], free: &[usize], p: u32, mut visit: impl FnMut(&[u32])) {
    for &i in free {
        coeffs[i] = 0;
    }
    loop {
        visit(coeffs);
        let mut carry = true;
        for &i in free {
            coeffs[i] += 1;
            if coeffs[i] < p {
                carry = false;
                break;
            }
            coeffs[i] = 0;
        }
        if carry {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quadratics_mod_5() {
        let dist =
            splitting_distribution(2, 5, Restriction::None, SplittingMode::Exhaustive, 1000)
                .unwrap();
        assert_eq!(dist.total, 25);
        assert_eq!(dist.probability(&SplittingType::new(vec![1, 1])), q(10, 25));
        assert_eq!(dist.probability(&SplittingType::new(vec![2])), q(10, 25));
        assert_eq!(dist.violation_mass(), q(5, 25));
    }

    #[test]
    fn s4_cycle_law() {
        let law = symmetric_group_cycle_law(4);
        let t = |v: Vec<u32>| SplittingType::new(v);
        assert_eq!(law[&t(vec![1, 1, 1, 1])], q(1, 24));
        assert_eq!(law[&t(vec![2, 1, 1])], q(6, 24));
        assert_eq!(law[&t(vec![2, 2])], q(3, 24));
        assert_eq!(law[&t(vec![3, 1])], q(8, 24));
        assert_eq!(law[&t(vec![4])], q(6, 24));
        assert_eq!(law.values().sum::<BigRational>(), q(1, 1));
    }

    #[test]
    fn counting_matches_enumeration() {
        for (d, p) in [(2, 5), (3, 7), (4, 5), (4, 7), (5, 3), (3, 2), (4, 2)] {
            let ex = splitting_distribution(d, p, Restriction::None, SplittingMode::Exhaustive, 1 << 20)
                .unwrap();
            let ct = splitting_distribution(d, p, Restriction::None, SplittingMode::Counting, 0)
                .unwrap();
            assert_eq!(ex, ct, "d={d} p={p}");
        }
    }

    #[test]
    fn restricted_vs_unrestricted_cubics_mod_31() {
        let none =
            splitting_distribution(3, 31, Restriction::None, SplittingMode::Exhaustive, 1 << 20)
                .unwrap();
        let fixed = splitting_distribution(
            3,
            31,
            Restriction::Fix { index: 0, value: 1 },
            SplittingMode::Exhaustive,
            1 << 20,
        )
        .unwrap();
        assert_eq!(fixed.total, 31 * 31);
        assert!(none.tv_distance(&fixed) < q(1, 10));
    }

    #[test]
    fn budget_is_enforced() {
        let err = splitting_distribution(4, 61, Restriction::None, SplittingMode::Exhaustive, 10_000_000);
        assert!(matches!(err, Err(crate::Error::BudgetExceeded { .. })));
    }

    #[test]
    fn sampling_is_reproducible() {
        let mode = SplittingMode::Sample {
            samples: 500,
            seed: 7,
        };
        let a = splitting_distribution(4, 101, Restriction::None, mode, 0).unwrap();
        let b = splitting_distribution(4, 101, Restriction::None, mode, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 500);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(2, 1), 2);
        assert_eq!(irreducible_count(2, 2), 1);
        assert_eq!(irreducible_count(2, 3), 2);
        assert_eq!(irreducible_count(2, 4), 3);
        assert_eq!(irreducible_count(5, 2), 10);
        assert_eq!(irreducible_count(3, 6), 116);
    }

    #[test]
    fn splitting_type_serde() {
        let t = SplittingType::new(vec![1, 3]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "\"3,1\"");
        assert_eq!(serde_json::from_str::<SplittingType>(&s).unwrap(), t);
    }
}
