//! Sufficient-only certificates that a Galois group is the full symmetric
//! group, from Frobenius cycle types at unramified primes, and the
//! power-irreducibility certificate built on top of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::factor::{is_irreducible_over_z, is_squarefree_z};
use super::intpoly::IntPoly;
use super::predicates::{discriminant, is_cyclotomic_product, is_perfect_square};
use crate::error::{Error, Result};
use crate::ffpoly::{is_prime, splitting_type, PrimeField, SplitOutcome, SplittingType};
use crate::serde_big;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaloisVerdict {
    CertifiedSn,
    NotTransitive,
    Inconclusive,
}

/// Rules that can fire while certifying `Gal(f) = S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GaloisRule {
    /// `f` is irreducible over `Z`, so the group is transitive.
    Transitive,
    /// An `(n-1)`-cycle and an element with a transposition as a power
    /// were observed.
    LongCycleAndTransposition,
    /// A `q`-cycle with prime `n/2 < q < n-2` was observed and the
    /// discriminant is not a square.
    PrimeCycleOddDiscriminant,
    /// `n = 2`: transitivity alone.
    BaseQuadratic,
    /// `n = 3`: transitivity and a non-square discriminant.
    BaseCubic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub verdict: GaloisVerdict,
    pub degree: usize,
    #[serde(with = "serde_big::bigint")]
    pub discriminant: BigInt,
    pub disc_square: bool,
    /// `(p, splitting type of f mod p)` for every scanned prime not dividing
    /// the discriminant, sorted by prime.
    pub evidence: Vec<(u64, SplittingType)>,
    pub rules_fired: Vec<GaloisRule>,
}

/// Tries to certify `Gal(f) = S_n` for a monic squarefree `f` of degree
/// `n >= 2`, scanning primes up to `prime_budget`.
pub fn certify_galois_sn(f: &IntPoly, prime_budget: u64) -> Result<GaloisCertificate> {
    f.require_monic(2, super::MAX_FACTOR_DEGREE)?;
    if !is_squarefree_z(f) {
        return Err(Error::NotSquarefree);
    }
    let n = f.deg();
    let disc = discriminant(f)?;
    let disc_square = is_perfect_square(&disc);
    let evidence = scan_primes(f, &disc, prime_budget);

    let mut rules = Vec::new();
    let transitive = is_irreducible_over_z(f)?;
    let verdict = if !transitive {
        GaloisVerdict::NotTransitive
    } else {
        rules.push(GaloisRule::Transitive);
        let n32 = n as u32;
        let fired = match n {
            2 => Some(GaloisRule::BaseQuadratic),
            3 if !disc_square => Some(GaloisRule::BaseCubic),
            3 => None,
            _ => {
                let seen = |pred: &dyn Fn(&SplittingType) -> bool| evidence.iter().any(|(_, t)| pred(t));
                let long = seen(&|t| t.parts() == [n32 - 1, 1]);
                // one 2-cycle and odd cycles otherwise: a power is a transposition
                let transposition = seen(&|t| {
                    t.parts().iter().filter(|&&k| k == 2).count() == 1
                        && t.parts().iter().all(|&k| k == 2 || k % 2 == 1)
                });
                let prime_cycle = !disc_square
                    && seen(&|t| {
                        t.parts().iter().any(|&q| {
                            2 * q > n32 && q + 2 < n32 && is_prime(q as u64)
                        })
                    });
                if long && transposition {
                    Some(GaloisRule::LongCycleAndTransposition)
                } else if prime_cycle {
                    Some(GaloisRule::PrimeCycleOddDiscriminant)
                } else {
                    None
                }
            }
        };
        match fired {
            Some(rule) => {
                rules.push(rule);
                GaloisVerdict::CertifiedSn
            }
            None => GaloisVerdict::Inconclusive,
        }
    };
    Ok(GaloisCertificate {
        verdict,
        degree: n,
        discriminant: disc,
        disc_square,
        evidence,
        rules_fired: rules,
    })
}

fn scan_primes(f: &IntPoly, disc: &BigInt, budget: u64) -> Vec<(u64, SplittingType)> {
    (2..=budget.min((1 << 31) - 1))
        .filter(|&p| is_prime(p))
        .filter(|&p| !disc.mod_floor(&BigInt::from(p)).is_zero())
        .filter_map(|p| {
            let field = PrimeField::new(p).expect("prime");
            match splitting_type(&f.to_fp(field)).expect("monic") {
                SplitOutcome::Type(t) => Some((p, t)),
                SplitOutcome::SquarefreeViolation => None,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refutation {
    /// Product of cyclotomic polynomials: some power of the companion matrix
    /// is unipotent.
    Cyclotomic,
    /// Reducible over `Z` already at the first power.
    Reducible,
    /// Every root has the same `k`-th power, so `char_poly(C(f)^k)` is
    /// `(x - c)^n`.
    CommonPower(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Refuted(Refutation),
    Inconclusive,
}

/// Verdict plus evidence trail for "every power of a matrix with this
/// characteristic polynomial has irreducible characteristic polynomial".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub cyclotomic: bool,
    pub galois: Option<GaloisCertificate>,
    pub checks: Vec<String>,
}

/// Certified when `Gal(f) = S_n` is certified and no two roots differ by a
/// root of unity. `S_n` is 2-transitive, so the powers `r_i^k` are either
/// pairwise distinct (and then conjugate, giving an irreducible power) or all
/// equal. The ratios `r_i / r_j` generate an abelian subfield, and abelian
/// quotients of `S_n` have order at most 2, so any such ratio has order
/// dividing 4 or 6 and it suffices to test whether `x^12 mod f` is constant.
pub fn certify_power_irreducible(f: &IntPoly, prime_budget: u64) -> Result<Certificate> {
    f.require_monic(2, super::MAX_FACTOR_DEGREE)?;
    let mut checks = Vec::new();
    if f.constant_term().is_zero() {
        checks.push("x divides f".to_string());
        return Ok(Certificate {
            verdict: Verdict::Refuted(Refutation::Reducible),
            cyclotomic: false,
            galois: None,
            checks,
        });
    }
    let cyclotomic = is_cyclotomic_product(f)?;
    checks.push(format!("cyclotomic product: {cyclotomic}"));
    if cyclotomic {
        return Ok(Certificate {
            verdict: Verdict::Refuted(Refutation::Cyclotomic),
            cyclotomic,
            galois: None,
            checks,
        });
    }
    if !is_squarefree_z(f) {
        checks.push("repeated factor".to_string());
        return Ok(Certificate {
            verdict: Verdict::Refuted(Refutation::Reducible),
            cyclotomic,
            galois: None,
            checks,
        });
    }
    let galois = certify_galois_sn(f, prime_budget)?;
    checks.push(format!("galois: {:?}", galois.verdict));
    let verdict = match galois.verdict {
        GaloisVerdict::CertifiedSn => match common_root_power(f) {
            Some(k) => {
                checks.push(format!("x^{k} is constant mod f"));
                Verdict::Refuted(Refutation::CommonPower(k))
            }
            None => Verdict::Certified,
        },
        GaloisVerdict::NotTransitive => Verdict::Refuted(Refutation::Reducible),
        GaloisVerdict::Inconclusive => Verdict::Inconclusive,
    };
    Ok(Certificate {
        verdict,
        cyclotomic,
        galois: Some(galois),
        checks,
    })
}

/// Least `k | 12` with `x^k` constant modulo `f`, i.e. `f | x^k - c`.
fn common_root_power(f: &IntPoly) -> Option<usize> {
    [2, 3, 4, 6, 12].into_iter().find(|&k| {
        let (_, r) = IntPoly::x().pow(k as u32).div_rem_unit(f);
        r.degree().map_or(true, |d| d == 0)
    })
}
