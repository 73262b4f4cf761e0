//! Factorization over `Z`: squarefree decomposition, then Zassenhaus (factor
//! modulo a good prime, Hensel-lift past the Landau–Mignotte bound, recombine
//! subsets of lifted factors).

use num_bigint::BigInt;
use num_traits::One;

use super::intpoly::IntPoly;
use crate::error::Result;
use crate::ffpoly::{factor_mod_p, is_prime, FpPoly, PrimeField};

/// Degree cap for [`factor_over_z`]; keeps subset recombination tractable.
pub const MAX_FACTOR_DEGREE: usize = 16;

/// Number of good primes tried when picking the factorization prime.
const PRIME_TRIALS: usize = 5;

/// Factors a monic integer polynomial into monic irreducibles over `Z` with
/// multiplicities, sorted by `(degree, coefficients)`.
pub fn factor_over_z(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    f.require_monic(1, MAX_FACTOR_DEGREE)?;
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition_z(f) {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.coeffs(), a.1).cmp(&(b.0.deg(), b.0.coeffs(), b.1)));
    Ok(out)
}

/// Whether a monic polynomial of degree 1..=16 is irreducible over `Z`.
pub fn is_irreducible_over_z(f: &IntPoly) -> Result<bool> {
    let fac = factor_over_z(f)?;
    Ok(fac.len() == 1 && fac[0].1 == 1)
}

/// Yun's squarefree decomposition of a monic polynomial over `Z`; all parts
/// are monic.
pub fn squarefree_decomposition_z(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.checked_div(&a0).expect("gcd divides f");
    let mut c = df.checked_div(&a0).expect("gcd divides f'");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.checked_div(&a).expect("gcd divides b");
        c = d.checked_div(&a).expect("gcd divides d");
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub fn is_squarefree_z(f: &IntPoly) -> bool {
    f.deg() > 0 && f.gcd(&f.derivative()).deg() == 0
}

fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let Some((field, modular)) = choose_prime(f) else {
        unreachable!("a squarefree polynomial has good primes")
    };
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let p = BigInt::from(field.p());
    // coefficients of any factor are bounded by 2^n * |f|_2
    let bound = (BigInt::one() << n) * (f.norm_sq().sqrt() + 1u32);
    let target = bound * 2u32;
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= target {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, field, k);
    recombine(f, lifted, &modulus)
}

/// Picks among the first few primes where `f` stays squarefree the one with
/// fewest modular factors.
fn choose_prime(f: &IntPoly) -> Option<(PrimeField, Vec<FpPoly>)> {
    let mut best: Option<(PrimeField, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut q = 2u64;
    while tried < PRIME_TRIALS && q < 1 << 20 {
        q += 1;
        if !is_prime(q) {
            continue;
        }
        let field = PrimeField::new(q).expect("prime");
        let fp = f.to_fp(field);
        if fp.deg() != f.deg() || !fp.is_squarefree() {
            continue;
        }
        tried += 1;
        let factors: Vec<FpPoly> = factor_mod_p(&fp)
            .expect("monic")
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if best.as_ref().map_or(true, |b| factors.len() < b.1.len()) {
            let done = factors.len() == 1;
            best = Some((field, factors));
            if done {
                break;
            }
        }
    }
    best
}

/// Lifts `f ≡ prod factors (mod p)` to a factorization modulo `p^k` by
/// splitting the factor list in halves.
fn hensel_lift(f: &IntPoly, factors: &[FpPoly], field: PrimeField, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(field.p()).pow(k);
        return vec![f.reduce_mod(&m)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(field), |acc, g| acc.mul(g));
    let (g, h) = lift_pair(f, &prod(left), &prod(right), field, k);
    let mut out = hensel_lift(&g, left, field, k);
    out.extend(hensel_lift(&h, right, field, k));
    out
}

/// Linear Hensel lifting of `f ≡ g h (mod p)` with `g`, `h` monic and coprime
/// modulo `p`, to `f ≡ G H (mod p^k)`.
fn lift_pair(f: &IntPoly, g: &FpPoly, h: &FpPoly, field: PrimeField, k: u32) -> (IntPoly, IntPoly) {
    let p = BigInt::from(field.p());
    let (one, s, t) = g.ext_gcd(h);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let mut big_g = IntPoly::from_fp(g);
    let mut big_h = IntPoly::from_fp(h);
    let mut m = p.clone();
    for _ in 1..k {
        let err = f.sub(&big_g.mul(&big_h));
        let e = IntPoly::new(err.coeffs().iter().map(|c| c / &m).collect()).to_fp(field);
        // g dH + h dG ≡ e with deg dG < deg g
        let (q, dg) = t.mul(&e).div_rem(g);
        let dh = s.mul(&e).add(&q.mul(h));
        let next = &m * &p;
        big_g = big_g.add(&IntPoly::from_fp(&dg).scale(&m)).reduce_mod(&next);
        big_h = big_h.add(&IntPoly::from_fp(&dh).scale(&m)).reduce_mod(&next);
        m = next;
    }
    (big_g, big_h)
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let cand = subset
                .iter()
                .fold(IntPoly::one(), |acc, &i| acc.mul(&lifted[i]).reduce_mod(modulus))
                .symmetric_mod(modulus);
            if let Some(q) = rest.checked_div(&cand) {
                found.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_subset(&mut subset, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if rest.deg() > 0 || found.is_empty() {
        found.push(rest);
    }
    found
}

/// Advances `subset` (sorted indices) to the next combination of `0..n`.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Product of factors raised to their multiplicities.
pub fn expand_factors(factors: &[(IntPoly, u32)]) -> IntPoly {
    factors
        .iter()
        .fold(IntPoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m)))
}
