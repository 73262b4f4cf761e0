//! Factorization over prime fields: squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting (Cantor–Zassenhaus with a seeded
//! generator, or an exhaustive root scan for small linear parts).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::FpPoly;
use super::splitting::{SplitOutcome, SplittingType};
use crate::error::{Error, Result};

/// Seed used by [`factor_mod_p`]. The factor multiset is unique, so the seed
/// only affects running time.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d;

/// Below this value of `p * deg` linear parts are split by scanning all roots.
const ROOT_SCAN_LIMIT: u64 = 10_000;

/// Factors a monic polynomial of positive degree into monic irreducibles with
/// multiplicities, sorted by `(degree, coefficients)`.
pub fn factor_mod_p(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    factor_mod_p_seeded(f, DEFAULT_FACTOR_SEED)
}

pub fn factor_mod_p_seeded(f: &FpPoly, seed: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.deg() == 0 {
        return Err(Error::Degree {
            got: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for (block, k) in distinct_degree(&part) {
            let mut pieces = Vec::new();
            equal_degree(&block, k, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort_by(|a, b| {
        (a.0.deg(), a.0.coeffs(), a.1).cmp(&(b.0.deg(), b.0.coeffs(), b.1))
    });
    Ok(out)
}

/// Squarefree decomposition `f = prod g_i^{m_i}` with pairwise coprime,
/// squarefree, monic `g_i`. Handles `p`-th powers in characteristic `p`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out);
    out
}

fn sqf_into(f: &FpPoly, scale: u32, out: &mut Vec<(FpPoly, u32)>) {
    if f.deg() == 0 {
        return;
    }
    let p = f.field().p();
    let df = f.derivative();
    if df.is_zero() {
        sqf_into(&pth_root(f), scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if fac.deg() > 0 {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c.deg() > 0 {
        sqf_into(&pth_root(&c), scale * p, out);
    }
}

/// For `f` with only exponents divisible by `p`, returns `g` with `g^p = f`.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.field().p() as usize;
    FpPoly::new(f.field(), f.coeffs().iter().step_by(p).copied().collect())
}

/// Splits a squarefree monic polynomial into `(product of all degree-k
/// irreducible factors, k)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = f.field();
    let x = FpPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut k = 1;
    while rest.deg() >= 2 * k {
        h = h.pow_mod(field.p64(), &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, k));
        }
        k += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn equal_degree(g: &FpPoly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.deg();
    if n == k {
        out.push(g.clone());
        return;
    }
    let field = g.field();
    if k == 1 && field.p64() * n as u64 <= ROOT_SCAN_LIMIT {
        out.extend(
            (0..field.p())
                .filter(|&c| g.eval(c) == 0)
                .map(|c| FpPoly::linear(field, field.neg(c))),
        );
        return;
    }
    let exponent = (BigUint::from(field.p()).pow(k as u32) - 1u32) >> 1;
    loop {
        let a = FpPoly::new(field, (0..n).map(|_| rng.gen_range(0..field.p())).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // trace map onto F_2
            let mut acc = a.rem(g);
            let mut t = acc.clone();
            for _ in 1..k {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod_big(&exponent, g).sub(&FpPoly::one(field))
        };
        let d = g.gcd(&b);
        if d.deg() > 0 && d.deg() < n {
            let e = g.exact_div(&d);
            equal_degree(&d, k, rng, out);
            equal_degree(&e, k, rng, out);
            return;
        }
    }
}

/// Partition of `deg f` by the degrees of its irreducible factors, or
/// [`SplitOutcome::SquarefreeViolation`] when `gcd(f, f') != 1`.
pub fn splitting_type(f: &FpPoly) -> Result<SplitOutcome> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.deg() == 0 {
        return Ok(SplitOutcome::Type(SplittingType::new(Vec::new())));
    }
    if !f.is_squarefree() {
        return Ok(SplitOutcome::SquarefreeViolation);
    }
    let mut parts = Vec::with_capacity(f.deg());
    for (block, k) in distinct_degree(f) {
        parts.extend(std::iter::repeat(k as u32).take(block.deg() / k));
    }
    Ok(SplitOutcome::Type(SplittingType::new(parts)))
}

/// Whether a monic polynomial of degree >= 1 is irreducible.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = f.deg();
    n >= 1
        && f.is_squarefree()
        && distinct_degree(&f.monic())
            .first()
            .map_or(false, |(_, k)| *k == n)
}

#[cfg(test)]
mod tests {
    use super::super::field::PrimeField;
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(PrimeField::new(p).unwrap(), c)
    }

    fn product(factors: &[(FpPoly, u32)], field: PrimeField) -> FpPoly {
        factors
            .iter()
            .fold(FpPoly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let f = factor_mod_p(&poly(5, &[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_mod_3_is_irreducible() {
        let f = factor_mod_p(&poly(3, &[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(poly(3, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn x3_minus_x_mod_3_is_all_linear() {
        let f = factor_mod_p(&poly(3, &[0, -1, 0, 1])).unwrap();
        assert_eq!(
            f,
            vec![
                (poly(3, &[0, 1]), 1),
                (poly(3, &[1, 1]), 1),
                (poly(3, &[2, 1]), 1)
            ]
        );
    }

    #[test]
    fn rejects_non_monic() {
        assert!(matches!(
            factor_mod_p(&poly(5, &[1, 2])),
            Err(Error::NotMonic)
        ));
        assert!(factor_mod_p(&poly(5, &[1])).is_err());
    }

    #[test]
    fn pth_powers_and_multiplicities() {
        // (x+1)^5 (x^2+2)^2 over F_5
        let field = PrimeField::new(5).unwrap();
        let a = poly(5, &[1, 1]).pow(5);
        let b = poly(5, &[2, 0, 1]).pow(2);
        let f = a.mul(&b);
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(product(&fac, field), f);
        assert!(fac.contains(&(poly(5, &[1, 1]), 5)));
        assert!(fac.contains(&(poly(5, &[2, 0, 1]), 2)));
    }

    #[test]
    fn large_prime_uses_cantor_zassenhaus() {
        let p = 1_000_003;
        let field = PrimeField::new(p).unwrap();
        let f = poly(p, &[5, 1])
            .mul(&poly(p, &[17, 1]))
            .mul(&poly(p, &[99, 1]))
            .mul(&poly(p, &[2, 0, 1]));
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(product(&fac, field), f);
        assert!(fac.iter().all(|(g, _)| is_irreducible(g)));
    }

    #[test]
    fn characteristic_two() {
        let field = PrimeField::new(2).unwrap();
        // (x^2+x+1)(x^3+x+1)(x^3+x^2+1)(x+1)^3
        let f = poly(2, &[1, 1, 1])
            .mul(&poly(2, &[1, 1, 0, 1]))
            .mul(&poly(2, &[1, 0, 1, 1]))
            .mul(&poly(2, &[1, 1]).pow(3));
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(product(&fac, field), f);
        assert_eq!(fac.len(), 4);
    }

    #[test]
    fn splitting_types() {
        let t = |p, c: &[i64]| splitting_type(&poly(p, c)).unwrap();
        assert_eq!(t(5, &[1, 0, 1]), SplitOutcome::Type(SplittingType::new(vec![1, 1])));
        assert_eq!(t(3, &[1, 0, 1]), SplitOutcome::Type(SplittingType::new(vec![2])));
        assert_eq!(t(5, &[0, 0, 1]), SplitOutcome::SquarefreeViolation);
    }
}
