use std::collections::BTreeSet;

use super::factor::factor_mod_p;
use super::field::{prime_factors, PrimeField};
use super::poly::FpPoly;
use super::splitting::odometer;
use crate::error::{check_budget, invalid, Error, Result};

/// Default bound on the number of polynomials an exhaustive count may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// Largest prime accepted by [`superelliptic_point_count`].
pub const POINT_COUNT_PRIME_LIMIT: u64 = 10_000;

/// Number of monic `f` of degree `d` over `F_p` with `f(0) = beta` that have a
/// monic factor of degree `m` with constant term `alpha`.
pub fn count_restricted_reducible(
    d: usize,
    p: u64,
    beta: u32,
    alpha: u32,
    m: usize,
    budget: u128,
) -> Result<u64> {
    let field = PrimeField::new(p)?;
    if m == 0 || m >= d {
        return Err(invalid(format!("factor degree {m} must lie in 1..{d}")));
    }
    let size = (p as u128).checked_pow(d as u32 - 1).unwrap_or(u128::MAX);
    check_budget("restricted reducibility count", size, budget)?;
    let (beta, alpha) = (beta % field.p(), alpha % field.p());

    let mut coeffs = vec![0u32; d + 1];
    coeffs[0] = beta;
    coeffs[d] = 1;
    let free: Vec<usize> = (1..d).collect();
    let mut count = 0u64;
    odometer(&mut coeffs, &free, field.p(), |c| {
        let f = FpPoly::new(field, c.to_vec());
        if has_factor_with_constant(&f, m, alpha) {
            count += 1;
        }
    });
    Ok(count)
}

/// Whether monic `f` has a monic divisor of degree `m` and constant term
/// `alpha`, decided from its irreducible factorization.
pub fn has_factor_with_constant(f: &FpPoly, m: usize, alpha: u32) -> bool {
    let field = f.field();
    let factors = factor_mod_p(f).expect("monic polynomial of positive degree");
    // reachable (degree, constant term) of sub-products
    let mut reach: BTreeSet<(usize, u32)> = BTreeSet::from([(0, 1)]);
    for (g, mult) in &factors {
        let (dg, cg) = (g.deg(), g.coeff(0));
        let snapshot: Vec<_> = reach.iter().copied().collect();
        for (deg, c) in snapshot {
            let mut acc = c;
            for j in 1..=*mult as usize {
                acc = field.mul(acc, cg);
                if deg + j * dg > m {
                    break;
                }
                reach.insert((deg + j * dg, acc));
            }
        }
    }
    reach.contains(&(m, alpha % field.p()))
}

/// `f(a x + b) / a^d`: the monic image of `f` under the affine substitution.
pub fn affine_substitute(f: &FpPoly, a: u32, b: u32) -> Result<FpPoly> {
    let field = f.field();
    if a % field.p() == 0 {
        return Err(invalid("affine substitution needs a nonzero scale"));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let lin = FpPoly::new(field, vec![b % field.p(), a % field.p()]);
    let image = f.compose(&lin);
    let scale = field.inv(field.pow(a, f.deg() as u64));
    Ok(image.scale(scale))
}

/// Whether the affine group `x -> a x + b` acts freely on `f` by
/// [`affine_substitute`], for `0 < deg f < p`.
///
/// Translations never fix `f` when `deg f < p`. A map with `a != 1` fixes a
/// unique point, and it can only stabilise `f` if that point is the centroid
/// `-c_{d-1} / d`. Writing `g(z) = f(z + centroid)`, the stabiliser is the set of
/// `a` with `a^(d-i) = 1` for every nonzero `g_i`, so the orbit is free exactly
/// when `gcd(p - 1, d - i : g_i != 0, i < d) = 1`.
pub fn affine_orbit_is_free(f: &FpPoly) -> Result<bool> {
    let field = f.field();
    let d = f.deg();
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if d == 0 || d as u64 >= field.p64() {
        return Err(invalid(format!(
            "freeness criterion needs 0 < deg f < p, got deg {d} over F_{}",
            field.p()
        )));
    }
    let shift = field.neg(field.mul(f.coeff(d - 1), field.inv(d as u32)));
    let g = f.compose(&FpPoly::linear(field, shift));
    let g_exps = (0..d).filter(|&i| g.coeff(i) != 0).map(|i| (d - i) as u64);
    let order = g_exps.fold(field.p64() - 1, num_integer::gcd);
    Ok(order == 1)
}

/// Number of `(x, y)` in `F_p^2` with `y^d = f(x)`.
pub fn superelliptic_point_count(f: &FpPoly, d: u64) -> Result<u64> {
    let field = f.field();
    if d < 2 {
        return Err(invalid("exponent must be at least 2"));
    }
    check_budget(
        "superelliptic point count prime",
        field.p64() as u128,
        POINT_COUNT_PRIME_LIMIT as u128,
    )?;
    let roots = field.root_count_table(d);
    Ok((0..field.p())
        .map(|x| roots[f.eval(x) as usize] as u64)
        .sum())
}

/// Whether `y^d - f(x)` is absolutely irreducible: it is, unless `f` is a
/// `q`-th power for some prime `q | d`, or `4 | d` and `f = -4 h^4`.
///
/// Over the algebraic closure every constant is a `q`-th power and the
/// irreducible factors of `f` stay separable, so `f` is a `q`-th power exactly
/// when every multiplicity in its factorization is divisible by `q`. The
/// `-4 h^4` case already has all multiplicities divisible by 2.
pub fn absolutely_irreducible_superelliptic(f: &FpPoly, d: u64) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.deg() == 0 {
        return Err(invalid("polynomial must be nonconstant"));
    }
    if d < 2 {
        return Ok(true);
    }
    let mults: Vec<u64> = factor_mod_p(f)?.into_iter().map(|(_, m)| m as u64).collect();
    Ok(prime_factors(d)
        .into_iter()
        .all(|q| !mults.iter().all(|m| m % q == 0)))
}
