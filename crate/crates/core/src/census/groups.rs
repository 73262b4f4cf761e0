use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{BoundCheck, CensusReport};
use crate::error::{invalid, Error, Result};
use crate::ffpoly::{has_factor_with_constant, is_irreducible, FpPoly, PrimeField};
use crate::matgroup::{enumerate_standard, FiniteGroupTable, GroupKind};

pub const REDUCIBLE: &str = "reducible";
pub const CONST_TERM_ONE: &str = "proper_factor_const_term_one";
pub const TRACELESS: &str = "traceless";

fn table_for(kind: GroupKind, p: u64, budget: usize) -> Result<FiniteGroupTable> {
    if matches!(kind, GroupKind::GL(_)) {
        return Err(invalid("census runs over SL or Sp"));
    }
    let table = enumerate_standard(kind, p, budget)?;
    let expected = kind.order_mod(p);
    if BigUint::from(table.len()) != expected {
        return Err(Error::Construction(format!(
            "{kind} over F_{p}: enumerated {} elements, order formula gives {expected}",
            table.len()
        )));
    }
    Ok(table)
}

fn count_where<F>(table: &FiniteGroupTable, pred: F) -> u128
where
    F: Fn(&crate::matgroup::FpMatrix) -> bool + Sync,
{
    table.elements().par_iter().filter(|m| pred(m)).count() as u128
}

fn population(kind: GroupKind, p: u64) -> String {
    format!("{kind} over F_{p}")
}

/// Generic-reducibility bound for `kind`: `1 - 1/(2n)` on `SL(n)`, `1 - 1/(3n)`
/// on `Sp(2n)`.
pub fn reducibility_bound(kind: GroupKind) -> Result<BigRational> {
    let one = BigRational::from_integer(BigInt::from(1));
    match kind {
        GroupKind::SL(n) => Ok(one - BigRational::new(1.into(), BigInt::from(2 * n))),
        GroupKind::Sp(n) => Ok(one - BigRational::new(1.into(), BigInt::from(3 * n))),
        GroupKind::GL(_) => Err(invalid("no reducibility bound for GL")),
    }
}

/// Elements whose characteristic polynomial is reducible over `F_p`. The
/// bound is compared always but only asserted for `p > 4`.
pub fn census_reducible(kind: GroupKind, p: u64, budget: usize) -> Result<CensusReport> {
    let table = table_for(kind, p, budget)?;
    let count = count_where(&table, |m| !is_irreducible(&m.char_poly()));
    let mut report = CensusReport::new(population(kind, p), table.len() as u128);
    report.record(REDUCIBLE, count);
    let bound = reducibility_bound(kind)?;
    let frac = report.fraction(REDUCIBLE);
    report.bounds.push(BoundCheck {
        name: format!("{REDUCIBLE} fraction below generic bound"),
        value: frac.to_string(),
        bound: format!("< {bound}"),
        holds: frac < bound,
        hypothesis_met: p > 4,
    });
    Ok(report)
}

/// `SL(n, F_p)` elements whose characteristic polynomial has a monic factor of
/// degree strictly between 0 and `n` with constant term 1. Reports
/// `p * fraction`.
pub fn census_factor_const_term_one(n: usize, p: u64, budget: usize) -> Result<CensusReport> {
    let kind = GroupKind::SL(n);
    let table = table_for(kind, p, budget)?;
    let count = count_where(&table, |m| {
        let f = m.char_poly();
        (1..n).any(|k| has_factor_with_constant(&f, k, 1))
    });
    let mut report = CensusReport::new(population(kind, p), table.len() as u128);
    report.set_scale(p);
    report.record(CONST_TERM_ONE, count);
    Ok(report)
}

/// Elements of trace zero. Reports `p * fraction`.
pub fn census_traceless(kind: GroupKind, p: u64, budget: usize) -> Result<CensusReport> {
    let table = table_for(kind, p, budget)?;
    let count = count_where(&table, |m| m.trace() == 0);
    let mut report = CensusReport::new(population(kind, p), table.len() as u128);
    report.set_scale(p);
    report.record(TRACELESS, count);
    Ok(report)
}

/// Number of `GL(N, F_p)` matrices with a given characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorelFiber {
    /// Coefficients low to high.
    pub poly: Vec<u32>,
    pub p: u64,
    pub count: u64,
    pub lower: u64,
    pub upper: u64,
}

impl BorelFiber {
    pub fn holds(&self) -> bool {
        self.lower <= self.count && self.count <= self.upper
    }
}

fn fiber_bounds(n: usize, p: u64) -> (u64, u64) {
    let e = (n * n - n) as u32;
    (p.saturating_sub(3).pow(e), (p + 3).pow(e))
}

/// Characteristic-polynomial histogram of `GL(n, F_p)`.
pub fn char_poly_histogram(n: usize, p: u64, budget: usize) -> Result<BTreeMap<Vec<u32>, u64>> {
    let kind = GroupKind::GL(n);
    let table = enumerate_standard(kind, p, budget)?;
    if BigUint::from(table.len()) != kind.order_mod(p) {
        return Err(Error::Construction(format!(
            "{kind} over F_{p}: enumerated {} elements",
            table.len()
        )));
    }
    let polys: Vec<Vec<u32>> = table
        .elements()
        .par_iter()
        .map(|m| m.char_poly().into_coeffs())
        .collect();
    let mut hist = BTreeMap::new();
    for f in polys {
        *hist.entry(f).or_insert(0u64) += 1;
    }
    Ok(hist)
}

/// Exact fiber of monic `f` with `f(0) != 0` in `GL(deg f, F_p)`, with the
/// bounds `(p-3)^(N^2-N) <= count <= (p+3)^(N^2-N)`.
pub fn census_borel_fiber(f: &FpPoly, budget: usize) -> Result<BorelFiber> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.deg();
    if n == 0 {
        return Err(invalid("polynomial must be nonconstant"));
    }
    if f.coeff(0) == 0 {
        return Err(invalid("constant term must be nonzero"));
    }
    let p = f.field().p64();
    let hist = char_poly_histogram(n, p, budget)?;
    let count = hist.get(f.coeffs()).copied().unwrap_or(0);
    let (lower, upper) = fiber_bounds(n, p);
    Ok(BorelFiber {
        poly: f.coeffs().to_vec(),
        p,
        count,
        lower,
        upper,
    })
}

/// Fibers of every monic degree-`n` `f` with `f(0) != 0`, from one
/// enumeration of `GL(n, F_p)`.
pub fn borel_fiber_scan(n: usize, p: u64, budget: usize) -> Result<Vec<BorelFiber>> {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(invalid("degree must be positive"));
    }
    let hist = char_poly_histogram(n, p, budget)?;
    let (lower, upper) = fiber_bounds(n, p);
    let mut out = Vec::new();
    let mut coeffs = vec![0u32; n + 1];
    coeffs[n] = 1;
    let total = p.pow(n as u32);
    for idx in 0..total {
        let mut r = idx;
        for c in coeffs.iter_mut().take(n) {
            *c = (r % p) as u32;
            r /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let f = FpPoly::new(field, coeffs.clone());
        out.push(BorelFiber {
            count: hist.get(f.coeffs()).copied().unwrap_or(0),
            poly: f.into_coeffs(),
            p,
            lower,
            upper,
        });
    }
    Ok(out)
}

/// `p * count / total` as a float, for band checks.
pub fn scaled_float(report: &CensusReport, event: &str) -> f64 {
    report
        .scaled_fraction(event)
        .and_then(|r| r.to_f64())
        .unwrap_or(f64::NAN)
}
