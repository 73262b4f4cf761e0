use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, invalid, Result};
use crate::ffpoly::{is_prime, FpPoly, PrimeField, POINT_COUNT_PRIME_LIMIT};

/// Which form of the curve bound was exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeilBound {
    /// `2 (D-1)(D-2) sqrt(p) + D^2` with `D = max(d, deg f)`.
    PlaneCurve,
    /// `2 (d-1)(deg f - 1) sqrt(p) + d^2`.
    Superelliptic,
    /// `2 g sqrt(p) + d` with the exact genus, only for `p` not dividing `d`.
    Genus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilViolation {
    pub bound: WeilBound,
    pub p: u64,
    pub d: u64,
    /// Monic, low to high.
    pub poly: Vec<u32>,
    pub count: u64,
    pub allowed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilScanReport {
    /// `(d, max deg f)` pairs scanned.
    pub ranges: Vec<(u64, usize)>,
    pub p_max: u64,
    /// Monic `(f, d, p)` triples visited, squarefree or not.
    pub polynomials: u128,
    /// Triples outside the tightest bound that turned out not squarefree.
    pub filtered_non_squarefree: u64,
    /// Violations of the plane-curve or superelliptic bound.
    pub violations: Vec<WeilViolation>,
    /// Violations of the exact-genus bound; reported, not asserted.
    pub genus_violations: Vec<WeilViolation>,
}

impl WeilScanReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn plane_curve_bound(d: u64, k: usize, p: u64) -> f64 {
    let dd = d.max(k as u64) as f64;
    2.0 * (dd - 1.0) * (dd - 2.0) * (p as f64).sqrt() + dd * dd
}

pub fn superelliptic_bound(d: u64, k: usize, p: u64) -> f64 {
    let d = d as f64;
    2.0 * (d - 1.0) * (k as f64 - 1.0) * (p as f64).sqrt() + d * d
}

/// `None` when `p | d`.
pub fn genus_bound(d: u64, k: usize, p: u64) -> Option<f64> {
    if d % p == 0 {
        return None;
    }
    let g = ((d - 1) * (k as u64 - 1) + 1 - num_integer::gcd(d, k as u64)) / 2;
    Some(2.0 * g as f64 * (p as f64).sqrt() + d as f64)
}

struct Plan {
    d: u64,
    k_max: usize,
    /// FFT of the root-count table.
    roots_hat: Vec<Complex<f64>>,
}

/// Checks `|#{y^d = f(x)} - p|` against the curve bounds for every monic
/// squarefree `f` with `1 <= deg f <= degf_max`, `2 <= d <= d_max`, and
/// primes `p <= p_max`.
pub fn weil_scan(d_max: u64, degf_max: usize, p_max: u64) -> Result<WeilScanReport> {
    if d_max < 2 {
        return Err(invalid("d_max must be at least 2"));
    }
    let ranges: Vec<(u64, usize)> = (2..=d_max).map(|d| (d, degf_max)).collect();
    weil_scan_ranges(&ranges, p_max)
}

/// As [`weil_scan`] with a separate degree cap per exponent.
///
/// Point counts depend on `f` only up to translation `x -> x + b`, so when
/// `p` does not divide `deg f` only `f` with vanishing subleading
/// coefficient are visited, each standing for `p` polynomials. For each
/// such `h` with `h(0) = 0` the counts of all `h + c` come from one circular
/// correlation of the value histogram of `h` with the table of `d`-th root
/// counts.
pub fn weil_scan_ranges(ranges: &[(u64, usize)], p_max: u64) -> Result<WeilScanReport> {
    check_budget("Weil scan prime", p_max as u128, POINT_COUNT_PRIME_LIMIT as u128)?;
    if ranges.iter().any(|&(d, k)| d < 2 || k == 0) {
        return Err(invalid("exponents must be >= 2 and degree caps >= 1"));
    }
    let mut report = WeilScanReport {
        ranges: ranges.to_vec(),
        p_max,
        polynomials: 0,
        filtered_non_squarefree: 0,
        violations: Vec::new(),
        genus_violations: Vec::new(),
    };
    let k_max = ranges.iter().map(|r| r.1).max().unwrap_or(0);
    for p in (2..=p_max).filter(|&p| is_prime(p)) {
        let field = PrimeField::new(p)?;
        let mut planner = FftPlanner::<f64>::new();
        let fwd = planner.plan_fft_forward(p as usize);
        let inv = planner.plan_fft_inverse(p as usize);
        let plans: Vec<Plan> = ranges
            .iter()
            .map(|&(d, k_max)| {
                let mut buf: Vec<Complex<f64>> = field
                    .root_count_table(d)
                    .into_iter()
                    .map(|r| Complex::new(r as f64, 0.0))
                    .collect();
                fwd.process(&mut buf);
                Plan {
                    d,
                    k_max,
                    roots_hat: buf,
                }
            })
            .collect();
        for k in 1..=k_max {
            let active: Vec<&Plan> = plans.iter().filter(|pl| pl.k_max >= k).collect();
            if active.is_empty() {
                continue;
            }
            scan_degree(field, k, &active, &fwd, &inv, &mut report);
        }
    }
    Ok(report)
}

/// `work[c] = p * sum_v H[v] R[v + c]` from the transforms of `H` and `R`.
fn correlate(
    hist_hat: &[Complex<f64>],
    roots_hat: &[Complex<f64>],
    work: &mut [Complex<f64>],
    inv: &Arc<dyn Fft<f64>>,
) {
    for (w, (h, r)) in work.iter_mut().zip(hist_hat.iter().zip(roots_hat)) {
        *w = h.conj() * r;
    }
    inv.process(work);
}

/// Point counts of `y^d = h(x) + c` for every `c` in `F_p`, indexed by `c`.
pub fn shifted_point_counts(h: &FpPoly, d: u64) -> Result<Vec<u64>> {
    let field = h.field();
    check_budget("point count prime", field.p64() as u128, POINT_COUNT_PRIME_LIMIT as u128)?;
    let p = field.p() as usize;
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(p);
    let inv = planner.plan_fft_inverse(p);
    let mut roots: Vec<Complex<f64>> = field
        .root_count_table(d)
        .into_iter()
        .map(|r| Complex::new(r as f64, 0.0))
        .collect();
    fwd.process(&mut roots);
    let mut hist = vec![Complex::new(0.0, 0.0); p];
    for x in 0..field.p() {
        hist[h.eval(x) as usize].re += 1.0;
    }
    fwd.process(&mut hist);
    let mut work = vec![Complex::new(0.0, 0.0); p];
    correlate(&hist, &roots, &mut work, &inv);
    Ok(work.iter().map(|z| (z.re / p as f64).round() as u64).collect())
}

struct Found {
    poly: Vec<u32>,
    d: u64,
    count: u64,
}

fn scan_degree(
    field: PrimeField,
    k: usize,
    plans: &[&Plan],
    fwd: &Arc<dyn Fft<f64>>,
    inv: &Arc<dyn Fft<f64>>,
    report: &mut WeilScanReport,
) {
    let p = field.p64();
    let pu = p as usize;
    // free coefficients of h among x^1 .. x^(k-1)
    let normalized = k >= 2 && k as u64 % p != 0;
    let free: Vec<usize> = (1..k).filter(|&i| !(normalized && i == k - 1)).collect();
    let classes = p.pow(free.len() as u32);
    let weight = if normalized { p } else { 1 };
    report.polynomials += (classes * p * weight) as u128 * plans.len() as u128;

    // per-(d) tightest allowed deviation
    let thresholds: Vec<f64> = plans
        .iter()
        .map(|pl| {
            let a = plane_curve_bound(pl.d, k, p).min(superelliptic_bound(pl.d, k, p));
            genus_bound(pl.d, k, p).map_or(a, |g| a.min(g))
        })
        .collect();

    let found: Vec<Found> = (0..classes)
        .into_par_iter()
        .map_init(
            || (vec![Complex::new(0.0, 0.0); pu], vec![Complex::new(0.0, 0.0); pu], vec![0u32; k + 1]),
            |(hist, work, coeffs), idx| {
                coeffs.iter_mut().for_each(|c| *c = 0);
                coeffs[k] = 1;
                let mut r = idx;
                for &i in &free {
                    coeffs[i] = (r % p) as u32;
                    r /= p;
                }
                hist.iter_mut().for_each(|z| *z = Complex::new(0.0, 0.0));
                for x in 0..field.p() {
                    let mut v = 0u32;
                    for &c in coeffs.iter().rev() {
                        v = field.add(field.mul(v, x), c);
                    }
                    hist[v as usize].re += 1.0;
                }
                fwd.process(hist);
                let mut out = Vec::new();
                for (pl, &thr) in plans.iter().zip(&thresholds) {
                    correlate(hist, &pl.roots_hat, work, inv);
                    for (c, z) in work.iter().enumerate() {
                        let count = (z.re / p as f64).round() as u64;
                        if (count as f64 - p as f64).abs() > thr {
                            let mut poly = coeffs.clone();
                            poly[0] = (c % pu) as u32;
                            out.push(Found {
                                poly,
                                d: pl.d,
                                count,
                            });
                        }
                    }
                }
                out
            },
        )
        .flatten()
        .collect();

    for f in found {
        let poly = FpPoly::new(field, f.poly.clone());
        if !poly.is_squarefree() {
            report.filtered_non_squarefree += 1;
            continue;
        }
        let dev = (f.count as f64 - p as f64).abs();
        let mut push = |bound: WeilBound, allowed: f64, genus: bool| {
            if dev > allowed {
                let v = WeilViolation {
                    bound,
                    p,
                    d: f.d,
                    poly: f.poly.clone(),
                    count: f.count,
                    allowed,
                };
                if genus {
                    report.genus_violations.push(v);
                } else {
                    report.violations.push(v);
                }
            }
        };
        push(WeilBound::PlaneCurve, plane_curve_bound(f.d, k, p), false);
        push(WeilBound::Superelliptic, superelliptic_bound(f.d, k, p), false);
        if let Some(g) = genus_bound(f.d, k, p) {
            push(WeilBound::Genus, g, true);
        }
    }
}
