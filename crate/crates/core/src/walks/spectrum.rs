use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::dp::decoration_actions;
use super::graph::DecoratedGraph;
use crate::error::{check_budget, invalid, Error, Result};
use crate::matgroup::norms::eigenvalues;
use crate::matgroup::FiniteGroupTable;

/// Largest operator dimension handled by a dense eigensolve.
pub const DENSE_SPECTRUM_LIMIT: usize = 3000;
/// Moduli reported when the operator is too large for a dense solve.
pub const ITERATIVE_TOP_K: usize = 5;
const ITERATIVE_BLOCK: usize = 16;
const ITERATIVE_MAX_STEPS: usize = 20_000;
const ITERATIVE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumMethod {
    Dense,
    SubspaceIteration,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusClass {
    pub modulus: f64,
    pub multiplicity: usize,
}

/// Eigenvalue moduli of the transfer operator, largest first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferSpectrum {
    pub dimension: usize,
    pub method: SpectrumMethod,
    /// Every eigenvalue modulus with multiplicity (top `ITERATIVE_TOP_K`
    /// only for the iterative method).
    pub moduli: Vec<f64>,
    pub classes: Vec<ModulusClass>,
}

impl TransferSpectrum {
    pub fn lambda1(&self) -> f64 {
        self.moduli.first().copied().unwrap_or(0.0)
    }

    /// Second largest modulus counted with multiplicity.
    pub fn lambda2(&self) -> f64 {
        self.moduli.get(1).copied().unwrap_or(0.0)
    }

    pub fn ratio(&self) -> f64 {
        self.lambda2() / self.lambda1()
    }
}

fn group_moduli(moduli: &[f64]) -> Vec<ModulusClass> {
    let scale = moduli.first().copied().unwrap_or(1.0).max(1.0);
    let mut classes: Vec<ModulusClass> = Vec::new();
    for &m in moduli {
        match classes.last_mut() {
            Some(c) if (c.modulus - m).abs() <= 1e-8 * scale => c.multiplicity += 1,
            _ => classes.push(ModulusClass {
                modulus: m,
                multiplicity: 1,
            }),
        }
    }
    classes
}

/// Dense transfer operator on functions of `(vertex, element)`, states
/// indexed `v * |G| + g`.
pub fn transfer_matrix(graph: &DecoratedGraph, table: &FiniteGroupTable) -> Result<DMatrix<f64>> {
    let n = graph.vertex_count();
    let order = table.len();
    let dim = n * order;
    check_budget("dense transfer dimension", dim as u128, DENSE_SPECTRUM_LIMIT as u128)?;
    let (_, actions) = decoration_actions(graph, table)?;
    let mut t = DMatrix::<f64>::zeros(dim, dim);
    for v in 0..n {
        for (w, mult) in graph.neighbors(v) {
            for g in 0..order {
                t[(w * order + actions[w][g] as usize, v * order + g)] += mult as f64;
            }
        }
    }
    Ok(t)
}

pub fn transfer_spectrum(graph: &DecoratedGraph, table: &FiniteGroupTable) -> Result<TransferSpectrum> {
    let dim = graph.vertex_count() * table.len();
    if dim <= DENSE_SPECTRUM_LIMIT {
        let t = transfer_matrix(graph, table)?;
        let mut moduli: Vec<f64> = eigenvalues(&t)?.iter().map(|z| z.norm()).collect();
        moduli.sort_by(|a, b| b.total_cmp(a));
        let classes = group_moduli(&moduli);
        return Ok(TransferSpectrum {
            dimension: dim,
            method: SpectrumMethod::Dense,
            moduli,
            classes,
        });
    }
    check_budget("transfer states", dim as u128, super::dp::MAX_WALK_STATES as u128)?;
    let moduli = subspace_top_moduli(graph, table)?;
    let classes = group_moduli(&moduli);
    Ok(TransferSpectrum {
        dimension: dim,
        method: SpectrumMethod::SubspaceIteration,
        moduli,
        classes,
    })
}

/// Orthogonal iteration on a block of `ITERATIVE_BLOCK` vectors, with
/// Rayleigh-Ritz extraction of the top moduli.
fn subspace_top_moduli(graph: &DecoratedGraph, table: &FiniteGroupTable) -> Result<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let n = graph.vertex_count();
    let order = table.len();
    let dim = n * order;
    let (_, actions) = decoration_actions(graph, table)?;
    let apply = |x: &DMatrix<f64>| -> DMatrix<f64> {
        let mut y = DMatrix::<f64>::zeros(dim, x.ncols());
        for c in 0..x.ncols() {
            for v in 0..n {
                for (w, mult) in graph.neighbors(v) {
                    let m = mult as f64;
                    for g in 0..order {
                        y[(w * order + actions[w][g] as usize, c)] += m * x[(v * order + g, c)];
                    }
                }
            }
        }
        y
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7370_6563);
    let b = ITERATIVE_BLOCK.min(dim);
    let mut q = DMatrix::<f64>::from_fn(dim, b, |_, _| rng.gen_range(-1.0..1.0))
        .qr()
        .q();
    let mut prev: Vec<f64> = Vec::new();
    for step in 1..=ITERATIVE_MAX_STEPS {
        let y = apply(&q);
        if step % 10 == 0 {
            let h = q.transpose() * &y;
            let mut moduli: Vec<f64> = eigenvalues(&h)?.iter().map(|z| z.norm()).collect();
            moduli.sort_by(|a, b| b.total_cmp(a));
            moduli.truncate(ITERATIVE_TOP_K);
            let scale = moduli[0].max(1e-300);
            if prev.len() == moduli.len()
                && prev.iter().zip(&moduli).all(|(a, b)| (a - b).abs() <= ITERATIVE_TOL * scale)
            {
                return Ok(moduli);
            }
            prev = moduli;
        }
        q = y.qr().q();
    }
    Err(Error::NonConvergence(format!(
        "transfer spectrum subspace iteration exceeded {ITERATIVE_MAX_STEPS} steps"
    )))
}

/// Least-squares fit of `ln TV(N) = slope * N + intercept`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub points: usize,
    /// Every TV value was zero: exact uniformity was reached and there is no
    /// rate to fit.
    pub degenerate: bool,
}

/// Natural log of a positive rational, safe for huge numerators and
/// denominators.
pub fn ln_rational(x: &BigRational) -> f64 {
    fn ln_big(v: &num_bigint::BigInt) -> f64 {
        let bits = v.bits();
        if bits <= 900 {
            v.to_f64().expect("finite").ln()
        } else {
            let shift = bits - 900;
            (v >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
    ln_big(x.numer()) - ln_big(x.denom())
}

pub fn fit_decay_rate(series: &[(usize, BigRational)]) -> Result<DecayFit> {
    if series.iter().any(|(_, v)| v.is_negative()) {
        return Err(invalid("TV values must be nonnegative"));
    }
    if !series.is_empty() && series.iter().all(|(_, v)| v.is_zero()) {
        return Ok(DecayFit {
            slope: f64::NEG_INFINITY,
            intercept: f64::NAN,
            residual_rms: 0.0,
            points: series.len(),
            degenerate: true,
        });
    }
    if series.len() < 5 || series.iter().any(|(_, v)| v.is_zero()) {
        return Err(invalid("decay fit needs at least 5 points, all positive"));
    }
    let pts: Vec<(f64, f64)> = series.iter().map(|(n, v)| (*n as f64, ln_rational(v))).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(invalid("decay fit needs at least two distinct lengths"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    Ok(DecayFit {
        slope,
        intercept,
        residual_rms: (rss / k).sqrt(),
        points: pts.len(),
        degenerate: false,
    })
}
