//! Floating-point matrix norms and spectra. Everything group-theoretic stays
//! exact; only this file touches `f64`.

use nalgebra::{ComplexField, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use super::eigen::eigenvalues;
use crate::error::{Error, Result};

pub const OPERATOR_NORM_TOL: f64 = 1e-10;
pub const OPERATOR_NORM_MAX_STEPS: usize = 100_000;

/// `sqrt(tr(A A^*))`.
pub fn frobenius_norm<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    m.iter().map(|v| v.clone().modulus_squared()).sum::<f64>().sqrt()
}

/// `max_{|v| = 1} |Av|`, by power iteration on `A^* A` until the Rayleigh
/// quotient moves by less than `OPERATOR_NORM_TOL` relative.
pub fn operator_norm<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<f64> {
    let n = m.ncols();
    if m.iter().all(|v| v.clone().modulus() == 0.0) {
        return Ok(0.0);
    }
    let gram = m.adjoint() * m;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f726d);
    let mut v: DVector<T> = DVector::from_fn(n, |_, _| T::from_real(rng.gen_range(0.5..1.5)));
    v /= T::from_real(v.norm());
    let mut prev = 0.0f64;
    for _ in 0..OPERATOR_NORM_MAX_STEPS {
        let w = &gram * &v;
        let lambda = v.dotc(&w).real();
        let wn = w.norm();
        if wn == 0.0 {
            return Ok(0.0);
        }
        v = w / T::from_real(wn);
        if (lambda - prev).abs() <= OPERATOR_NORM_TOL * lambda.abs() {
            return Ok(lambda.max(0.0).sqrt());
        }
        prev = lambda;
    }
    Err(Error::NonConvergence(format!(
        "operator norm power iteration exceeded {OPERATOR_NORM_MAX_STEPS} steps"
    )))
}

/// Largest eigenvalue modulus of a real square matrix.
pub fn spectral_radius(m: &DMatrix<f64>) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `|M^k|_F^{1/k}`, computed with per-step rescaling so large `k` does not
/// overflow.
pub fn frobenius_power_root(m: &DMatrix<f64>, k: u32) -> f64 {
    assert!(k >= 1, "power must be positive");
    let mut acc = DMatrix::<f64>::identity(m.nrows(), m.ncols());
    let mut log_scale = 0.0f64;
    for _ in 0..k {
        acc = m * acc;
        let s = frobenius_norm(&acc);
        if s == 0.0 {
            return 0.0;
        }
        acc /= s;
        log_scale += s.ln();
    }
    (log_scale / k as f64).exp()
}
