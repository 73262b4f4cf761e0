//! Symplectic matrices with a prescribed reciprocal characteristic
//! polynomial, in the block form `M = [[0, B], [-(B^t)^{-1}, D]]`.
//!
//! For `p(x) = x^{2n} + a_1 x^{2n-1} + ... + a_n x^n + ... + a_1 x + 1` put
//! `a_0 = 1`, `g_i = a_{i-1} - a_i`, `b_2 = g_1 + 1` and
//! `b_i = g_{i-1} + sum_{j=2}^{i-1} b_j g_{i-j}`. Then `B` is the Hankel
//! matrix with ones on the anti-diagonal and `b_{s+1}` on the `s`-th
//! anti-diagonal below it, and `D = E + F` with `E` tridiagonal (ones off the
//! diagonal, `-1` in the corner) and `F` holding `g_n, ..., g_1` down its last
//! column. `B` is a row reversal of an upper unitriangular Toeplitz matrix, so
//! `det B = +-1` and its inverse is integral.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{FpPoly, PrimeField};
use crate::matgroup::{is_symplectic, is_symplectic_fp, FpMatrix, IntMatrix};
use crate::zpoly::{is_reciprocal, IntPoly};

/// Ring operations the construction needs.
trait KRing<T> {
    fn zero(&self) -> T;
    fn one(&self) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
}

struct Z;

impl KRing<BigInt> for Z {
    fn zero(&self) -> BigInt {
        BigInt::from(0)
    }
    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

impl KRing<u32> for PrimeField {
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::add(*self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::sub(*self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::mul(*self, *a, *b)
    }
}

/// Row-major blocks `B`, `D` and `C = -(B^t)^{-1}`, each `n x n`.
struct RawBlocks<T> {
    b: Vec<T>,
    c: Vec<T>,
    d: Vec<T>,
    e: Vec<T>,
    f: Vec<T>,
}

/// `a` holds `a_1..a_n`.
fn build<T: Clone, R: KRing<T>>(ring: &R, a: &[T]) -> RawBlocks<T> {
    let n = a.len();
    let mut av = vec![ring.one()];
    av.extend_from_slice(a);
    // g[i] for i in 1..=n
    let mut g = vec![ring.zero()];
    for i in 1..=n {
        g.push(ring.sub(&av[i - 1], &av[i]));
    }
    // b[i] for i in 2..=n
    let mut b = vec![ring.zero(); n + 1];
    if n >= 2 {
        b[2] = ring.add(&g[1], &ring.one());
        for i in 3..=n {
            let mut v = g[i - 1].clone();
            for j in 2..i {
                v = ring.add(&v, &ring.mul(&b[j], &g[i - j]));
            }
            b[i] = v;
        }
    }
    let mut bm = vec![ring.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let s = (i + j) as isize - (n as isize - 1);
            if s == 0 {
                bm[i * n + j] = ring.one();
            } else if s > 0 {
                bm[i * n + j] = b[s as usize + 1].clone();
            }
        }
    }
    // B = P U with U upper unitriangular Toeplitz, first row (1, b_2, ..., b_n);
    // the series inverse e of that row gives (B^t)^{-1}[i][j] = e_{n-1-i-j}.
    let mut e = vec![ring.one()];
    for k in 1..n {
        let mut v = ring.zero();
        for j in 1..=k {
            v = ring.add(&v, &ring.mul(&b[j + 1], &e[k - j]));
        }
        e.push(ring.sub(&ring.zero(), &v));
    }
    let mut cm = vec![ring.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j <= n - 1 {
                cm[i * n + j] = ring.sub(&ring.zero(), &e[n - 1 - i - j]);
            }
        }
    }
    let mut em = vec![ring.zero(); n * n];
    for i in 0..n {
        if i + 1 < n {
            em[i * n + i + 1] = ring.one();
            em[(i + 1) * n + i] = ring.one();
        }
    }
    em[0] = ring.sub(&em[0], &ring.one());
    let mut fm = vec![ring.zero(); n * n];
    for i in 0..n {
        fm[i * n + n - 1] = g[n - i].clone();
    }
    let dm = em.iter().zip(&fm).map(|(x, y)| ring.add(x, y)).collect();
    RawBlocks {
        b: bm,
        c: cm,
        d: dm,
        e: em,
        f: fm,
    }
}

fn assemble<T: Clone>(zero: T, n: usize, raw: &RawBlocks<T>) -> Vec<T> {
    let w = 2 * n;
    let mut m = vec![zero; w * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + n + j] = raw.b[i * n + j].clone();
            m[(n + i) * w + j] = raw.c[i * n + j].clone();
            m[(n + i) * w + n + j] = raw.d[i * n + j].clone();
        }
    }
    m
}

/// The integral blocks of the construction, with the assembled matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KirbyBlocks {
    pub n: usize,
    pub b: IntMatrix,
    pub e: IntMatrix,
    pub f: IntMatrix,
    pub d: IntMatrix,
    pub m: IntMatrix,
}

fn half_coefficients(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = (coeffs.len() - 1) / 2;
    // a_i is the coefficient of x^{2n-i}
    (1..=n).map(|i| coeffs[2 * n - i].clone()).collect()
}

fn check_input(p: &IntPoly) -> Result<()> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = p.deg();
    if d < 2 || d % 2 == 1 {
        return Err(Error::Degree {
            got: d,
            min: 2,
            max: usize::MAX,
        });
    }
    if !is_reciprocal(p) {
        return Err(Error::InvalidArgument(format!("{p} is not reciprocal")));
    }
    Ok(())
}

/// Blocks and assembled matrix over `Z`, without verification.
pub fn kirby_blocks(p: &IntPoly) -> Result<KirbyBlocks> {
    check_input(p)?;
    let n = p.deg() / 2;
    let raw = build(&Z, &half_coefficients(p.coeffs()));
    let mat = |v: Vec<BigInt>| IntMatrix::new(n, v).expect("square block");
    let m = IntMatrix::new(2 * n, assemble(Z.zero(), n, &raw)).expect("square");
    Ok(KirbyBlocks {
        n,
        b: mat(raw.b),
        e: mat(raw.e),
        f: mat(raw.f),
        d: mat(raw.d),
        m,
    })
}

/// A symplectic integer matrix with characteristic polynomial `p`. Both
/// properties are re-verified exactly before returning.
pub fn kirby_matrix(p: &IntPoly) -> Result<IntMatrix> {
    let blocks = kirby_blocks(p)?;
    let m = blocks.m;
    let sym = is_symplectic(&m)?;
    let cp = m.char_poly();
    if !sym.holds() || cp != *p {
        return Err(Error::Construction(format!(
            "candidate {m} has char poly {cp}, target {p}, failing identities {:?}",
            sym.failing
        )));
    }
    Ok(m)
}

/// Same construction carried out natively over `F_q`.
pub fn kirby_matrix_fp(p: &FpPoly) -> Result<FpMatrix> {
    let field = p.field();
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = p.deg();
    if d < 2 || d % 2 == 1 {
        return Err(Error::Degree {
            got: d,
            min: 2,
            max: usize::MAX,
        });
    }
    let c = p.coeffs();
    if !c.iter().eq(c.iter().rev()) {
        return Err(Error::InvalidArgument(format!("{p:?} is not reciprocal")));
    }
    let n = d / 2;
    let a: Vec<u32> = (1..=n).map(|i| c[2 * n - i]).collect();
    let raw = build(&field, &a);
    let m = FpMatrix::new(field, 2 * n, assemble(0, n, &raw))?;
    let cp = m.char_poly();
    let sym = is_symplectic_fp(&m)?;
    if !sym || cp != *p {
        return Err(Error::Construction(format!(
            "candidate {m:?} has char poly {cp:?}, target {p:?}, symplectic {sym}"
        )));
    }
    Ok(m)
}

/// Checks `det(xI - M) = det((x^2 + 1) I - x D)` at the `2n + 1` points
/// `x = 0, ..., 2n`; both sides have degree at most `2n`.
pub fn kirby_determinant_identity_check(m: &IntMatrix, d: &IntMatrix) -> bool {
    let n = d.dim();
    if m.dim() != 2 * n {
        return false;
    }
    let id_m = IntMatrix::identity(2 * n);
    let id_d = IntMatrix::identity(n);
    (0..=2 * n as i64).all(|x| {
        let x = BigInt::from(x);
        let lhs = id_m.scale(&x).sub(m).det();
        let rhs = id_d.scale(&(&x * &x + 1)).sub(&d.scale(&x)).det();
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zpoly::IntPoly;

    fn z(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn quadratic_closed_form() {
        for a in -5..=5 {
            let m = kirby_matrix(&z(&[1, a, 1])).unwrap();
            assert_eq!(m, IntMatrix::from_rows(&[vec![0, 1], vec![-1, -a]]).unwrap());
        }
    }

    #[test]
    fn quartic_examples() {
        let m = kirby_matrix(&z(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(m.char_poly(), z(&[1, 0, 0, 0, 1]));
        let blocks = kirby_blocks(&z(&[1, -3, 4, -3, 1])).unwrap();
        assert!(kirby_determinant_identity_check(&blocks.m, &blocks.d));
        assert_eq!(blocks.b.det().magnitude(), &num_bigint::BigUint::from(1u32));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(kirby_matrix(&z(&[2, 1, 1])).is_err());
        assert!(kirby_matrix(&z(&[1, 1, 1, 1])).is_err());
        assert!(kirby_matrix(&z(&[1, 1, 2])).is_err());
    }

    #[test]
    fn determinant_of_b_alternates() {
        let sign = |n: usize| {
            let mut c = vec![0i64; 2 * n + 1];
            c[0] = 1;
            c[2 * n] = 1;
            kirby_blocks(&z(&c)).unwrap().b.det()
        };
        assert_eq!(sign(1), BigInt::from(1));
        assert_eq!(sign(2), BigInt::from(-1));
        assert_eq!(sign(3), BigInt::from(-1));
        assert_eq!(sign(4), BigInt::from(1));
    }

    #[test]
    fn corrupted_b_breaks_identity() {
        let blocks = kirby_blocks(&z(&[1, 2, -1, 2, 1])).unwrap();
        let n = blocks.n;
        let mut bad = blocks.m.clone();
        bad.set(0, n + n - 1, BigInt::from(7));
        assert!(!kirby_determinant_identity_check(&bad, &blocks.d));
    }

    #[test]
    fn fp_matches_integer_reduction() {
        let p = z(&[1, 3, -2, 5, -2, 3, 1]);
        let mz = kirby_matrix(&p).unwrap();
        for q in [3u64, 5, 7] {
            let f = PrimeField::new(q).unwrap();
            assert_eq!(kirby_matrix_fp(&p.to_fp(f)).unwrap(), mz.to_fp(f));
        }
    }
}
