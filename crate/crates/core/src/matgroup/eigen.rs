//! Dense real eigenvalues: balancing, Householder reduction to Hessenberg
//! form, then Francis double-shift QR with exceptional shifts.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERS_PER_EIGENVALUE: usize = 300;

/// Eigenvalues of a real square matrix, in no particular order.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix required");
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let mut a = m.clone();
    balance(&mut a);
    let h = a.hessenberg().h();
    hqr(&h)
}

/// Diagonal similarity equalizing row and column norms (powers of two only,
/// so no rounding is introduced).
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= g;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix. Indices below are 1-based to
/// keep the deflation bookkeeping readable.
fn hqr(h: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let w = n + 1;
    let mut a = vec![0.0f64; w * w];
    for i in 0..n {
        for j in 0..n {
            a[(i + 1) * w + j + 1] = h[(i, j)];
        }
    }
    let ix = |i: usize, j: usize| i * w + j;
    let mut wr = vec![0.0f64; w];
    let mut wi = vec![0.0f64; w];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[ix(i, j)].abs();
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = 1;
            for ll in (2..=nn).rev() {
                let mut s = a[ix(ll - 1, ll - 1)].abs() + a[ix(ll, ll)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[ix(ll, ll - 1)].abs() + s == s {
                    a[ix(ll, ll - 1)] = 0.0;
                    l = ll;
                    break;
                }
            }
            let mut x = a[ix(nn, nn)];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[ix(nn - 1, nn - 1)];
            let mut ww = a[ix(nn, nn - 1)] * a[ix(nn - 1, nn)];
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + ww;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - ww / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_ITERS_PER_EIGENVALUE {
                return Err(Error::NonConvergence(format!(
                    "QR iteration exceeded {MAX_ITERS_PER_EIGENVALUE} sweeps for one eigenvalue"
                )));
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    a[ix(i, i)] -= x;
                }
                let s = a[ix(nn, nn - 1)].abs() + a[ix(nn - 1, nn - 2)].abs();
                // vary the shift so repeated exceptional sweeps cannot cycle
                let k = (its / 10) as f64;
                let s = s * (1.0 + 0.13 * (k * 1.7).sin());
                x = 0.75 * s;
                y = x;
                ww = -0.4375 * s * s;
            }
            its += 1;
            let (mut p, mut q, mut r): (f64, f64, f64);
            let mut m = nn - 2;
            loop {
                let z = a[ix(m, m)];
                let rr = x - z;
                let s = y - z;
                p = (rr * s - ww) / a[ix(m + 1, m)] + a[ix(m, m + 1)];
                q = a[ix(m + 1, m + 1)] - z - rr - s;
                r = a[ix(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[ix(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[ix(m - 1, m - 1)].abs() + z.abs() + a[ix(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[ix(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[ix(i, i - 3)] = 0.0;
                }
            }
            let mut k = m;
            while k + 1 <= nn {
                if k != m {
                    p = a[ix(k, k - 1)];
                    q = a[ix(k + 1, k - 1)];
                    r = 0.0;
                    if k != nn - 1 {
                        r = a[ix(k + 2, k - 1)];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[ix(k, k - 1)] = -a[ix(k, k - 1)];
                        }
                    } else {
                        a[ix(k, k - 1)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = a[ix(k, j)] + q * a[ix(k + 1, j)];
                        if k != nn - 1 {
                            pp += r * a[ix(k + 2, j)];
                            a[ix(k + 2, j)] -= pp * z;
                        }
                        a[ix(k + 1, j)] -= pp * y;
                        a[ix(k, j)] -= pp * x;
                    }
                    let mmin = nn.min(k + 3);
                    for i in l..=mmin {
                        let mut pp = x * a[ix(i, k)] + y * a[ix(i, k + 1)];
                        if k != nn - 1 {
                            pp += z * a[ix(i, k + 2)];
                            a[ix(i, k + 2)] -= pp * r;
                        }
                        a[ix(i, k + 1)] -= pp * q;
                        a[ix(i, k)] -= pp;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_moduli(m: &DMatrix<f64>) -> Vec<f64> {
        let mut v: Vec<f64> = eigenvalues(m).unwrap().iter().map(|z| z.norm()).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn known_spectra() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, 3.0, 4.0, 0.0, 4.0, 9.0]);
        let v = sorted_moduli(&m);
        for (a, b) in v.iter().zip([1.0, 2.0, 11.0]) {
            assert!((a - b).abs() < 1e-10);
        }
        let rot = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let ev = eigenvalues(&rot).unwrap();
        assert!(ev.iter().all(|z| (z.re).abs() < 1e-12 && (z.im.abs() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn permutation_matrix() {
        // 5-cycle: eigenvalues are the fifth roots of unity
        let mut p = DMatrix::<f64>::zeros(5, 5);
        for i in 0..5 {
            p[((i + 1) % 5, i)] = 1.0;
        }
        let ev = eigenvalues(&p).unwrap();
        assert!(ev.iter().all(|z| (z.norm() - 1.0).abs() < 1e-10));
        let sum: Complex64 = ev.iter().sum();
        assert!(sum.norm() < 1e-10);
    }

    #[test]
    fn companion_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let c = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 6.0, 1.0, 0.0, -11.0, 0.0, 1.0, 6.0]);
        let mut re: Vec<f64> = eigenvalues(&c).unwrap().iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (a, b) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
