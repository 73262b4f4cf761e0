use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use crate::error::{invalid, Error, Result};

/// The `k`-th cyclotomic polynomial, as `prod_{d | k} (x^d - 1)^{mu(k/d)}`.
pub fn cyclotomic(k: usize) -> IntPoly {
    assert!(k >= 1, "cyclotomic index starts at 1");
    let divisors: Vec<usize> = (1..=k).filter(|d| k % d == 0).collect();
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for &d in &divisors {
        match mobius(k / d) {
            1 => num = num.mul(&IntPoly::x_pow_minus_one(d)),
            -1 => den = den.mul(&IntPoly::x_pow_minus_one(d)),
            _ => {}
        }
    }
    num.checked_div(&den).expect("cyclotomic quotient is exact")
}

pub(crate) fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn euler_phi(mut n: usize) -> usize {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Whether a monic `f` with `f(0) != 0` is a product of cyclotomic
/// polynomials. Peels `Phi_k` for `k <= 2 deg(f)^2`, which covers every `k`
/// with `phi(k) <= deg f`.
pub fn is_cyclotomic_product(f: &IntPoly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.constant_term().is_zero() {
        return Err(invalid("cyclotomic test needs f(0) != 0"));
    }
    let n = f.deg();
    let mut rest = f.clone();
    for k in 1..=2 * n * n {
        if rest.deg() == 0 {
            break;
        }
        if euler_phi(k) > rest.deg() {
            continue;
        }
        let phi = cyclotomic(k);
        while let Some(q) = rest.checked_div(&phi) {
            rest = q;
        }
    }
    Ok(rest.is_one())
}

/// Smallest `k > 1` with `f = h(x^k)`, if any.
pub fn is_power_substitution(f: &IntPoly) -> Option<usize> {
    let n = f.deg();
    if n < 2 {
        return None;
    }
    let support: Vec<usize> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect();
    (2..=n)
        .filter(|k| n % k == 0)
        .find(|k| support.iter().all(|i| i % k == 0))
}

/// `x^d f(1/x) = f(x)`: the coefficient list is a palindrome.
pub fn is_reciprocal(f: &IntPoly) -> bool {
    let c = f.coeffs();
    !c.is_empty() && c.iter().eq(c.iter().rev())
}

/// Resultant via the Euclidean algorithm over `Q`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let to_q = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let r = resultant_q(to_q(a), to_q(b));
    assert!(r.is_integer(), "resultant of integer polynomials is an integer");
    r.to_integer()
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
}

fn resultant_q(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> BigRational {
    trim_q(&mut a);
    trim_q(&mut b);
    let mut acc = BigRational::one();
    loop {
        if a.is_empty() || b.is_empty() {
            return BigRational::zero();
        }
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return acc * pow_q(&b[0], m);
        }
        if m == 0 {
            return acc * pow_q(&a[0], n);
        }
        // res(a, b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r), r = a mod b
        let lb = b[n].clone();
        let mut r = a.clone();
        for i in (0..=m - n).rev() {
            let c = &r[i + n] / &lb;
            if c.is_zero() {
                continue;
            }
            for (j, d) in b.iter().enumerate() {
                let t = &c * d;
                r[i + j] -= t;
            }
        }
        r.truncate(n);
        trim_q(&mut r);
        if r.is_empty() {
            return BigRational::zero();
        }
        let dr = r.len() - 1;
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_q(&lb, m - dr);
        a = b;
        b = r;
    }
}

fn pow_q(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// Discriminant of a monic polynomial of degree at least 2:
/// `(-1)^{n(n-1)/2} res(f, f')`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    f.require_monic(2, usize::MAX)?;
    let n = f.deg();
    let r = resultant(f, &f.derivative());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Exact perfect-square test.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), z(&[-1, 1]));
        assert_eq!(cyclotomic(2), z(&[1, 1]));
        assert_eq!(cyclotomic(4), z(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), z(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), z(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
        for k in 1..60 {
            assert_eq!(cyclotomic(k).deg(), euler_phi(k));
        }
    }

    #[test]
    fn cyclotomic_products() {
        assert!(is_cyclotomic_product(&z(&[1, -1, 1])).unwrap());
        assert!(!is_cyclotomic_product(&z(&[1, -3, 1])).unwrap());
        assert!(is_cyclotomic_product(&z(&[1, 1, 1, 1, 1])).unwrap());
        assert!(is_cyclotomic_product(&z(&[-1, 0, 0, 0, 0, 1])).unwrap());
        assert!(is_cyclotomic_product(&z(&[1, 2, 1])).unwrap());
        assert!(!is_cyclotomic_product(&z(&[2, 0, 1])).unwrap());
        assert!(is_cyclotomic_product(&z(&[0, 1])).is_err());
    }

    #[test]
    fn power_substitution() {
        assert_eq!(is_power_substitution(&z(&[1, 0, 3, 0, 1])), Some(2));
        assert_eq!(is_power_substitution(&z(&[1, 1, 1])), None);
        assert_eq!(is_power_substitution(&z(&[0, 0, 0, 0, 0, 0, 1])), Some(2));
        assert_eq!(is_power_substitution(&z(&[1, 0, 0, 1, 0, 0, 1])), Some(3));
    }

    #[test]
    fn reciprocal() {
        assert!(is_reciprocal(&z(&[1, -3, 1])));
        assert!(!is_reciprocal(&z(&[2, -3, 1])));
        assert!(is_reciprocal(&z(&[1, 2, 7, 2, 1])));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&z(&[1, -3, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&z(&[1, 0, 0, 1])).unwrap(), BigInt::from(-27));
        assert_eq!(discriminant(&z(&[-1, -1, 0, 0, 0, 1])).unwrap(), BigInt::from(2869));
        assert_eq!(discriminant(&z(&[1, 2, 1])).unwrap(), BigInt::zero());
        assert!(discriminant(&z(&[1, 1])).is_err());
    }

    #[test]
    fn squares() {
        assert!(is_perfect_square(&BigInt::from(144)));
        assert!(!is_perfect_square(&BigInt::from(145)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(is_perfect_square(&BigInt::zero()));
    }
}
