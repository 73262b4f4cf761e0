use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::berkowitz::{char_poly_coeffs, RingOps};
use super::fpmat::FpMatrix;
use crate::error::{invalid, Error, Result};
use crate::ffpoly::PrimeField;
use crate::zpoly::IntPoly;

/// Square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

struct Z;

impl RingOps<BigInt> for Z {
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

impl IntMatrix {
    pub fn new(n: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != n * n {
            return Err(invalid(format!(
                "{} entries do not form a {n}x{n} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { n, data })
    }

    /// Square matrix from a row-major entry list; the dimension is inferred.
    pub fn from_row_major(data: Vec<BigInt>) -> Result<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        Self::new(n, data)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("rows must all have length equal to the row count"));
        }
        Ok(IntMatrix {
            n,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    /// Companion matrix of a monic `f`: ones on the subdiagonal and
    /// `-a_0, ..., -a_{n-1}` in the last column.
    pub fn companion(f: &IntPoly) -> Result<Self> {
        if !f.is_monic() || f.deg() == 0 {
            return Err(Error::NotMonic);
        }
        let n = f.deg();
        let mut m = Self::zero(n);
        for i in 1..n {
            m.data[i * n + i - 1] = BigInt::one();
        }
        for i in 0..n {
            m.data[i * n + n - 1] = -f.coeff(i);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * &other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Largest absolute value of an entry.
    pub fn height(&self) -> BigInt {
        self.data.iter().map(|a| a.abs()).max().unwrap_or_default()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// `det(xI - M)`, division-free.
    pub fn char_poly(&self) -> IntPoly {
        IntPoly::new(char_poly_coeffs(&Z, self.n, &self.data))
    }

    /// Inverse of a unimodular matrix, by Gauss-Jordan over `Z` with unit
    /// pivots found through gcd row operations.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let n = self.n;
        let w = 2 * n;
        let mut a: Vec<BigInt> = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend(self.data[i * n..(i + 1) * n].iter().cloned());
            a.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
        }
        let not_unimodular = || invalid("matrix is not invertible over Z");
        for c in 0..n {
            // Euclid down the column until a single nonzero entry remains at row c
            loop {
                let pivot = (c..n)
                    .filter(|&r| !a[r * w + c].is_zero())
                    .min_by_key(|&r| a[r * w + c].abs())
                    .ok_or_else(not_unimodular)?;
                if pivot != c {
                    for j in 0..w {
                        a.swap(c * w + j, pivot * w + j);
                    }
                }
                let mut done = true;
                for r in c + 1..n {
                    if a[r * w + c].is_zero() {
                        continue;
                    }
                    let q = a[r * w + c].div_floor(&a[c * w + c]);
                    for j in 0..w {
                        let t = &q * &a[c * w + j];
                        a[r * w + j] -= t;
                    }
                    if !a[r * w + c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            let p = a[c * w + c].clone();
            if !p.abs().is_one() {
                return Err(not_unimodular());
            }
            if p.is_negative() {
                for j in 0..w {
                    a[c * w + j] = -&a[c * w + j];
                }
            }
        }
        for c in (0..n).rev() {
            for r in 0..c {
                let q = a[r * w + c].clone();
                if q.is_zero() {
                    continue;
                }
                for j in 0..w {
                    let t = &q * &a[c * w + j];
                    a[r * w + j] -= t;
                }
            }
        }
        let data = (0..n)
            .flat_map(|i| a[i * w + n..(i + 1) * w].to_vec())
            .collect();
        Ok(IntMatrix { n, data })
    }

    /// `k x k` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, k: usize) -> Self {
        let data = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| self.get(r0 + i, c0 + j).clone())
            .collect();
        IntMatrix { n: k, data }
    }

    /// Assemble `[[a, b], [c, d]]` from four equal-size blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let k = a.n;
        let n = 2 * k;
        let mut m = Self::zero(n);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, k), (c, k, 0), (d, k, k)] {
            assert_eq!(blk.n, k, "block size mismatch");
            for i in 0..k {
                for j in 0..k {
                    m.data[(r0 + i) * n + c0 + j] = blk.get(i, j).clone();
                }
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn to_fp(&self, field: PrimeField) -> FpMatrix {
        let p = BigInt::from(field.p());
        let data = self
            .data
            .iter()
            .map(|a| a.mod_floor(&p).to_u32().expect("reduced residue"))
            .collect();
        FpMatrix::new(field, self.n, data).expect("square")
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).map(<[BigInt]>::to_vec).collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses row-major integers separated by commas, whitespace or semicolons;
/// brackets are ignored. The entry count must be a perfect square.
impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let data = s
            .split(|c: char| c == ',' || c == ';' || c == '[' || c == ']' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| invalid(format!("bad matrix entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = (data.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != data.len() {
            return Err(invalid(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Self::new(n, data)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in &rows {
            if r.len() != n {
                return Err(serde::de::Error::custom("matrix is not square"));
            }
            for v in r {
                data.push(v.parse().map_err(serde::de::Error::custom)?);
            }
        }
        Ok(IntMatrix { n, data })
    }
}
