use std::fmt;

use super::berkowitz::{char_poly_coeffs, RingOps};
use crate::error::{invalid, Result};
use crate::ffpoly::{FpPoly, PrimeField};

/// Square matrix over `F_p`, row-major, entries always reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    n: usize,
    data: Vec<u32>,
}

impl RingOps<u32> for PrimeField {
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::add(*self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::mul(*self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        PrimeField::neg(*self, *a)
    }
}

impl FpMatrix {
    pub fn new(field: PrimeField, n: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != n * n {
            return Err(invalid(format!(
                "{} entries do not form a {n}x{n} matrix",
                data.len()
            )));
        }
        let p = field.p();
        let data = data.into_iter().map(|v| v % p).collect();
        Ok(FpMatrix { field, n, data })
    }

    pub fn from_i64(field: PrimeField, n: usize, data: &[i64]) -> Result<Self> {
        Self::new(field, n, data.iter().map(|&v| field.reduce(v)).collect())
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        FpMatrix { field, n, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    /// Canonical row-major residue bytes: one byte per entry when `p < 256`,
    /// otherwise four little-endian bytes.
    pub fn key(&self) -> Vec<u8> {
        if self.field.p() < 256 {
            self.data.iter().map(|&v| v as u8).collect()
        } else {
            self.data.iter().flat_map(|v| v.to_le_bytes()).collect()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let n = self.n;
        let p = self.field.p64();
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + self.data[i * n + k] as u64 * other.data[k * n + j] as u64) % p;
                }
                data[i * n + j] = acc as u32;
            }
        }
        FpMatrix {
            field: self.field,
            n,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n).map(|k| self.data[(k % n) * n + k / n]).collect();
        FpMatrix {
            field: self.field,
            n,
            data,
        }
    }

    pub fn trace(&self) -> u32 {
        (0..self.n).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn det(&self) -> u32 {
        let (_, det) = self.eliminate(false);
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let (inv, det) = self.eliminate(true);
        (det != 0).then(|| inv.expect("inverse computed"))
    }

    /// Gauss-Jordan; returns the inverse (if requested and invertible) and
    /// the determinant.
    fn eliminate(&self, want_inverse: bool) -> (Option<Self>, u32) {
        let f = self.field;
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(f, n).data;
        let mut det = 1u32;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return (None, 0);
            };
            if r != c {
                for j in 0..n {
                    a.swap(c * n + j, r * n + j);
                    inv.swap(c * n + j, r * n + j);
                }
                det = f.neg(det);
            }
            let piv = a[c * n + c];
            det = f.mul(det, piv);
            let pinv = f.inv(piv);
            for j in 0..n {
                a[c * n + j] = f.mul(a[c * n + j], pinv);
                inv[c * n + j] = f.mul(inv[c * n + j], pinv);
            }
            for r in 0..n {
                if r == c || a[r * n + c] == 0 {
                    continue;
                }
                if !want_inverse && r < c {
                    continue;
                }
                let q = a[r * n + c];
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(q, a[c * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(q, inv[c * n + j]));
                }
            }
        }
        let out = want_inverse.then(|| FpMatrix {
            field: f,
            n,
            data: inv,
        });
        (out, det)
    }

    /// `det(xI - M)` over `F_p`.
    pub fn char_poly(&self) -> FpPoly {
        FpPoly::new(self.field, char_poly_coeffs(&self.field, self.n, &self.data))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.n)
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.field.p())
    }
}
