use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::fpmat::FpMatrix;
use super::intmat::IntMatrix;
use crate::error::{check_budget, invalid, Result};
use crate::ffpoly::PrimeField;

/// The fixed form `J = [[0, I], [-I, 0]]` on `Z^{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub half_dim: usize,
}

impl SymplecticForm {
    pub fn new(half_dim: usize) -> Self {
        SymplecticForm { half_dim }
    }

    pub fn dim(&self) -> usize {
        2 * self.half_dim
    }

    pub fn matrix(&self) -> IntMatrix {
        let k = self.half_dim;
        let i = IntMatrix::identity(k);
        let z = IntMatrix::zero(k);
        IntMatrix::from_blocks(&z, &i, &i.neg(), &z)
    }
}

/// The three block identities equivalent to `M^t J M = J` for
/// `M = [[A, B], [C, D]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockIdentity {
    /// `A^t C` symmetric.
    AtCSymmetric,
    /// `B^t D` symmetric.
    BtDSymmetric,
    /// `A^t D - C^t B = I`.
    AtDMinusCtBIdentity,
}

impl fmt::Display for BlockIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockIdentity::AtCSymmetric => "A^t C symmetric",
            BlockIdentity::BtDSymmetric => "B^t D symmetric",
            BlockIdentity::AtDMinusCtBIdentity => "A^t D - C^t B = I",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticReport {
    pub failing: Vec<BlockIdentity>,
}

impl SymplecticReport {
    pub fn holds(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Exact check of `M^t J M = J`, reporting each failing block identity.
pub fn is_symplectic(m: &IntMatrix) -> Result<SymplecticReport> {
    let n = m.dim();
    if n % 2 == 1 || n == 0 {
        return Err(invalid(format!("symplectic check needs even dimension, got {n}")));
    }
    let k = n / 2;
    let (a, b, c, d) = (m.block(0, 0, k), m.block(0, k, k), m.block(k, 0, k), m.block(k, k, k));
    let mut failing = Vec::new();
    if !a.transpose().mul(&c).is_symmetric() {
        failing.push(BlockIdentity::AtCSymmetric);
    }
    if !b.transpose().mul(&d).is_symmetric() {
        failing.push(BlockIdentity::BtDSymmetric);
    }
    if !a.transpose().mul(&d).sub(&c.transpose().mul(&b)).is_identity() {
        failing.push(BlockIdentity::AtDMinusCtBIdentity);
    }
    Ok(SymplecticReport { failing })
}

/// `M^t J M = J` over `F_p`.
pub fn is_symplectic_fp(m: &FpMatrix) -> Result<bool> {
    let n = m.dim();
    if n % 2 == 1 || n == 0 {
        return Err(invalid(format!("symplectic check needs even dimension, got {n}")));
    }
    let j = SymplecticForm::new(n / 2).matrix().to_fp(m.field());
    Ok(m.transpose().mul(&j).mul(m) == j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n")]
pub enum GroupKind {
    /// `SL(n)`.
    SL(usize),
    /// `Sp(2n)`, parametrized by the half-dimension `n`.
    Sp(usize),
    /// `GL(n)`.
    GL(usize),
}

impl GroupKind {
    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        match *self {
            GroupKind::SL(n) | GroupKind::GL(n) => n,
            GroupKind::Sp(n) => 2 * n,
        }
    }

    /// `|G(F_p)|` from the classical order formulas.
    pub fn order_mod(&self, p: u64) -> BigUint {
        let pb = BigUint::from(p);
        let pw = |e: usize| pb.pow(e as u32);
        match *self {
            GroupKind::SL(n) => {
                (2..=n).fold(pw(n * (n - 1) / 2), |acc, i| acc * (pw(i) - 1u32))
            }
            GroupKind::GL(n) => {
                (1..=n).fold(pw(n * (n - 1) / 2), |acc, i| acc * (pw(i) - 1u32))
            }
            GroupKind::Sp(n) => (1..=n).fold(pw(n * n), |acc, i| acc * (pw(2 * i) - 1u32)),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::SL(n) => write!(f, "SL({n})"),
            GroupKind::Sp(n) => write!(f, "Sp({})", 2 * n),
            GroupKind::GL(n) => write!(f, "GL({n})"),
        }
    }
}

fn elementary(n: usize, i: usize, j: usize, v: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    m.set(i, j, BigInt::from(v));
    m
}

/// Standard integral generating sets. SL: elementary transvections; GL: those
/// plus `diag(-1, 1, ..., 1)`; Sp: `J` and the Siegel unipotents
/// `[[I, S], [0, I]]` over the symmetric basis. With `symmetric`, inverses
/// are appended (involutions are not repeated).
pub fn standard_generators(kind: GroupKind, symmetric: bool) -> Result<Vec<IntMatrix>> {
    let mut gens = Vec::new();
    match kind {
        GroupKind::SL(n) | GroupKind::GL(n) => {
            if n < 2 {
                return Err(invalid(format!("{kind} needs n >= 2")));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        gens.push(elementary(n, i, j, 1));
                    }
                }
            }
            if symmetric {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            gens.push(elementary(n, i, j, -1));
                        }
                    }
                }
            }
            if let GroupKind::GL(_) = kind {
                let mut r = IntMatrix::identity(n);
                r.set(0, 0, BigInt::from(-1));
                gens.push(r);
            }
        }
        GroupKind::Sp(k) => {
            if k < 1 {
                return Err(invalid("Sp(2n) needs n >= 1"));
            }
            let j = SymplecticForm::new(k).matrix();
            let mut basis = Vec::new();
            for a in 0..k {
                for b in a..k {
                    let mut s = IntMatrix::zero(k);
                    s.set(a, b, BigInt::one());
                    s.set(b, a, BigInt::one());
                    basis.push(s);
                }
            }
            let id = IntMatrix::identity(k);
            let z = IntMatrix::zero(k);
            gens.push(j.clone());
            for s in &basis {
                gens.push(IntMatrix::from_blocks(&id, s, &z, &id));
            }
            if symmetric {
                gens.push(j.neg());
                for s in &basis {
                    gens.push(IntMatrix::from_blocks(&id, &s.neg(), &z, &id));
                }
            }
        }
    }
    Ok(gens)
}

/// Default closure budget for [`enumerate_group`].
pub const DEFAULT_GROUP_BUDGET: usize = 1_000_000;

/// Groups at most this large get a dense multiplication table.
pub const DENSE_TABLE_LIMIT: usize = 2048;

/// A finite matrix group closed under multiplication, indexed in BFS order
/// from the identity (index 0).
#[derive(Clone)]
pub struct FiniteGroupTable {
    field: PrimeField,
    dim: usize,
    elements: Vec<FpMatrix>,
    index: HashMap<Vec<u8>, u32>,
    generators: Vec<u32>,
    /// `left[g][x]` is the index of `generator_g * element_x`.
    left: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    dense: Option<Vec<u32>>,
}

/// Breadth-first closure of `generators` under left multiplication.
pub fn enumerate_group(generators: &[FpMatrix], budget: usize) -> Result<FiniteGroupTable> {
    let first = generators
        .first()
        .ok_or_else(|| invalid("need at least one generator"))?;
    let (field, dim) = (first.field(), first.dim());
    if generators.iter().any(|g| g.field() != field || g.dim() != dim) {
        return Err(invalid("generators must share field and dimension"));
    }
    if generators.iter().any(|g| g.det() == 0) {
        return Err(invalid("generators must be invertible"));
    }
    let id = FpMatrix::identity(field, dim);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id.key(), 0u32);
    let mut left: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (g, gen) in generators.iter().enumerate() {
            let y = gen.mul(&elements[x as usize]);
            let key = y.key();
            let idx = match index.get(&key) {
                Some(&i) => i,
                None => {
                    let i = elements.len() as u32;
                    check_budget("group elements", elements.len() as u128 + 1, budget as u128)?;
                    index.insert(key, i);
                    elements.push(y);
                    queue.push_back(i);
                    i
                }
            };
            let row = &mut left[g];
            if row.len() <= x as usize {
                row.resize(x as usize + 1, u32::MAX);
            }
            row[x as usize] = idx;
        }
    }
    let gen_idx = generators.iter().map(|g| index[&g.key()]).collect();
    let inverse = elements
        .iter()
        .map(|e| index[&e.inverse().expect("invertible").key()])
        .collect();
    let mut table = FiniteGroupTable {
        field,
        dim,
        elements,
        index,
        generators: gen_idx,
        left,
        inverse,
        dense: None,
    };
    let size = table.len();
    if size <= DENSE_TABLE_LIMIT {
        let mut dense = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                dense.push(table.lookup_product(i, j));
            }
        }
        table.dense = Some(dense);
    }
    Ok(table)
}

impl FiniteGroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &FpMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &FpMatrix) -> Option<usize> {
        self.index.get(&m.key()).map(|&i| i as usize)
    }

    /// Indices of the generators, in input order.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Index of `generator_g * element_x`.
    pub fn left_mul_generator(&self, g: usize, x: usize) -> usize {
        self.left[g][x] as usize
    }

    /// The permutation `x -> generator_g * x`.
    pub fn generator_action(&self, g: usize) -> &[u32] {
        &self.left[g]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn has_dense_table(&self) -> bool {
        self.dense.is_some()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.dense {
            Some(t) => t[i * self.len() + j] as usize,
            None => self.lookup_product(i, j) as usize,
        }
    }

    fn lookup_product(&self, i: usize, j: usize) -> u32 {
        let prod = self.elements[i].mul(&self.elements[j]);
        self.index[&prod.key()]
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    /// Membership mask of the normal closure of `seeds` in the whole group.
    pub fn normal_closure(&self, seeds: &[usize]) -> Vec<bool> {
        let mut gens: Vec<usize> = seeds.to_vec();
        loop {
            let member = self.subgroup_closure(&gens);
            let mut added = vec![false; self.len()];
            for &g in &self.generators {
                let (g, gi) = (g as usize, self.inverse(g as usize));
                for x in (0..self.len()).filter(|&x| member[x]) {
                    let c = self.mul(self.mul(g, x), gi);
                    if !member[c] && !added[c] {
                        added[c] = true;
                        gens.push(c);
                    }
                }
            }
            if !added.contains(&true) {
                return member;
            }
        }
    }

    /// Commutators of pairs of generators; their normal closure is `[G, G]`.
    pub fn generator_commutators(&self) -> Vec<usize> {
        let gens: Vec<usize> = self.generators.iter().map(|&g| g as usize).collect();
        let mut comms = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inverse(a), self.inverse(b)),
                );
                comms.push(c);
            }
        }
        comms
    }

    /// Commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Vec<bool> {
        self.normal_closure(&self.generator_commutators())
    }
}

impl fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupTable")
            .field("p", &self.field.p())
            .field("dim", &self.dim)
            .field("order", &self.len())
            .field("generators", &self.generators.len())
            .finish()
    }
}

/// Enumerates `kind` over `F_p` from the reduced standard generators. For
/// `GL`, `diag(-1, 1, ...)` only reaches determinant `±1`, so `diag(g, 1, ...)`
/// with `g` a primitive root is added.
pub fn enumerate_standard(kind: GroupKind, p: u64, budget: usize) -> Result<FiniteGroupTable> {
    let field = PrimeField::new(p)?;
    let mut gens: Vec<FpMatrix> = standard_generators(kind, false)?
        .iter()
        .map(|g| g.to_fp(field))
        .collect();
    if let GroupKind::GL(n) = kind {
        let mut data = FpMatrix::identity(field, n).entries().to_vec();
        data[0] = field.primitive_root();
        gens.push(FpMatrix::new(field, n, data)?);
    }
    enumerate_group(&gens, budget)
}
