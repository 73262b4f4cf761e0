//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use genericity::matgroup::{FiniteGroupTable, GroupKind, IntMatrix, standard_generators};
use genericity::walks::{DecoratedGraph, Endpoints};
use genericity::zpoly::IntPoly;
use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monic reciprocal polynomial of degree `2 * half` with middle coefficients
/// in `-bound..=bound`.
pub fn random_reciprocal(rng: &mut impl Rng, half: usize, bound: i64) -> IntPoly {
    let mut c = vec![0i64; 2 * half + 1];
    c[0] = 1;
    c[2 * half] = 1;
    for i in 1..=half {
        let a = rng.gen_range(-bound..=bound);
        c[i] = a;
        c[2 * half - i] = a;
    }
    IntPoly::from_i64(&c)
}

/// Product of `len` generators chosen uniformly.
pub fn random_word(rng: &mut impl Rng, gens: &[IntMatrix], len: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(gens[0].dim());
    for _ in 0..len {
        m = m.mul(&gens[rng.gen_range(0..gens.len())]);
    }
    m
}

pub fn random_unimodular(rng: &mut impl Rng, n: usize, len: usize) -> IntMatrix {
    let gens = standard_generators(GroupKind::SL(n), true).unwrap();
    random_word(rng, &gens, len)
}

/// Counts of each group element over every walk visiting `length` vertices,
/// by listing the walks one at a time.
pub fn enumerate_walks(
    graph: &DecoratedGraph,
    table: &FiniteGroupTable,
    length: usize,
    endpoints: Endpoints,
) -> (Vec<BigUint>, BigUint) {
    let decs = graph.decorations_mod(table.field());
    let mut counts = vec![BigUint::from(0u32); table.len()];
    let mut total = BigUint::from(0u32);
    let n = graph.vertex_count();
    let (starts, end): (Vec<usize>, Option<usize>) = match endpoints {
        Endpoints::All => ((0..n).collect(), None),
        Endpoints::Between(i, j) => (vec![i], Some(j)),
    };
    let mut stack: Vec<(Vec<usize>, u64)> = starts.into_iter().map(|v| (vec![v], 1)).collect();
    while let Some((path, weight)) = stack.pop() {
        let last = *path.last().unwrap();
        if path.len() == length {
            if end.map_or(true, |j| j == last) {
                let mut prod = decs[path[0]].clone();
                for &v in &path[1..] {
                    prod = decs[v].mul(&prod);
                }
                let g = table.index_of(&prod).expect("product lies in the group");
                counts[g] += weight;
                total += weight;
            }
            continue;
        }
        for w in 0..n {
            let m = graph.adjacency(last, w);
            if m > 0 {
                let mut next = path.clone();
                next.push(w);
                stack.push((next, weight * m as u64));
            }
        }
    }
    (counts, total)
}

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Small decorated graphs with their finite groups, for oracle comparisons.
pub fn walk_fixtures() -> Vec<(&'static str, DecoratedGraph, FiniteGroupTable)> {
    let sl2 = standard_generators(GroupKind::SL(2), true).unwrap();
    let t = mat(&[&[1, 1], &[0, 1]]);
    let s = mat(&[&[0, -1], &[1, 0]]);
    let graphs = vec![
        ("k4-loops mod 3", DecoratedGraph::complete_with_loops(sl2.clone()).unwrap(), 3),
        ("k4-loops mod 2", DecoratedGraph::complete_with_loops(sl2.clone()).unwrap(), 2),
        ("no-backtracking mod 3", DecoratedGraph::no_backtracking(sl2).unwrap(), 3),
        (
            "path with loop mod 3",
            DecoratedGraph::new(
                vec![vec![1, 1, 0], vec![1, 0, 2], vec![0, 2, 0]],
                vec![t.clone(), s.clone(), t.transpose()],
            )
            .unwrap(),
            3,
        ),
        (
            "triangle mod 2",
            DecoratedGraph::complete_with_loops(vec![t, s, mat(&[&[1, 0], &[1, 1]])]).unwrap(),
            2,
        ),
    ];
    graphs
        .into_iter()
        .map(|(name, g, p)| {
            let table = g.group_table(p, 1 << 16).unwrap();
            (name, g, table)
        })
        .collect()
}

pub fn gaussian_matrix(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal))
}

pub fn gaussian_complex(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Haar-distributed unitary: Q from the QR of a complex Gaussian, with the
/// phases of R's diagonal divided out.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    let qr = gaussian_complex(rng, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
