//! Shared inputs for the criterion benchmarks.

use genericity::matgroup::{standard_generators, FiniteGroupTable, GroupKind, IntMatrix};
use genericity::walks::DecoratedGraph;
use genericity::zpoly::IntPoly;
use genericity::Result;

/// SL(2) generators on the complete graph with loops, with the group table mod `p`.
pub fn sl2_walk_fixture(p: u64) -> Result<(DecoratedGraph, FiniteGroupTable)> {
    let kind = GroupKind::SL(2);
    let graph = DecoratedGraph::complete_with_loops(standard_generators(kind, true)?)?;
    let table = graph.group_table(p, 1 << 20)?;
    Ok((graph, table))
}

/// Minimal polynomial of sqrt2+sqrt3+sqrt5: irreducible over Z but
/// reducible modulo every prime, which forces the recombination step.
pub fn hard_recombination_poly() -> IntPoly {
    IntPoly::from_i64(&[576, 0, -960, 0, 352, 0, -40, 0, 1])
}

/// Deterministic integer matrices of dimension `n` with entries in `-r..=r`.
pub fn lcg_matrices(n: usize, count: usize, r: i64, seed: u64) -> Vec<IntMatrix> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % (2 * r as u64 + 1)) as i64 - r
    };
    (0..count)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
            IntMatrix::from_rows(&rows).expect("square")
        })
        .collect()
}
