use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::graph::DecoratedGraph;
use crate::error::{check_budget, invalid, Result};
use crate::matgroup::FiniteGroupTable;
use crate::serde_big;

pub const MAX_WALK_STATES: usize = 1_000_000;
pub const MAX_WALK_LENGTH: usize = 10_000;

/// Which walks a distribution is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoints {
    All,
    /// Walks starting at the first vertex and ending at the second.
    Between(usize, usize),
}

/// Exact law of the walk product: `counts[g] / total`, indexed like the
/// group table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkDistribution {
    pub length: usize,
    pub endpoints: Endpoints,
    #[serde(with = "biguint_vec")]
    pub counts: Vec<BigUint>,
    #[serde(with = "serde_big::biguint")]
    pub total: BigUint,
}

mod biguint_vec {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl WalkDistribution {
    pub fn probability(&self, g: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.counts[g].clone()),
            BigInt::from(self.total.clone()),
        )
    }

    pub fn group_order(&self) -> usize {
        self.counts.len()
    }
}

/// `(1/2) sum_g |P(g) - 1/|G||`, exact.
pub fn tv_distance_to_uniform(dist: &WalkDistribution) -> BigRational {
    let order = BigInt::from(dist.counts.len());
    let total = BigInt::from(dist.total.clone());
    let num: BigInt = dist
        .counts
        .iter()
        .map(|c| (BigInt::from(c.clone()) * &order - &total).abs())
        .sum();
    BigRational::new(num, BigInt::from(2) * total * order)
}

/// Per-vertex left-multiplication permutations of the decorations.
pub(crate) fn decoration_actions(
    graph: &DecoratedGraph,
    table: &FiniteGroupTable,
) -> Result<(Vec<usize>, Vec<Vec<u32>>)> {
    let field = table.field();
    if graph.matrix_dim() != table.dim() {
        return Err(invalid("decoration dimension does not match the group table"));
    }
    let idx = graph
        .decorations_mod(field)
        .iter()
        .enumerate()
        .map(|(v, d)| {
            table
                .index_of(d)
                .ok_or_else(|| invalid(format!("decoration of vertex {v} is not in the group")))
        })
        .collect::<Result<Vec<_>>>()?;
    let actions = idx
        .iter()
        .map(|&t| (0..table.len()).map(|g| table.mul(t, g) as u32).collect())
        .collect();
    Ok((idx, actions))
}

/// Step-by-step dynamic program over `(vertex, element)` walk counts.
pub struct WalkDp<'a> {
    graph: &'a DecoratedGraph,
    order: usize,
    actions: Vec<Vec<u32>>,
    start: Option<usize>,
    length: usize,
    state: Vec<BigUint>,
}

impl<'a> WalkDp<'a> {
    /// State after one visited vertex; `start` restricts the first vertex.
    pub fn new(graph: &'a DecoratedGraph, table: &FiniteGroupTable, start: Option<usize>) -> Result<Self> {
        let n = graph.vertex_count();
        let order = table.len();
        check_budget("walk states", (n * order) as u128, MAX_WALK_STATES as u128)?;
        if let Some(s) = start {
            if s >= n {
                return Err(invalid(format!("start vertex {s} out of range")));
            }
        }
        let (idx, actions) = decoration_actions(graph, table)?;
        let mut state = vec![BigUint::zero(); n * order];
        for v in 0..n {
            if start.map_or(true, |s| s == v) {
                state[v * order + idx[v]] = BigUint::from(1u32);
            }
        }
        Ok(WalkDp {
            graph,
            order,
            actions,
            start,
            length: 1,
            state,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Moves to a neighbour and left-multiplies by its decoration.
    pub fn step(&mut self) {
        let n = self.graph.vertex_count();
        let order = self.order;
        let mut next = vec![BigUint::zero(); n * order];
        for v in 0..n {
            let src = &self.state[v * order..(v + 1) * order];
            if src.iter().all(Zero::is_zero) {
                continue;
            }
            for (w, mult) in self.graph.neighbors(v) {
                let act = &self.actions[w];
                let dst = &mut next[w * order..(w + 1) * order];
                for (g, c) in src.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let slot = &mut dst[act[g] as usize];
                    if mult == 1 {
                        *slot += c;
                    } else {
                        *slot += c * mult;
                    }
                }
            }
        }
        self.state = next;
        self.length += 1;
    }

    /// Walk counts ending at `v`, indexed by element.
    pub fn counts_at(&self, v: usize) -> &[BigUint] {
        &self.state[v * self.order..(v + 1) * self.order]
    }

    /// Marginal over elements, optionally restricted to walks ending at `end`.
    pub fn distribution(&self, end: Option<usize>) -> Result<WalkDistribution> {
        let n = self.graph.vertex_count();
        let order = self.order;
        let mut counts = vec![BigUint::zero(); order];
        for v in 0..n {
            if end.map_or(true, |e| e == v) {
                for (g, c) in self.state[v * order..(v + 1) * order].iter().enumerate() {
                    counts[g] += c;
                }
            }
        }
        let total: BigUint = counts.iter().sum();
        if total.is_zero() {
            return Err(invalid(format!(
                "no walks of length {} with the requested endpoints",
                self.length
            )));
        }
        let endpoints = match (self.start, end) {
            (None, None) => Endpoints::All,
            (Some(i), Some(j)) => Endpoints::Between(i, j),
            _ => return Err(invalid("endpoint restriction needs both ends")),
        };
        Ok(WalkDistribution {
            length: self.length,
            endpoints,
            counts,
            total,
        })
    }
}

/// Exact law of `t_{i_N} ... t_{i_1}` over all walks visiting `length`
/// vertices (counted with edge multiplicity).
pub fn exact_distribution(
    graph: &DecoratedGraph,
    table: &FiniteGroupTable,
    length: usize,
    endpoints: Endpoints,
) -> Result<WalkDistribution> {
    if length == 0 {
        return Err(invalid("walk length counts visited vertices and must be >= 1"));
    }
    check_budget("walk length", length as u128, MAX_WALK_LENGTH as u128)?;
    let (start, end) = match endpoints {
        Endpoints::All => (None, None),
        Endpoints::Between(i, j) => (Some(i), Some(j)),
    };
    if let Some(j) = end {
        if j >= graph.vertex_count() {
            return Err(invalid(format!("end vertex {j} out of range")));
        }
    }
    let mut dp = WalkDp::new(graph, table, start)?;
    while dp.length() < length {
        dp.step();
    }
    dp.distribution(end)
}

/// `(N, TV(P_N, uniform))` for `N = 1..=max_length`.
pub fn tv_series(
    graph: &DecoratedGraph,
    table: &FiniteGroupTable,
    max_length: usize,
) -> Result<Vec<(usize, BigRational)>> {
    check_budget("walk length", max_length as u128, MAX_WALK_LENGTH as u128)?;
    let mut dp = WalkDp::new(graph, table, None)?;
    let mut out = Vec::with_capacity(max_length);
    loop {
        out.push((dp.length(), tv_distance_to_uniform(&dp.distribution(None)?)));
        if dp.length() >= max_length {
            return Ok(out);
        }
        dp.step();
    }
}
