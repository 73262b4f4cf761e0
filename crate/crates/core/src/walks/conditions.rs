use serde::{Deserialize, Serialize};

use super::dp::decoration_actions;
use super::graph::DecoratedGraph;
use crate::error::Result;
use crate::matgroup::FiniteGroupTable;

/// Outcome of the two mixing hypotheses, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsReport {
    /// `A(G)` is primitive.
    pub primitive: bool,
    /// Least `k` with `A^k > 0`, when found within the Wielandt bound.
    pub primitivity_exponent: Option<usize>,
    pub wielandt_bound: usize,
    /// No nontrivial one-dimensional character is constant on the
    /// decorations.
    pub one_dimensional: bool,
    /// `|[G, G]|`.
    pub derived_order: usize,
    /// Order of the subgroup generated by `[G, G]` and all `t_i t_j^{-1}`;
    /// the condition holds exactly when this is the whole group.
    pub coset_closure_order: usize,
    pub group_order: usize,
    /// The decorations generate the whole table.
    pub generates: bool,
}

impl ConditionsReport {
    pub fn passes(&self) -> bool {
        self.primitive && self.one_dimensional
    }
}

/// Least `k <= (n-1)^2 + 1` with `A^k` entrywise positive, by boolean powers.
pub fn primitivity_exponent(graph: &DecoratedGraph) -> Option<usize> {
    let n = graph.vertex_count();
    let bound = (n - 1) * (n - 1) + 1;
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| graph.adjacency(i, j) > 0).collect())
        .collect();
    let mut power = adj.clone();
    for k in 1..=bound {
        if power.iter().flatten().all(|&b| b) {
            return Some(k);
        }
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|m| power[i][m] && adj[m][j]))
                    .collect()
            })
            .collect();
    }
    None
}

pub fn check_conditions(graph: &DecoratedGraph, table: &FiniteGroupTable) -> Result<ConditionsReport> {
    let n = graph.vertex_count();
    let exponent = primitivity_exponent(graph);
    let (idx, _) = decoration_actions(graph, table)?;
    let order = table.len();
    let generates = table.subgroup_closure(&idx).iter().all(|&b| b);
    let derived = table.derived_subgroup();
    let derived_order = derived.iter().filter(|&&b| b).count();
    // every subgroup containing [G, G] is normal, so the subgroup generated
    // by [G, G] and the t_i t_0^{-1} is a normal closure
    let t0_inv = table.inverse(idx[0]);
    let mut seeds = table.generator_commutators();
    seeds.extend(idx.iter().map(|&t| table.mul(t, t0_inv)));
    let closure = table.normal_closure(&seeds);
    let closure_order = closure.iter().filter(|&&b| b).count();
    Ok(ConditionsReport {
        primitive: exponent.is_some(),
        primitivity_exponent: exponent,
        wielandt_bound: (n - 1) * (n - 1) + 1,
        one_dimensional: closure_order == order,
        derived_order,
        coset_closure_order: closure_order,
        group_order: order,
        generates,
    })
}
