//! Walks on generator-decorated graphs: exact laws of walk products over
//! finite groups, mixing hypotheses, transfer-operator spectra and decay
//! fits, and random words over infinite matrix groups.

mod conditions;
mod dp;
mod graph;
mod sample;
mod spectrum;

pub use conditions::{check_conditions, primitivity_exponent, ConditionsReport};
pub use dp::{
    exact_distribution, tv_distance_to_uniform, tv_series, Endpoints, WalkDistribution, WalkDp,
    MAX_WALK_LENGTH, MAX_WALK_STATES,
};
pub use graph::DecoratedGraph;
pub use sample::{sample_rng, sample_walk, sample_word};
pub use spectrum::{
    fit_decay_rate, ln_rational, transfer_matrix, transfer_spectrum, DecayFit, ModulusClass,
    SpectrumMethod, TransferSpectrum, DENSE_SPECTRUM_LIMIT, ITERATIVE_TOP_K,
};

use crate::error::Result;
use crate::matgroup::{standard_generators, GroupKind};

/// Complete-with-loops graph on the symmetric standard generators of `kind`.
pub fn standard_complete_graph(kind: GroupKind) -> Result<DecoratedGraph> {
    DecoratedGraph::complete_with_loops(standard_generators(kind, true)?)
}

/// No-backtracking graph on the symmetric standard generators of `kind`.
pub fn standard_no_backtracking_graph(kind: GroupKind) -> Result<DecoratedGraph> {
    DecoratedGraph::no_backtracking(standard_generators(kind, true)?)
}
