//! Polynomials over prime fields: arithmetic, factorization, splitting types,
//! and the exhaustive counting operations built on them.

mod counting;
mod factor;
mod field;
mod poly;
mod splitting;

pub use counting::{
    absolutely_irreducible_superelliptic, affine_orbit_is_free, affine_substitute, count_restricted_reducible,
    has_factor_with_constant, superelliptic_point_count, DEFAULT_ENUMERATION_BUDGET,
    POINT_COUNT_PRIME_LIMIT,
};
pub use factor::{
    distinct_degree, factor_mod_p, factor_mod_p_seeded, is_irreducible, splitting_type,
    squarefree_decomposition, DEFAULT_FACTOR_SEED,
};
pub use field::{is_prime, primes_in, PrimeField};
pub use poly::FpPoly;
pub use splitting::{
    irreducible_count, partitions, splitting_distribution, symmetric_group_cycle_law,
    Restriction, SplitOutcome, SplittingDistribution, SplittingMode, SplittingType,
};
