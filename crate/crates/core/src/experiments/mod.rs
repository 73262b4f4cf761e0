//! Seeded Monte Carlo trends over random words in integer matrix groups, and
//! the exact restricted-splitting comparison.

mod config;
mod splitting;
mod trend;

pub use config::{Check, ExperimentConfig, GraphChoice, GroupFamily, DEFAULT_PRIME_BUDGET, MIN_SAMPLES};
pub use splitting::{run_restricted_splitting, RestrictedSplittingReport, SplittingRow};
pub use trend::{
    run_checks, run_galois_trend, run_pa_trend, run_reducibility_trend, run_strong_irreducibility_trend,
    Direction, Interval, TrendReport, TrendRow, TrendVerdict, CERTIFIED_PA, CERTIFIED_SN,
    CROSS_CHECK_PRIMES, POWER_IRREDUCIBLE, REDUCIBLE, REDUCIBLE_MOD_ALL, STRONGLY_IRREDUCIBLE,
};
