//! Genericity toolkit: random walks on generator-decorated graphs over finite
//! matrix groups, reducibility counts over prime fields, Galois certificates
//! for integer polynomials, symplectic companions of reciprocal polynomials,
//! and the Monte Carlo experiments that tie them together.

pub mod census;
pub mod certify;
pub mod error;
pub mod experiments;
pub mod ffpoly;
pub mod kirby;
pub mod matgroup;
pub mod serde_big;
pub mod walks;
pub mod zpoly;

pub use error::{Error, Result};

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
