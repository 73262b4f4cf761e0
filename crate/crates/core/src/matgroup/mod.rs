//! Exact integer and mod-p matrices, characteristic polynomials, symplectic
//! predicates, standard generating sets, finite group enumeration, and
//! floating-point norms.

mod berkowitz;
mod eigen;
mod fpmat;
mod group;
mod intmat;
pub mod norms;

pub use fpmat::FpMatrix;
pub use group::{
    enumerate_group, enumerate_standard, is_symplectic, is_symplectic_fp, standard_generators,
    BlockIdentity, FiniteGroupTable, GroupKind, SymplecticForm, SymplecticReport,
    DEFAULT_GROUP_BUDGET, DENSE_TABLE_LIMIT,
};
pub use intmat::IntMatrix;
pub use norms::{frobenius_norm, operator_norm, spectral_radius};
