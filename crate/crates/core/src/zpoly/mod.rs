//! Exact integer polynomials: factorization over `Z`, discriminants,
//! cyclotomic and power-substitution tests, and Galois certificates.

mod factor;
mod galois;
mod intpoly;
mod predicates;

pub use factor::{
    expand_factors, factor_over_z, is_irreducible_over_z, is_squarefree_z,
    squarefree_decomposition_z, MAX_FACTOR_DEGREE,
};
pub use galois::{
    certify_galois_sn, certify_power_irreducible, Certificate, GaloisCertificate, GaloisRule,
    GaloisVerdict, Refutation, Verdict,
};
pub use intpoly::IntPoly;
pub use predicates::{
    cyclotomic, discriminant, is_cyclotomic_product, is_perfect_square, is_power_substitution,
    is_reciprocal, resultant,
};
