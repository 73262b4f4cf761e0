//! Homological certificates for mapping classes and free-group automorphisms.
//!
//! Every verdict here is one-sided: `CertifiedPseudoAnosov` and `Certified`
//! are proofs, while failed conditions and inconclusive results claim
//! nothing about the underlying mapping class or automorphism.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::matgroup::{is_symplectic, IntMatrix};
use crate::zpoly::{
    certify_power_irreducible, is_cyclotomic_product, is_irreducible_over_z, is_power_substitution,
    Certificate, IntPoly, MAX_FACTOR_DEGREE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionStatus {
    Pass,
    Fail,
    /// The check is out of range (degree above the factorization cap).
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    /// 1, 2 or 3.
    pub index: u8,
    pub name: String,
    pub status: ConditionStatus,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PAVerdict {
    CertifiedPseudoAnosov,
    /// Lowest-numbered condition that failed.
    FailedCondition(u8),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PACertificate {
    pub verdict: PAVerdict,
    pub conditions: Vec<ConditionResult>,
    pub matrix: IntMatrix,
    pub char_poly: IntPoly,
}

/// Three homological conditions on the characteristic polynomial of a
/// symplectic matrix: irreducible over `Z`, not a product of cyclotomics,
/// and not of the form `h(x^k)` for `k > 1`.
pub fn certify_pseudo_anosov(m: &IntMatrix) -> Result<PACertificate> {
    let report = is_symplectic(m)?;
    if !report.holds() {
        let failing: Vec<String> = report.failing.iter().map(ToString::to_string).collect();
        return Err(invalid(format!("matrix is not symplectic: {}", failing.join(", "))));
    }
    let f = m.char_poly();

    let c1 = if f.deg() > MAX_FACTOR_DEGREE {
        ConditionResult {
            index: 1,
            name: "irreducible".into(),
            status: ConditionStatus::Undecided,
            detail: format!("degree {} above factorization cap {MAX_FACTOR_DEGREE}", f.deg()),
        }
    } else {
        let irr = is_irreducible_over_z(&f)?;
        ConditionResult {
            index: 1,
            name: "irreducible".into(),
            status: if irr { ConditionStatus::Pass } else { ConditionStatus::Fail },
            detail: if irr { "irreducible over Z".into() } else { "reducible over Z".into() },
        }
    };

    // symplectic characteristic polynomials have constant term 1
    let cyc = is_cyclotomic_product(&f)?;
    let c2 = ConditionResult {
        index: 2,
        name: "not cyclotomic".into(),
        status: if cyc { ConditionStatus::Fail } else { ConditionStatus::Pass },
        detail: if cyc { "product of cyclotomic polynomials".into() } else { "has a root off the unit circle or of infinite order".into() },
    };

    let power = is_power_substitution(&f);
    let c3 = ConditionResult {
        index: 3,
        name: "not a power substitution".into(),
        status: if power.is_some() { ConditionStatus::Fail } else { ConditionStatus::Pass },
        detail: match power {
            Some(k) => format!("f = h(x^{k})"),
            None => "no k > 1 with f = h(x^k)".into(),
        },
    };

    let conditions = vec![c1, c2, c3];
    let verdict = match conditions.iter().find(|c| c.status == ConditionStatus::Fail) {
        Some(c) => PAVerdict::FailedCondition(c.index),
        None if conditions.iter().all(|c| c.status == ConditionStatus::Pass) => {
            PAVerdict::CertifiedPseudoAnosov
        }
        None => PAVerdict::Inconclusive,
    };
    Ok(PACertificate {
        verdict,
        conditions,
        matrix: m.clone(),
        char_poly: f,
    })
}

/// Power-irreducibility certificate for the characteristic polynomial of a
/// unimodular integer matrix.
pub fn certify_strongly_irreducible(m: &IntMatrix, prime_budget: u64) -> Result<Certificate> {
    let det = m.det();
    if det != 1.into() && det != (-1).into() {
        return Err(invalid(format!("matrix is not unimodular: det = {det}")));
    }
    certify_power_irreducible(&m.char_poly(), prime_budget)
}

/// One matrix per nonblank line, row-major; `#` starts a comment.
pub fn parse_matrix_batch(text: &str) -> Result<Vec<IntMatrix>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let m = line.parse::<IntMatrix>().map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(m);
    }
    Ok(out)
}

/// Applies `f` to every input in parallel; results keep input order.
pub fn certify_batch<T, F>(inputs: &[IntMatrix], f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(&IntMatrix) -> Result<T> + Sync + Send,
{
    inputs.par_iter().map(f).collect()
}
