//! End-to-end runs: build, analyze, certify and compare against the claims.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{
    certify_locality, cm_certify, griesmer_check, BoundError, BoundReport, KOptimal,
    LocalityCertificate, LocalityError,
};
use crate::code::{CodeError, CodeParams};
use crate::constructions::{
    construct, line_budget_sufficient, ClaimSheet, Construction, ConstructionError, ConstructionSpec,
    ParamTriple,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Locality(#[from] LocalityError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

impl RunError {
    /// True when the failure is a bad request rather than a disagreement.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            RunError::Construction(_)
                | RunError::Code(CodeError::BudgetExceeded { .. })
                | RunError::Locality(LocalityError::Code(CodeError::BudgetExceeded { .. }))
        )
    }
}

/// Analyzer output in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedParams {
    pub params: ParamTriple,
    pub weight_distribution: std::collections::BTreeMap<usize, u64>,
}

impl From<&CodeParams> for VerifiedParams {
    fn from(p: &CodeParams) -> Self {
        VerifiedParams {
            params: ParamTriple {
                n: p.n as u64,
                k: p.k as u64,
                d: p.d as u64,
            },
            weight_distribution: p.weight_distribution.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub params: bool,
    pub removed: bool,
    pub locality: bool,
    pub griesmer: bool,
    pub optimality: bool,
    /// Whenever the line-budget inequality holds for some delta, the
    /// certified best delta is at least that large.
    pub sufficient_condition: bool,
}

impl Agreement {
    pub fn all(&self) -> bool {
        self.params
            && self.removed
            && self.locality
            && self.griesmer
            && self.optimality
            && self.sufficient_condition
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub spec: ConstructionSpec,
    pub claims: ClaimSheet,
    pub removed: u64,
    pub verified: VerifiedParams,
    /// Smallest per-coordinate best delta over all coordinates.
    pub best_delta: u32,
    /// Certificate at the claimed delta, or at the best delta when nothing
    /// is claimed or the claim fails.
    pub certificate: LocalityCertificate,
    /// Present when the certified delta is at least 2.
    pub bounds: Option<BoundReport>,
    pub agreement: Agreement,
}

/// Largest delta in [2, q] for which the line-budget inequality holds.
pub fn sufficient_delta(removed: u64, m: usize, q: u64) -> Option<u32> {
    (2..=q)
        .rev()
        .find(|&delta| line_budget_sufficient(removed, m, q, delta).unwrap_or(false))
        .map(|d| d as u32)
}

/// Checks a built construction end to end.
pub fn check(c: &Construction, budget: u64) -> Result<RunReport, RunError> {
    let q = c.field.q() as u64;
    let params = c.code.analyze(budget)?;
    let claims = &c.claims;

    let claimed_certificate = match claims.predicted_locality.delta {
        Some(delta) => match certify_locality(&c.code, Some(delta), budget) {
            Ok(cert) => Some(cert),
            Err(LocalityError::Unachievable { .. }) => None,
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    let locality_ok = claims.predicted_locality.delta.is_none() || claimed_certificate.is_some();
    let certificate = match claimed_certificate {
        Some(cert) => cert,
        None => certify_locality(&c.code, None, budget)?,
    };
    let best_delta = certificate
        .per_coordinate_best_delta
        .iter()
        .copied()
        .min()
        .unwrap_or(1);

    let bounds = if certificate.delta >= 2 && params.k > 0 {
        Some(cm_certify(&params, 2, certificate.delta, q, Some(&certificate))?)
    } else {
        None
    };

    let predicted = claims.predicted_params;
    let removed = c.removed.len() as u64;
    let agreement = Agreement {
        params: predicted
            == ParamTriple {
                n: params.n as u64,
                k: params.k as u64,
                d: params.d as u64,
            },
        removed: removed == claims.predicted_removed,
        locality: locality_ok,
        griesmer: !claims.griesmer_claimed || griesmer_check(&params, q),
        optimality: !claims.optimality_claimed
            || (locality_ok
                && bounds
                    .as_ref()
                    .is_some_and(|b| b.verdicts.k_optimal == KOptimal::Certified)),
        sufficient_condition: sufficient_delta(removed, c.spec.m, q)
            .is_none_or(|delta| best_delta >= delta),
    };

    Ok(RunReport {
        spec: c.spec.clone(),
        claims: claims.clone(),
        removed,
        verified: VerifiedParams::from(&params),
        best_delta,
        certificate,
        bounds,
        agreement,
    })
}

/// Builds and checks a spec.
pub fn run(spec: &ConstructionSpec, budget: u64) -> Result<(Construction, RunReport), RunError> {
    let c = construct(spec)?;
    let report = check(&c, budget)?;
    Ok((c, report))
}
