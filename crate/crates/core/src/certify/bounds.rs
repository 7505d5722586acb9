//! Upper bounds on dimension and the generalized Cadambe-Mazumdar check.
//!
//! The true k_opt is never computed. `kopt_upper` returns the smallest of the
//! applicable Singleton, Griesmer and Plotkin bounds and names the one that
//! fired; `cm_certify` plugs it into `min_s { s r + k_opt(n - s(r+delta-1), d) }`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::locality::LocalityCertificate;
use crate::code::CodeParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("no locality certificate supplied for (r={r}, delta={delta})")]
    MissingCertificate { r: u32, delta: u32 },
    #[error("certificate is for (r={cert_r}, delta={cert_delta}), which does not cover (r={r}, delta={delta})")]
    CertificateMismatch {
        r: u32,
        delta: u32,
        cert_r: u32,
        cert_delta: u32,
    },
    #[error("need k >= 1, r >= 1 and delta >= 2 (k={k}, r={r}, delta={delta})")]
    Parameters { k: u64, r: u32, delta: u32 },
    #[error("C-M upper bound {cm_upper} is below the dimension {k}")]
    Inconsistent { cm_upper: u64, k: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundName {
    Singleton,
    Griesmer,
    Plotkin,
    Void,
}

/// Upper bound on k_opt(n, d) over GF(q) and the individual bounds behind it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoptBound {
    pub value: u64,
    pub name: BoundName,
    pub singleton: Option<u64>,
    pub griesmer: Option<u64>,
    pub plotkin: Option<u64>,
}

/// `sum_{i<k} ceil(d / q^i)`.
pub fn griesmer_length(k: u64, d: u64, q: u64) -> u128 {
    let mut sum = 0u128;
    let mut pow = 1u128;
    for _ in 0..k {
        sum += (d as u128).div_ceil(pow);
        pow = pow.saturating_mul(q as u128);
    }
    sum
}

/// Largest k with `sum_{i<k} ceil(d / q^i) <= n`.
fn griesmer_max_k(n: u64, d: u64, q: u64) -> u64 {
    let mut k = 0u64;
    let mut sum = 0u128;
    let mut pow = 1u128;
    loop {
        let next = sum + (d as u128).div_ceil(pow);
        if next > n as u128 {
            return k;
        }
        sum = next;
        k += 1;
        pow = pow.saturating_mul(q as u128);
    }
}

/// `floor(log_q floor(qd / (qd - (q-1)n)))` when `qd > (q-1)n`.
fn plotkin_max_k(n: u64, d: u64, q: u64) -> Option<u64> {
    let qd = q as u128 * d as u128;
    let rhs = (q as u128 - 1) * n as u128;
    if qd <= rhs {
        return None;
    }
    let max_words = qd / (qd - rhs);
    let mut k = 0;
    let mut pow = q as u128;
    while pow <= max_words {
        k += 1;
        pow *= q as u128;
    }
    Some(k)
}

/// Upper bound on the largest dimension of a q-ary linear code of length `n`
/// and minimum distance `d`. Ties prefer Plotkin, then Griesmer.
pub fn kopt_upper(n: i64, d: u64, q: u64) -> KoptBound {
    if n <= 0 || (n as u64) < d {
        return KoptBound {
            value: 0,
            name: BoundName::Void,
            singleton: None,
            griesmer: None,
            plotkin: None,
        };
    }
    let n = n as u64;
    if d == 0 {
        return KoptBound {
            value: n,
            name: BoundName::Singleton,
            singleton: Some(n),
            griesmer: None,
            plotkin: None,
        };
    }
    let singleton = n - d + 1;
    let griesmer = griesmer_max_k(n, d, q);
    let plotkin = plotkin_max_k(n, d, q);
    let mut best = (singleton, BoundName::Singleton);
    if griesmer <= best.0 {
        best = (griesmer, BoundName::Griesmer);
    }
    if let Some(p) = plotkin {
        if p <= best.0 {
            best = (p, BoundName::Plotkin);
        }
    }
    KoptBound {
        value: best.0,
        name: best.1,
        singleton: Some(singleton),
        griesmer: Some(griesmer),
        plotkin,
    }
}

/// Largest d allowed by the Singleton-type bound
/// `d <= n - k + 1 - (ceil(k/r) - 1)(delta - 1)`.
pub fn singleton_rd_bound(n: u64, k: u64, r: u32, delta: u32) -> i64 {
    let r = r as i64;
    let k = k as i64;
    n as i64 - k + 1 - ((k + r - 1) / r - 1) * (delta as i64 - 1)
}

/// Whether the code meets the Griesmer bound with equality.
pub fn griesmer_check(params: &CodeParams, q: u64) -> bool {
    params.k > 0 && griesmer_length(params.k as u64, params.d as u64, q) == params.n as u128
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KOptimal {
    Certified,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YesNo {
    Yes,
    No,
}

impl From<bool> for YesNo {
    fn from(b: bool) -> Self {
        if b {
            YesNo::Yes
        } else {
            YesNo::No
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub k_optimal: KOptimal,
    pub griesmer: YesNo,
    pub singleton_rd_optimal: YesNo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub s: u64,
    pub n_prime: i64,
    pub kopt_upper: u64,
    pub bound_name: BoundName,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub singleton_rd: i64,
    pub table: Vec<BoundRow>,
    pub cm_upper: u64,
    pub s_star: u64,
    pub verdicts: Verdicts,
}

/// Evaluates the generalized C-M bound for a code with certified (r, delta)
/// locality. The scan runs s = 1, 2, ... up to and including the first s
/// whose shortened length drops below d.
pub fn cm_certify(
    params: &CodeParams,
    r: u32,
    delta: u32,
    q: u64,
    certificate: Option<&LocalityCertificate>,
) -> Result<BoundReport, BoundError> {
    let cert = certificate.ok_or(BoundError::MissingCertificate { r, delta })?;
    if cert.r != r || cert.delta < delta {
        return Err(BoundError::CertificateMismatch {
            r,
            delta,
            cert_r: cert.r,
            cert_delta: cert.delta,
        });
    }
    let k = params.k as u64;
    if k == 0 || r == 0 || delta < 2 {
        return Err(BoundError::Parameters { k, r, delta });
    }
    let n = params.n as i64;
    let d = params.d as u64;
    let step = (r + delta - 1) as i64;

    let mut table = Vec::new();
    let mut s = 1u64;
    loop {
        let n_prime = n - s as i64 * step;
        let bound = kopt_upper(n_prime, d, q);
        table.push(BoundRow {
            s,
            n_prime,
            kopt_upper: bound.value,
            bound_name: bound.name,
        });
        if n_prime < d as i64 {
            break;
        }
        s += 1;
    }
    let (s_star, cm_upper) = table
        .iter()
        .map(|row| (row.s, row.s * r as u64 + row.kopt_upper))
        .min_by_key(|&(s, v)| (v, s))
        .expect("table has at least one row");
    if cm_upper < k {
        return Err(BoundError::Inconsistent { cm_upper, k });
    }
    let singleton_rd = singleton_rd_bound(params.n as u64, k, r, delta);
    Ok(BoundReport {
        singleton_rd,
        table,
        cm_upper,
        s_star,
        verdicts: Verdicts {
            k_optimal: if cm_upper == k {
                KOptimal::Certified
            } else {
                KOptimal::Inconclusive
            },
            griesmer: griesmer_check(params, q).into(),
            singleton_rd_optimal: (params.d as i64 == singleton_rd).into(),
        },
    })
}
