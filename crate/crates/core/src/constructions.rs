//! The punctured simplex families and their claim sheets.
//!
//! A construction deletes a point set D from PG(m-1, q) and builds the code
//! on the remaining points. Alongside the code it records what the closed
//! forms predict (length, dimension, distance, locality, Griesmer and
//! k-optimality claims) and the exact integer comparisons behind every
//! applicability condition. Nothing here is verified; the certification
//! module does that against the exhaustive oracle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::field::{Field, FieldError};
use crate::geometry::{pg_points, subspace_points, weight2_points, GeometryError, PointSet};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("delta must lie in [2, q={q}], got {delta}")]
    DeltaRange { delta: u64, q: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Simplex,
    SubspaceUnion,
    Weight2Single,
    Weight2Multi,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::SubspaceUnion => "subspace-union",
            Family::Weight2Single => "weight2-single",
            Family::Weight2Multi => "weight2-multi",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        [
            Family::Simplex,
            Family::SubspaceUnion,
            Family::Weight2Single,
            Family::Weight2Multi,
        ]
        .into_iter()
        .find(|f| f.name() == s)
    }
}

/// Which family to build, over GF(p^e), with 1-indexed coordinate sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub p: u32,
    pub e: u32,
    pub m: usize,
    #[serde(default)]
    pub sets: Vec<Vec<usize>>,
}

impl ConstructionSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    /// Sets as `1,2;3` in the CLI grammar.
    pub fn sets_string(&self) -> String {
        self.sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamTriple {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

/// One applicability condition, with the exact integers compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub lhs: i128,
    pub rhs: i128,
}

impl Condition {
    fn le(name: &str, lhs: i128, rhs: i128) -> Condition {
        Condition {
            name: name.to_string(),
            holds: lhs <= rhs,
            lhs,
            rhs,
        }
    }

    fn lt(name: &str, lhs: i128, rhs: i128) -> Condition {
        Condition {
            name: name.to_string(),
            holds: lhs < rhs,
            lhs,
            rhs,
        }
    }
}

/// Claimed (r, delta) locality. `delta` is `None` outside the covered cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedLocality {
    pub r: u32,
    pub delta: Option<u32>,
    pub case: String,
}

impl PredictedLocality {
    fn claimed(delta: u64, case: &str) -> Self {
        PredictedLocality {
            r: 2,
            delta: Some(delta as u32),
            case: case.to_string(),
        }
    }

    fn uncovered(case: &str) -> Self {
        PredictedLocality {
            r: 2,
            delta: None,
            case: case.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSheet {
    pub family: Family,
    pub predicted_params: ParamTriple,
    /// |D| from its closed form.
    pub predicted_removed: u64,
    pub predicted_locality: PredictedLocality,
    pub griesmer_claimed: bool,
    pub optimality_claimed: bool,
    pub conditions: Vec<Condition>,
}

/// A built code together with the deleted set D and its claims.
#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub field: Field,
    pub removed: PointSet,
    pub code: LinearCode,
    pub claims: ClaimSheet,
}

fn pow(q: u64, e: usize) -> i128 {
    (q as i128).pow(e as u32)
}

fn choose2(s: usize) -> i128 {
    (s * (s.saturating_sub(1)) / 2) as i128
}

fn hypothesis(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Hypothesis(msg.into())
}

/// Checks the family-specific hypotheses, naming the first one violated.
pub fn validate(spec: &ConstructionSpec) -> Result<(), ConstructionError> {
    let m = spec.m;
    if m < 2 {
        return Err(hypothesis(format!("m must be at least 2, got {m}")));
    }
    for (i, set) in spec.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(hypothesis(format!("A_{} is empty", i + 1)));
        }
        if let Some(&bad) = set.iter().find(|&&x| x == 0 || x > m) {
            return Err(hypothesis(format!(
                "A_{} contains {bad}, outside [1, {m}]",
                i + 1
            )));
        }
        let mut sorted = set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(hypothesis(format!("A_{} repeats a coordinate", i + 1)));
        }
    }
    let t = spec.sets.len();
    let overlap = |i: usize, j: usize| {
        spec.sets[i]
            .iter()
            .filter(|x| spec.sets[j].contains(x))
            .count()
    };
    match spec.family {
        Family::Simplex => {
            if t != 0 {
                return Err(hypothesis("the simplex family takes no coordinate sets"));
            }
        }
        Family::SubspaceUnion => {
            if t < 2 {
                return Err(hypothesis(format!(
                    "subspace-union needs t > 1 coordinate sets, got {t}"
                )));
            }
            for i in 0..t {
                for j in i + 1..t {
                    if overlap(i, j) > 0 {
                        return Err(hypothesis(format!(
                            "subspace-union needs pairwise disjoint sets; A_{} and A_{} intersect",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Family::Weight2Single => {
            if t != 1 {
                return Err(hypothesis(format!(
                    "weight2-single takes exactly one set, got {t}"
                )));
            }
            if spec.sets[0].len() < 3 {
                return Err(hypothesis(format!(
                    "weight2-single needs |A| = s >= 3, got {}",
                    spec.sets[0].len()
                )));
            }
        }
        Family::Weight2Multi => {
            if t == 0 {
                return Err(hypothesis("weight2-multi needs at least one set"));
            }
            if let Some(i) = spec.sets.iter().position(|s| s.len() < 3) {
                return Err(hypothesis(format!(
                    "weight2-multi needs |A_i| >= 3; |A_{}| = {}",
                    i + 1,
                    spec.sets[i].len()
                )));
            }
            for i in 0..t {
                for j in i + 1..t {
                    if overlap(i, j) > 1 {
                        return Err(hypothesis(format!(
                            "weight2-multi needs |A_i ∩ A_j| <= 1; A_{} and A_{} share {}",
                            i + 1,
                            j + 1,
                            overlap(i, j)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Line-budget sufficient condition for (2, delta) locality:
/// `|D| <= (q^{m-1} - 1)/(q - 1) * (q + 1 - delta) - 1`.
pub fn line_budget_sufficient(
    removed: u64,
    m: usize,
    q: u64,
    delta: u64,
) -> Result<bool, ConstructionError> {
    if delta < 2 || delta > q {
        return Err(ConstructionError::DeltaRange { delta, q });
    }
    let lines = (pow(q, m - 1) - 1) / (q as i128 - 1);
    Ok((removed as i128) <= lines * (q as i128 + 1 - delta as i128) - 1)
}

/// Largest number of sets sharing one size: the max{i_1, i_2 - i_1, ...}
/// of the Griesmer condition.
fn max_size_multiplicity(sets: &[Vec<usize>]) -> usize {
    let mut groups: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sets {
        *groups.entry(s.len()).or_default() += 1;
    }
    groups.values().copied().max().unwrap_or(0)
}

/// The claimed (2, delta) locality for a spec, or "uncovered".
pub fn predicted_locality(spec: &ConstructionSpec) -> PredictedLocality {
    let q = spec.q();
    let m = spec.m;
    let t = spec.sets.len();
    match spec.family {
        Family::Simplex => PredictedLocality::claimed(q, "simplex"),
        Family::SubspaceUnion => {
            let sizes: Vec<usize> = spec.sets.iter().map(|s| s.len()).collect();
            if t == 2 && sizes.iter().all(|&s| s + 2 <= m) {
                PredictedLocality::claimed(q, "t=2, all |A_i| <= m-2")
            } else if t >= 3 && m >= 4 {
                PredictedLocality::claimed(q, "t>=3, m>=4")
            } else if t == 2 && m > 2 && q > 2 && sizes.contains(&(m - 1)) {
                PredictedLocality::claimed(q - 1, "m>t=2, q>2, |A_i| = m-1")
            } else {
                PredictedLocality::uncovered("outside the subspace-union locality cases")
            }
        }
        Family::Weight2Single | Family::Weight2Multi => {
            if weight2_removed_bound(spec).holds {
                PredictedLocality::claimed(q, "weight-2 deletion within the line budget")
            } else {
                PredictedLocality::uncovered("weight-2 deletion exceeds the line budget")
            }
        }
    }
}

fn weight2_removed(spec: &ConstructionSpec) -> i128 {
    (spec.q() as i128 - 1) * spec.sets.iter().map(|s| choose2(s.len())).sum::<i128>()
}

/// `(q-1) sum C(s_i, 2) <= (q^{m-1} - q)/(q - 1)`; the right side is an integer.
fn weight2_removed_bound(spec: &ConstructionSpec) -> Condition {
    let q = spec.q();
    Condition::le(
        "(q-1)*sum C(s_i,2) <= (q^(m-1)-q)/(q-1)",
        weight2_removed(spec),
        (pow(q, spec.m - 1) - q as i128) / (q as i128 - 1),
    )
}

/// Closed-form predictions and conditions, without building anything.
pub fn claim_sheet(spec: &ConstructionSpec) -> Result<ClaimSheet, ConstructionError> {
    validate(spec)?;
    let q = spec.q();
    let qi = q as i128;
    let m = spec.m;
    let total = (pow(q, m) - 1) / (qi - 1);
    let mut conditions = Vec::new();
    let predicted_locality = predicted_locality(spec);
    let covered = predicted_locality.delta.is_some();

    let (removed, d, griesmer_claimed, optimality_claimed) = match spec.family {
        Family::Simplex => (0, pow(q, m - 1), true, true),
        Family::SubspaceUnion => {
            let t = spec.sets.len() as i128;
            let sum_q: i128 = spec.sets.iter().map(|s| pow(q, s.len())).sum();
            let removed = (sum_q - t) / (qi - 1);
            let d = pow(q, m - 1) - spec.sets.iter().map(|s| pow(q, s.len() - 1)).sum::<i128>();
            let mult = Condition::le(
                "max equal-size group count <= q-1",
                max_size_multiplicity(&spec.sets) as i128,
                qi - 1,
            );
            let griesmer = mult.holds;
            conditions.push(mult);
            // The binary t>=3 case additionally relies on distinct set sizes.
            let optimal = covered && (q > 2 || spec.sets.len() < 3 || griesmer);
            (removed, d, griesmer, optimal)
        }
        Family::Weight2Single | Family::Weight2Multi => {
            let removed = weight2_removed(spec);
            let sum_sq: i128 = spec
                .sets
                .iter()
                .map(|s| {
                    let b = 2 * (s.len() as i128 - 1) * (qi - 1) + qi;
                    b * b
                })
                .sum();
            let d = pow(q, m - 1) - sum_sq.div_euclid(8 * qi);
            let n = total - removed;
            let bound = weight2_removed_bound(spec);
            // 0 < qd / (qd - (q-1)(n-q-1)) < q^{m-1}, cross-multiplied.
            let qd = qi * d;
            let slack = qd - (qi - 1) * (n - qi - 1);
            let positive = Condition::lt("(q-1)(n-q-1) < qd", (qi - 1) * (n - qi - 1), qd);
            let below = Condition::lt(
                "qd < q^(m-1) * (qd - (q-1)(n-q-1))",
                qd,
                pow(q, m - 1) * slack,
            );
            let optimal = bound.holds && positive.holds && below.holds;
            conditions.extend([bound, positive, below]);
            (removed, d, false, optimal)
        }
    };

    Ok(ClaimSheet {
        family: spec.family,
        predicted_params: ParamTriple {
            n: (total - removed) as u64,
            k: m as u64,
            d: d as u64,
        },
        predicted_removed: removed as u64,
        predicted_locality,
        griesmer_claimed,
        optimality_claimed,
        conditions,
    })
}

/// The deleted point set D for a validated spec.
pub fn removed_points(spec: &ConstructionSpec, field: &Field) -> Result<PointSet, ConstructionError> {
    let m = spec.m;
    let mut d = PointSet::empty(m, field.q());
    for set in &spec.sets {
        let part = match spec.family {
            Family::Simplex => unreachable!("validated: no sets"),
            Family::SubspaceUnion => subspace_points(set, field, m)?,
            Family::Weight2Single | Family::Weight2Multi => weight2_points(set, field, m)?,
        };
        d = d.union(&part)?;
    }
    Ok(d)
}

/// Builds D, its complement, the code on the complement and the claim sheet.
pub fn construct(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    let claims = claim_sheet(spec)?;
    let field = Field::new(spec.p, spec.e, None)?;
    let removed = removed_points(spec, &field)?;
    let complement = pg_points(spec.m, &field)?.difference(&removed)?;
    let code = LinearCode::from_points(&field, &complement)?;
    Ok(Construction {
        spec: spec.clone(),
        field,
        removed,
        code,
        claims,
    })
}
