//! Parameter grids for the reproduction sweeps.

use serde::{Deserialize, Serialize};

use crate::constructions::{validate, ConstructionSpec, Family, ParamTriple};
use crate::report::{run, Agreement};

/// (p, e) with p^e = q, if q is a prime power.
pub fn prime_power_of(q: u64) -> Option<(u32, u32)> {
    crate::field::prime_power(q).ok()
}

fn mask_to_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn qm_fits(q: u64, m: usize, max_qm: u64) -> bool {
    q.checked_pow(m as u32).is_some_and(|v| v <= max_qm)
}

/// Unordered families of `t` pairwise-disjoint nonempty subsets of [m].
fn disjoint_families(m: usize, t: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(m: usize, t: usize, start: u32, used: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<Vec<usize>>>) {
        if acc.len() == t {
            out.push(acc.iter().map(|&s| mask_to_set(s)).collect());
            return;
        }
        for mask in start..(1u32 << m) {
            if mask & used == 0 {
                acc.push(mask);
                go(m, t, mask + 1, used | mask, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, t, 1, 0, &mut Vec::new(), &mut out);
    out
}

/// Subspace-union specs: q in {2,3,4,5}, m in {3,4,5}, q^m <= max_qm,
/// t in {2,3}. Families violating the hypotheses are skipped.
pub fn subspace_union_grid(max_qm: u64) -> Vec<ConstructionSpec> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let (p, e) = prime_power_of(q).expect("grid orders are prime powers");
        for m in 3..=5 {
            if !qm_fits(q, m, max_qm) {
                continue;
            }
            for t in 2..=3 {
                for sets in disjoint_families(m, t) {
                    let spec = ConstructionSpec {
                        family: Family::SubspaceUnion,
                        p,
                        e,
                        m,
                        sets,
                    };
                    if validate(&spec).is_ok() {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out
}

/// Weight-2 specs: q in {2,3,4}, m in {4,5}, q^m <= max_qm, single sets of
/// size 3 or 4 and pairs of such sets meeting in at most one coordinate.
pub fn weight2_grid(max_qm: u64) -> Vec<ConstructionSpec> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4] {
        let (p, e) = prime_power_of(q).expect("grid orders are prime powers");
        for m in 4..=5 {
            if !qm_fits(q, m, max_qm) {
                continue;
            }
            let sets: Vec<u32> = (1u32..(1 << m))
                .filter(|s| matches!(s.count_ones(), 3 | 4))
                .collect();
            for &a in &sets {
                let spec = ConstructionSpec {
                    family: Family::Weight2Single,
                    p,
                    e,
                    m,
                    sets: vec![mask_to_set(a)],
                };
                if validate(&spec).is_ok() {
                    out.push(spec);
                }
            }
            for (i, &a) in sets.iter().enumerate() {
                for &b in &sets[i + 1..] {
                    if (a & b).count_ones() > 1 {
                        continue;
                    }
                    let spec = ConstructionSpec {
                        family: Family::Weight2Multi,
                        p,
                        e,
                        m,
                        sets: vec![mask_to_set(a), mask_to_set(b)],
                    };
                    if validate(&spec).is_ok() {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out
}

/// The two worked examples.
pub fn example_specs() -> Vec<ConstructionSpec> {
    vec![
        ConstructionSpec {
            family: Family::SubspaceUnion,
            p: 2,
            e: 2,
            m: 3,
            sets: vec![vec![1], vec![2, 3]],
        },
        ConstructionSpec {
            family: Family::Weight2Multi,
            p: 2,
            e: 1,
            m: 5,
            sets: vec![vec![1, 2, 3], vec![3, 4, 5]],
        },
    ]
}

/// One line of a sweep: predicted against verified, plus the agreement flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: Family,
    pub q: u64,
    pub m: usize,
    pub sets: String,
    pub predicted: ParamTriple,
    pub verified: Option<ParamTriple>,
    pub claimed_delta: Option<u32>,
    pub best_delta: Option<u32>,
    pub agreement: Option<Agreement>,
    pub error: Option<String>,
    pub pass: bool,
}

impl SweepRow {
    /// Fixed-width text form used by `repro`.
    pub fn to_line(&self) -> String {
        let t = |p: &ParamTriple| format!("[{},{},{}]", p.n, p.k, p.d);
        let opt = |d: Option<u32>| d.map_or("-".to_string(), |d| d.to_string());
        format!(
            "{} {:<14} q={} m={} sets={:<12} predicted={:<12} verified={:<12} delta={}/{}{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.family.name(),
            self.q,
            self.m,
            self.sets,
            t(&self.predicted),
            self.verified.as_ref().map_or("-".to_string(), t),
            opt(self.claimed_delta),
            opt(self.best_delta),
            self.error.as_ref().map_or(String::new(), |e| format!(" error: {e}")),
        )
    }
}

pub fn run_row(spec: &ConstructionSpec, budget: u64) -> SweepRow {
    let claims = crate::constructions::claim_sheet(spec);
    let predicted = claims
        .as_ref()
        .map(|c| c.predicted_params)
        .unwrap_or(ParamTriple { n: 0, k: 0, d: 0 });
    let claimed_delta = claims.as_ref().ok().and_then(|c| c.predicted_locality.delta);
    let mut row = SweepRow {
        family: spec.family,
        q: spec.q(),
        m: spec.m,
        sets: spec.sets_string(),
        predicted,
        verified: None,
        claimed_delta,
        best_delta: None,
        agreement: None,
        error: None,
        pass: false,
    };
    match run(spec, budget) {
        Ok((_, report)) => {
            row.verified = Some(report.verified.params);
            row.best_delta = Some(report.best_delta);
            row.pass = report.agreement.all();
            row.agreement = Some(report.agreement);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}
