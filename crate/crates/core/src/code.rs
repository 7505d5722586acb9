//! Linear codes given by a generator matrix, and the exhaustive analyzer that
//! serves as the oracle for every closed-form parameter claim.
//!
//! Codewords are enumerated by message: `c_x = x G` for all `x` in GF(q)^m.
//! When the rank k is below m each codeword appears q^{m-k} times and the
//! weight counts are divided accordingly.

use std::collections::BTreeMap;
use std::env;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::geometry::{canonical_key, PointSet};

/// Default cap on the number of messages `q^m` the analyzer will enumerate.
pub const DEFAULT_MAX_ENUM: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_MAX_ENUM`].
pub const MAX_ENUM_ENV: &str = "LRC_MAX_ENUM";

/// Enumeration budget from `LRC_MAX_ENUM`, or the default.
pub fn enumeration_budget() -> u64 {
    env::var(MAX_ENUM_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("code has no columns")]
    Empty,
    #[error("generator matrix needs at least one row")]
    NoRows,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("entry {enc} at row {row}, column {col} is outside GF({q})")]
    Entry {
        row: usize,
        col: usize,
        enc: u32,
        q: u32,
    },
    #[error("enumerating {messages} messages exceeds the budget of {budget}")]
    BudgetExceeded { messages: u128, budget: u64 },
    #[error("coordinate {index} is outside [0, {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("message has length {got}, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("point set lives over GF({got}), code field is GF({expected})")]
    FieldMismatch { expected: u32, got: u32 },
}

/// An m x n generator matrix over a finite field.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    rows: Vec<Vec<Elem>>,
}

/// Exact parameters of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    /// Minimum nonzero weight; 0 when the code is `{0}`.
    pub d: usize,
    /// Codeword count per weight; zero counts are omitted.
    pub weight_distribution: BTreeMap<usize, u64>,
}

impl CodeParams {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.n, self.k, self.d)
    }
}

impl LinearCode {
    pub fn from_rows(field: Field, rows: Vec<Vec<Elem>>) -> Result<LinearCode, CodeError> {
        let first = rows.first().ok_or(CodeError::NoRows)?;
        let n = first.len();
        if n == 0 {
            return Err(CodeError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::Ragged {
                    row: r,
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some((c, e)) = row.iter().enumerate().find(|(_, e)| e.enc() >= field.q()) {
                return Err(CodeError::Entry {
                    row: r,
                    col: c,
                    enc: e.enc(),
                    q: field.q(),
                });
            }
        }
        Ok(LinearCode { field, rows })
    }

    /// Generator matrix whose columns are the points of `columns` in order.
    pub fn from_points(field: &Field, columns: &PointSet) -> Result<LinearCode, CodeError> {
        if columns.is_empty() {
            return Err(CodeError::Empty);
        }
        if columns.q() != field.q() {
            return Err(CodeError::FieldMismatch {
                expected: field.q(),
                got: columns.q(),
            });
        }
        let m = columns.dim();
        let rows = (0..m)
            .map(|r| columns.iter().map(|p| p.coords()[r]).collect())
            .collect();
        Ok(LinearCode {
            field: field.clone(),
            rows,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of generator rows (message length).
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    /// Keeps the coordinates in `keep` (sorted, deduplicated).
    pub fn puncture(&self, keep: &[usize]) -> Result<LinearCode, CodeError> {
        let mut idx = keep.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            return Err(CodeError::Empty);
        }
        let n = self.n();
        if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
            return Err(CodeError::IndexOutOfRange { index: bad, n });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| idx.iter().map(|&i| r[i]).collect())
            .collect();
        Ok(LinearCode {
            field: self.field.clone(),
            rows,
        })
    }

    /// Rank of the generator matrix by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank(&self.field, &self.rows)
    }

    /// Codeword for message `x`.
    pub fn encode(&self, x: &[Elem]) -> Result<Vec<Elem>, CodeError> {
        self.check_message(x)?;
        let f = &self.field;
        Ok((0..self.n())
            .map(|j| {
                x.iter()
                    .zip(&self.rows)
                    .fold(Elem::ZERO, |acc, (&xi, row)| f.add(acc, f.mul(xi, row[j])))
            })
            .collect())
    }

    /// Weight of `c_x`, computed as n minus the number of columns orthogonal
    /// to `x`.
    pub fn codeword_weight(&self, x: &[Elem]) -> Result<usize, CodeError> {
        self.check_message(x)?;
        let orthogonal = (0..self.n())
            .filter(|&j| {
                let col = self.column(j);
                self.field.dot(x, &col).is_zero()
            })
            .count();
        Ok(self.n() - orthogonal)
    }

    fn check_message(&self, x: &[Elem]) -> Result<(), CodeError> {
        if x.len() != self.m() {
            return Err(CodeError::MessageLength {
                expected: self.m(),
                got: x.len(),
            });
        }
        Ok(())
    }

    fn message_count(&self, budget: u64) -> Result<u64, CodeError> {
        let messages = (self.field.q() as u128).pow(self.m() as u32);
        if messages > budget as u128 {
            return Err(CodeError::BudgetExceeded { messages, budget });
        }
        Ok(messages as u64)
    }

    /// Exact n, k, d and weight distribution by enumerating all messages.
    pub fn analyze(&self, budget: u64) -> Result<CodeParams, CodeError> {
        self.message_count(budget)?;
        let n = self.n();
        let k = self.rank();
        let mut counts = Walker::new(self).weight_counts();
        let repeat = (self.field.q() as u64).pow((self.m() - k) as u32);
        let mut weight_distribution = BTreeMap::new();
        for (w, c) in counts.iter_mut().enumerate() {
            if *c > 0 {
                debug_assert_eq!(*c % repeat, 0);
                weight_distribution.insert(w, *c / repeat);
            }
        }
        let d = weight_distribution
            .keys()
            .copied()
            .find(|&w| w > 0)
            .unwrap_or(0);
        Ok(CodeParams {
            n,
            k,
            d,
            weight_distribution,
        })
    }

    /// Minimum distance only, abandoning a codeword once its weight reaches
    /// the best minimum found so far. Returns 0 for the zero code.
    pub fn min_distance(&self, budget: u64) -> Result<usize, CodeError> {
        self.message_count(budget)?;
        Ok(Walker::new(self).min_distance())
    }

    /// Whether the columns are nonzero and pairwise linearly independent,
    /// i.e. distinct projective points. Returns the first offending pair.
    pub fn duplicate_columns(&self) -> Option<(usize, Option<usize>)> {
        let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
        for j in 0..self.n() {
            match canonical_key(&self.field, &self.column(j)) {
                None => return Some((j, None)),
                Some(key) => {
                    if let Some(&i) = seen.get(&key) {
                        return Some((i, Some(j)));
                    }
                    seen.insert(key, j);
                }
            }
        }
        None
    }
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut a: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = field.inv(a[rank][col]).expect("pivot is nonzero");
        for v in a[rank].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(*v, field.mul(factor, pv));
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Depth-first message enumeration with incremental codewords: the partial
/// codeword at depth i is the sum of the first i scaled rows. The first
/// coordinate of the message is split across rayon workers.
struct Walker<'a> {
    field: &'a Field,
    /// scaled[r][v] = v * row r, as raw encodings.
    scaled: Vec<Vec<Vec<u32>>>,
    n: usize,
    q: u32,
}

impl<'a> Walker<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let f = &code.field;
        let scaled = code
            .rows
            .iter()
            .map(|row| {
                f.elements()
                    .map(|v| row.iter().map(|&g| f.mul(v, g).enc()).collect())
                    .collect()
            })
            .collect();
        Walker {
            field: f,
            scaled,
            n: code.n(),
            q: f.q(),
        }
    }

    fn add_into(&self, dst: &mut [u32], src: &[u32]) {
        let f = self.field;
        for (d, s) in dst.iter_mut().zip(src) {
            *d = f.add(Elem(*d), Elem(*s)).enc();
        }
    }

    fn weight_counts(&self) -> Vec<u64> {
        let m = self.scaled.len();
        (0..self.q)
            .into_par_iter()
            .map(|first| {
                let mut counts = vec![0u64; self.n + 1];
                let mut stack = vec![vec![0u32; self.n]; m + 1];
                stack[1] = self.scaled[0][first as usize].clone();
                self.walk(1, &mut stack, &mut |cw| {
                    counts[cw.iter().filter(|&&c| c != 0).count()] += 1;
                });
                counts
            })
            .reduce(
                || vec![0u64; self.n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }

    fn min_distance(&self) -> usize {
        let m = self.scaled.len();
        (0..self.q)
            .into_par_iter()
            .map(|first| {
                let mut best = usize::MAX;
                let mut stack = vec![vec![0u32; self.n]; m + 1];
                stack[1] = self.scaled[0][first as usize].clone();
                self.walk(1, &mut stack, &mut |cw| {
                    let mut w = 0;
                    for &c in cw {
                        if c != 0 {
                            w += 1;
                            if w >= best {
                                return;
                            }
                        }
                    }
                    if w > 0 {
                        best = w;
                    }
                });
                best
            })
            .min()
            .filter(|&b| b != usize::MAX)
            .unwrap_or(0)
    }

    fn walk(&self, depth: usize, stack: &mut [Vec<u32>], visit: &mut impl FnMut(&[u32])) {
        let m = self.scaled.len();
        if depth == m {
            visit(&stack[m]);
            return;
        }
        for v in 0..self.q as usize {
            let (lo, hi) = stack.split_at_mut(depth + 1);
            hi[0].copy_from_slice(&lo[depth]);
            self.add_into(&mut hi[0], &self.scaled[depth][v]);
            self.walk(depth + 1, stack, visit);
        }
    }
}

/// `analyze` with the environment budget.
pub fn analyze(code: &LinearCode) -> Result<CodeParams, CodeError> {
    code.analyze(enumeration_budget())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pg_points, subspace_points, Point};

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn simplex(m: usize, q: u64) -> LinearCode {
        let f = gf(q);
        LinearCode::from_points(&f, &pg_points(m, &f).unwrap()).unwrap()
    }

    #[test]
    fn binary_simplex_is_constant_weight() {
        let c = simplex(3, 2);
        let p = c.analyze(DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(p.triple(), (7, 3, 4));
        assert_eq!(p.weight_distribution, BTreeMap::from([(0, 1), (4, 7)]));
        assert_eq!(c.min_distance(DEFAULT_MAX_ENUM).unwrap(), 4);
    }

    #[test]
    fn simplex_weights_are_q_to_m_minus_1() {
        for (m, q) in [(3usize, 3u64), (3, 4), (4, 2), (2, 5)] {
            let c = simplex(m, q);
            let p = c.analyze(DEFAULT_MAX_ENUM).unwrap();
            let w = q.pow(m as u32 - 1) as usize;
            assert_eq!(p.d, w);
            assert_eq!(p.weight_distribution.len(), 2);
            assert_eq!(p.weight_distribution[&w], q.pow(m as u32) - 1);
        }
    }

    #[test]
    fn example_one_code() {
        let f = gf(4);
        let d = subspace_points(&[1], &f, 3)
            .unwrap()
            .union(&subspace_points(&[2, 3], &f, 3).unwrap())
            .unwrap();
        let dc = pg_points(3, &f).unwrap().difference(&d).unwrap();
        let c = LinearCode::from_points(&f, &dc).unwrap();
        assert_eq!((c.m(), c.n()), (3, 15));
        let p = c.analyze(DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(p.triple(), (15, 3, 11));
        assert_eq!(c.min_distance(DEFAULT_MAX_ENUM).unwrap(), 11);

        // (1,1,0), (1,0,1), (1,a,a+1), (1,a+1,a) with a = 2, a+1 = 3.
        let wanted: Vec<Vec<u32>> = vec![vec![1, 1, 0], vec![1, 0, 1], vec![1, 2, 3], vec![1, 3, 2]];
        let idx: Vec<usize> = wanted
            .iter()
            .map(|w| {
                c.columns()
                    .iter()
                    .position(|col| col.iter().map(|e| e.enc()).collect::<Vec<_>>() == *w)
                    .unwrap()
            })
            .collect();
        let local = c.puncture(&idx).unwrap();
        assert_eq!(local.analyze(DEFAULT_MAX_ENUM).unwrap().triple(), (4, 2, 3));
    }

    #[test]
    fn single_column_and_puncture_edges() {
        let f = gf(3);
        let one = PointSet::from_points(3, 3, [Point::canonical(&f, &[Elem(0), Elem(1), Elem(2)]).unwrap()]).unwrap();
        let c = LinearCode::from_points(&f, &one).unwrap();
        assert_eq!(c.analyze(DEFAULT_MAX_ENUM).unwrap().triple(), (1, 1, 1));

        let s = simplex(3, 3);
        let all: Vec<usize> = (0..s.n()).collect();
        assert_eq!(s.puncture(&all).unwrap().rows(), s.rows());
        assert_eq!(
            s.puncture(&[4]).unwrap().analyze(DEFAULT_MAX_ENUM).unwrap().triple(),
            (1, 1, 1)
        );
        assert_eq!(s.puncture(&[]).unwrap_err(), CodeError::Empty);
        assert!(matches!(
            s.puncture(&[99]),
            Err(CodeError::IndexOutOfRange { index: 99, .. })
        ));
        assert_eq!(
            LinearCode::from_points(&f, &PointSet::empty(3, 3)).unwrap_err(),
            CodeError::Empty
        );
    }

    #[test]
    fn rank_deficient_counts_are_divided() {
        let f = gf(3);
        let rows = vec![
            vec![Elem(1), Elem(0), Elem(1)],
            vec![Elem(2), Elem(0), Elem(2)],
        ];
        let c = LinearCode::from_rows(f, rows).unwrap();
        let p = c.analyze(DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(p.k, 1);
        assert_eq!(p.weight_distribution, BTreeMap::from([(0, 1), (2, 2)]));
        assert_eq!(p.d, 2);
    }

    #[test]
    fn zero_matrix_has_no_distance() {
        let f = gf(2);
        let c = LinearCode::from_rows(f, vec![vec![Elem(0); 3]]).unwrap();
        let p = c.analyze(DEFAULT_MAX_ENUM).unwrap();
        assert_eq!((p.k, p.d), (0, 0));
        assert_eq!(c.min_distance(DEFAULT_MAX_ENUM).unwrap(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let c = simplex(4, 3);
        assert_eq!(
            c.analyze(80).unwrap_err(),
            CodeError::BudgetExceeded {
                messages: 81,
                budget: 80
            }
        );
        assert!(c.analyze(81).is_ok());
    }

    #[test]
    fn codeword_weight_matches_encoding() {
        for (m, q) in [(3usize, 4u64), (4, 3), (4, 2)] {
            let f = gf(q);
            let pts = pg_points(m, &f).unwrap();
            // Drop a few points to break the constant-weight structure.
            let keep: Vec<Point> = pts.iter().skip(3).step_by(2).cloned().collect();
            let c = LinearCode::from_points(&f, &PointSet::from_points(m, f.q(), keep).unwrap()).unwrap();
            let total = q.pow(m as u32);
            for key in 0..total {
                let x = Point::from_key(key, f.q(), m);
                let direct = c.encode(x.coords()).unwrap().iter().filter(|e| !e.is_zero()).count();
                assert_eq!(c.codeword_weight(x.coords()).unwrap(), direct);
            }
            assert_eq!(c.codeword_weight(&vec![Elem(0); m]).unwrap(), 0);
        }
    }

    #[test]
    fn ragged_and_out_of_range_rows() {
        let f = gf(2);
        assert!(matches!(
            LinearCode::from_rows(f.clone(), vec![vec![Elem(1)], vec![]]),
            Err(CodeError::Ragged { row: 1, .. })
        ));
        assert!(matches!(
            LinearCode::from_rows(f.clone(), vec![vec![Elem(2)]]),
            Err(CodeError::Entry { enc: 2, .. })
        ));
        assert_eq!(LinearCode::from_rows(f, vec![]).unwrap_err(), CodeError::NoRows);
    }

    #[test]
    fn duplicate_column_detection() {
        let f = gf(3);
        let c = LinearCode::from_rows(
            f.clone(),
            vec![vec![Elem(1), Elem(2), Elem(0)], vec![Elem(1), Elem(2), Elem(1)]],
        )
        .unwrap();
        assert_eq!(c.duplicate_columns(), Some((0, Some(1))));
        let z = LinearCode::from_rows(f, vec![vec![Elem(0), Elem(1)]]).unwrap();
        assert_eq!(z.duplicate_columns(), Some((0, None)));
        assert_eq!(simplex(3, 3).duplicate_columns(), None);
    }
}
