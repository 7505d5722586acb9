//! Points and lines of PG(m-1, q), and the coordinate-subspace point sets
//! that the punctured simplex constructions delete.
//!
//! A projective point is stored by its canonical representative: the first
//! nonzero coordinate, scanning from index 1 upward, is 1. Point sets are kept
//! sorted lexicographically by coordinate encodings, which fixes every
//! downstream column order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::field::{Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("projective space needs m >= 1, got {0}")]
    Dimension(usize),
    #[error("coordinate set is empty")]
    EmptySupport,
    #[error("coordinate {index} is outside [1, {m}]")]
    CoordinateOutOfRange { index: usize, m: usize },
    #[error("weight-2 point sets need |A| >= 3, got {0}")]
    SupportTooSmall(usize),
    #[error("point sets live in different ambient spaces (m={0}, q={1}) vs (m={2}, q={3})")]
    AmbientMismatch(usize, u32, usize, u32),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
}

/// Canonical representative of a point of PG(m-1, q).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point(Vec<Elem>);

impl Point {
    /// Scales a nonzero vector so its first nonzero coordinate is 1.
    pub fn canonical(field: &Field, coords: &[Elem]) -> Result<Point, GeometryError> {
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroVector)?;
        let inv = field.inv(lead).expect("lead is nonzero");
        Ok(Point(coords.iter().map(|&c| field.mul(c, inv)).collect()))
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    /// Base-q integer with the first coordinate most significant. Ordering by
    /// key is the lexicographic order of points.
    pub fn key(&self, q: u32) -> u64 {
        vector_key(&self.0, q)
    }

    pub fn from_key(key: u64, q: u32, m: usize) -> Point {
        let mut coords = vec![Elem::ZERO; m];
        let mut k = key;
        for c in coords.iter_mut().rev() {
            *c = Elem((k % q as u64) as u32);
            k /= q as u64;
        }
        Point(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

pub(crate) fn vector_key(coords: &[Elem], q: u32) -> u64 {
    coords
        .iter()
        .fold(0u64, |acc, c| acc * q as u64 + c.enc() as u64)
}

/// Key of the canonical representative of a nonzero vector, without
/// allocating. `None` for the zero vector.
pub(crate) fn canonical_key(field: &Field, coords: &[Elem]) -> Option<u64> {
    let lead = coords.iter().copied().find(|c| !c.is_zero())?;
    let inv = field.inv(lead).ok()?;
    let q = field.q() as u64;
    Some(
        coords
            .iter()
            .fold(0u64, |acc, &c| acc * q + field.mul(c, inv).enc() as u64),
    )
}

/// A sorted set of distinct canonical points in a fixed PG(m-1, q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    m: usize,
    q: u32,
    points: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Difference,
    Intersection,
}

impl PointSet {
    pub fn empty(m: usize, q: u32) -> PointSet {
        PointSet {
            m,
            q,
            points: Vec::new(),
        }
    }

    /// Sorts and deduplicates. Points must already be canonical and of length m.
    pub fn from_points(
        m: usize,
        q: u32,
        points: impl IntoIterator<Item = Point>,
    ) -> Result<PointSet, GeometryError> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        if let Some(bad) = set.iter().find(|p| p.dim() != m) {
            return Err(GeometryError::Length {
                expected: m,
                got: bad.dim(),
            });
        }
        Ok(PointSet {
            m,
            q,
            points: set.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn combine(&self, other: &PointSet, op: SetOp) -> Result<PointSet, GeometryError> {
        if self.m != other.m || self.q != other.q {
            return Err(GeometryError::AmbientMismatch(
                self.m, self.q, other.m, other.q,
            ));
        }
        let points = match op {
            SetOp::Union => {
                let mut all: Vec<Point> =
                    self.points.iter().chain(&other.points).cloned().collect();
                all.sort();
                all.dedup();
                all
            }
            SetOp::Difference => self
                .points
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
            SetOp::Intersection => self
                .points
                .iter()
                .filter(|p| other.contains(p))
                .cloned()
                .collect(),
        };
        Ok(PointSet {
            m: self.m,
            q: self.q,
            points,
        })
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet, GeometryError> {
        self.combine(other, SetOp::Union)
    }

    pub fn difference(&self, other: &PointSet) -> Result<PointSet, GeometryError> {
        self.combine(other, SetOp::Difference)
    }

    pub fn intersection(&self, other: &PointSet) -> Result<PointSet, GeometryError> {
        self.combine(other, SetOp::Intersection)
    }

    /// One point per line, coordinates as space-separated encodings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Number of points of PG(s-1, q).
pub fn projective_count(q: u64, s: u32) -> u64 {
    (q.pow(s) - 1) / (q - 1)
}

/// Canonical points whose support lies in `support` (0-based coordinates),
/// in lexicographic order.
fn points_supported_in(field: &Field, m: usize, support: &[bool]) -> Vec<Point> {
    let q = field.q();
    let mut out = Vec::new();
    // For each leading position, the lead is 1 and later supported
    // coordinates range freely. Lex order places later leads first.
    for lead in (0..m).rev() {
        if !support[lead] {
            continue;
        }
        let free: Vec<usize> = (lead + 1..m).filter(|&i| support[i]).collect();
        let count = (q as u64).pow(free.len() as u32);
        for v in 0..count {
            let mut coords = vec![Elem::ZERO; m];
            coords[lead] = Elem::ONE;
            let mut rest = v;
            for &i in free.iter().rev() {
                coords[i] = Elem((rest % q as u64) as u32);
                rest /= q as u64;
            }
            out.push(Point(coords));
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

/// All (q^m - 1)/(q - 1) points of PG(m-1, q).
pub fn pg_points(m: usize, field: &Field) -> Result<PointSet, GeometryError> {
    if m == 0 {
        return Err(GeometryError::Dimension(m));
    }
    Ok(PointSet {
        m,
        q: field.q(),
        points: points_supported_in(field, m, &vec![true; m]),
    })
}

fn support_mask(a: &[usize], m: usize) -> Result<Vec<bool>, GeometryError> {
    if a.is_empty() {
        return Err(GeometryError::EmptySupport);
    }
    let mut mask = vec![false; m];
    for &i in a {
        if i == 0 || i > m {
            return Err(GeometryError::CoordinateOutOfRange { index: i, m });
        }
        mask[i - 1] = true;
    }
    Ok(mask)
}

/// P_A: points vanishing outside the 1-indexed coordinate set `a`.
pub fn subspace_points(a: &[usize], field: &Field, m: usize) -> Result<PointSet, GeometryError> {
    let mask = support_mask(a, m)?;
    Ok(PointSet {
        m,
        q: field.q(),
        points: points_supported_in(field, m, &mask),
    })
}

/// Points of P_A with exactly two nonzero coordinates.
pub fn weight2_points(a: &[usize], field: &Field, m: usize) -> Result<PointSet, GeometryError> {
    let mask = support_mask(a, m)?;
    let s = mask.iter().filter(|&&b| b).count();
    if s < 3 {
        return Err(GeometryError::SupportTooSmall(s));
    }
    Ok(PointSet {
        m,
        q: field.q(),
        points: points_supported_in(field, m, &mask)
            .into_iter()
            .filter(|p| p.weight() == 2)
            .collect(),
    })
}

/// The q+1 points on the line through distinct points `g` and `h`, sorted.
pub fn line_through(field: &Field, g: &Point, h: &Point) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(field.q() as usize + 1);
    pts.push(g.clone());
    for lambda in field.elements() {
        let v: Vec<Elem> = h
            .coords()
            .iter()
            .zip(g.coords())
            .map(|(&hc, &gc)| field.add(hc, field.mul(lambda, gc)))
            .collect();
        pts.push(Point::canonical(field, &v).expect("g and h are independent"));
    }
    pts.sort();
    pts
}

/// Every line of PG(m-1, q) through `g`, each as a sorted point set. Lines
/// are found by pairing `g` with every other point and deduplicating, and
/// are returned in lexicographic order of their point lists.
pub fn lines_through(g: &Point, m: usize, field: &Field) -> Result<Vec<PointSet>, GeometryError> {
    if g.dim() != m {
        return Err(GeometryError::Length {
            expected: m,
            got: g.dim(),
        });
    }
    let q = field.q();
    let mut covered: HashSet<Point> = HashSet::new();
    covered.insert(g.clone());
    let mut lines = Vec::new();
    for h in pg_points(m, field)?.iter() {
        if covered.contains(h) {
            continue;
        }
        let line = line_through(field, g, h);
        covered.extend(line.iter().cloned());
        lines.push(line);
    }
    lines.sort();
    Ok(lines
        .into_iter()
        .map(|points| PointSet { m, q, points })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn pg_sizes() {
        assert_eq!(pg_points(3, &gf(2)).unwrap().len(), 7);
        assert_eq!(pg_points(3, &gf(4)).unwrap().len(), 21);
        assert_eq!(pg_points(5, &gf(2)).unwrap().len(), 31);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 2..=5usize {
                if q.pow(m as u32) > 1 << 16 {
                    continue;
                }
                let f = gf(q);
                let pts = pg_points(m, &f).unwrap();
                assert_eq!(pts.len() as u64, projective_count(q, m as u32));
                for p in &pts {
                    assert_eq!(&Point::canonical(&f, p.coords()).unwrap(), p);
                }
                assert!(pts.points().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn subspace_sizes() {
        let f4 = gf(4);
        let a1 = subspace_points(&[1], &f4, 3).unwrap();
        assert_eq!(a1.points(), &[Point(vec![Elem(1), Elem(0), Elem(0)])]);
        assert_eq!(subspace_points(&[2, 3], &f4, 3).unwrap().len(), 5);
        assert_eq!(subspace_points(&[1, 2, 3], &gf(2), 5).unwrap().len(), 7);
        assert_eq!(
            subspace_points(&[], &f4, 3).unwrap_err(),
            GeometryError::EmptySupport
        );
        assert!(matches!(
            subspace_points(&[4], &f4, 3),
            Err(GeometryError::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn weight2_sets() {
        let f2 = gf(2);
        let w = weight2_points(&[1, 2, 3], &f2, 5).unwrap();
        let keys: Vec<Vec<u32>> = w
            .iter()
            .map(|p| p.coords().iter().map(|c| c.enc()).collect())
            .collect();
        assert_eq!(
            keys,
            vec![
                vec![0, 1, 1, 0, 0],
                vec![1, 0, 1, 0, 0],
                vec![1, 1, 0, 0, 0]
            ]
        );
        assert_eq!(weight2_points(&[1, 2, 3], &gf(4), 3).unwrap().len(), 9);
        assert_eq!(weight2_points(&[1, 2, 3], &gf(3), 3).unwrap().len(), 6);
        assert_eq!(
            weight2_points(&[1, 2], &f2, 3).unwrap_err(),
            GeometryError::SupportTooSmall(2)
        );
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            for s in 3..=5usize {
                let a: Vec<usize> = (1..=s).collect();
                let w = weight2_points(&a, &f, 5).unwrap();
                let full = subspace_points(&a, &f, 5).unwrap();
                assert_eq!(w.len() as u64, (q - 1) * (s * (s - 1) / 2) as u64);
                assert!(w.iter().all(|p| full.contains(p)));
            }
        }
    }

    #[test]
    fn line_counts() {
        for (m, q, lines, size) in [(3, 2, 3, 3), (3, 4, 5, 5), (5, 2, 15, 3)] {
            let f = gf(q);
            for g in pg_points(m, &f).unwrap().iter() {
                let ls = lines_through(g, m, &f).unwrap();
                assert_eq!(ls.len(), lines);
                for l in &ls {
                    assert_eq!(l.len(), size);
                    assert!(l.contains(g));
                }
            }
        }
    }

    #[test]
    fn unique_line_through_two_points() {
        for m in 3..=4usize {
            for q in [2u64, 3, 4] {
                let f = gf(q);
                let pts = pg_points(m, &f).unwrap();
                let all_lines: BTreeSet<Vec<Point>> = pts
                    .iter()
                    .flat_map(|g| lines_through(g, m, &f).unwrap())
                    .map(|l| l.points().to_vec())
                    .collect();
                for (i, a) in pts.iter().enumerate() {
                    for b in pts.iter().skip(i + 1) {
                        let n = all_lines
                            .iter()
                            .filter(|l| l.binary_search(a).is_ok() && l.binary_search(b).is_ok())
                            .count();
                        assert_eq!(n, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalization_is_scale_invariant() {
        for q in [3u64, 4, 5, 9] {
            let f = gf(q);
            for g in pg_points(3, &f).unwrap().iter() {
                for lambda in f.nonzero() {
                    let scaled: Vec<Elem> = g.coords().iter().map(|&c| f.mul(lambda, c)).collect();
                    assert_eq!(&Point::canonical(&f, &scaled).unwrap(), g);
                    assert_eq!(canonical_key(&f, &scaled), Some(g.key(f.q())));
                }
            }
        }
    }

    #[test]
    fn set_operations() {
        let f = gf(4);
        let a1 = subspace_points(&[1], &f, 3).unwrap();
        let a2 = subspace_points(&[2, 3], &f, 3).unwrap();
        assert!(a1.intersection(&a2).unwrap().is_empty());
        assert!(a2.difference(&a2).unwrap().is_empty());
        let all = pg_points(3, &f).unwrap();
        assert_eq!(all.difference(&PointSet::empty(3, 4)).unwrap(), all);
        assert_eq!(a1.union(&a2).unwrap().len(), 6);
        let other = pg_points(4, &f).unwrap();
        assert!(matches!(
            all.union(&other),
            Err(GeometryError::AmbientMismatch(..))
        ));
    }

    #[test]
    fn key_round_trip() {
        let f = gf(3);
        for p in pg_points(4, &f).unwrap().iter() {
            assert_eq!(&Point::from_key(p.key(3), 3, 4), p);
        }
    }
}
