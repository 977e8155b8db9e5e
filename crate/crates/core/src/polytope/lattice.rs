use std::collections::BTreeSet;

use super::HPolytope;
use crate::error::{Error, Result};
use crate::rational::{as_integer, ceil_i64, dot_ii, floor_i64, fmt_qvec, q, Q};

/// Finite set of lattice points in canonical lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePointSet {
    dim: usize,
    points: BTreeSet<Vec<i64>>,
}

impl LatticePointSet {
    pub fn new(dim: usize) -> Self {
        LatticePointSet { dim, points: BTreeSet::new() }
    }

    pub fn from_points(dim: usize, points: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut s = Self::new(dim);
        for p in points {
            s.insert(p)?;
        }
        Ok(s)
    }

    /// The single point `0 ∈ ℤⁿ`.
    pub fn origin(dim: usize) -> Self {
        let mut s = Self::new(dim);
        s.points.insert(vec![0; dim]);
        s
    }

    pub fn insert(&mut self, p: Vec<i64>) -> Result<bool> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        Ok(self.points.insert(p))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, Vec<i64>> {
        self.points.iter()
    }

    pub fn points(&self) -> &BTreeSet<Vec<i64>> {
        &self.points
    }

    pub fn to_rational(&self) -> Vec<Vec<Q>> {
        self.points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect()
    }

    pub fn is_subset(&self, other: &LatticePointSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn minkowski_sum(&self, other: &LatticePointSet) -> LatticePointSet {
        let mut out = BTreeSet::new();
        for a in &self.points {
            for b in &other.points {
                out.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePointSet { dim: self.dim, points: out }
    }

    pub fn scaled(&self, m: i64) -> LatticePointSet {
        LatticePointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.iter().map(|x| x * m).collect()).collect(),
        }
    }
}

impl<'a> IntoIterator for &'a LatticePointSet {
    type Item = &'a Vec<i64>;
    type IntoIter = std::collections::btree_set::Iter<'a, Vec<i64>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Result of [`HPolytope::is_normal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCheck {
    pub max_level: usize,
    /// First `(m, x)` with `x ∈ mP ∩ ℤⁿ` not a sum of `m` lattice points of `P`.
    pub counterexample: Option<(usize, Vec<i64>)>,
}

impl NormalityCheck {
    pub fn is_normal(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl HPolytope {
    /// All lattice points, closed semantics: boundary points are included.
    ///
    /// Bounding-box scan with per-point membership, `O(box volume · facets)`.
    pub fn lattice_points(&self) -> Result<LatticePointSet> {
        let mut out = LatticePointSet::new(self.dim());
        if self.is_empty() {
            return Ok(out);
        }
        let n = self.dim();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in self.vertex_list() {
            for i in 0..n {
                lo[i] = lo[i].min(ceil_i64(&v[i])?);
                hi[i] = hi[i].max(floor_i64(&v[i])?);
            }
        }
        if (0..n).any(|i| lo[i] > hi[i]) {
            return Ok(out);
        }
        let rows: Vec<(&[i64], i64)> = self
            .halfspaces()
            .iter()
            .map(|h| Ok((h.normal.as_slice(), floor_i64(&h.rhs)?)))
            .collect::<Result<_>>()?;
        let mut p = lo.clone();
        loop {
            if rows.iter().all(|(a, b)| dot_ii(a, &p) <= *b) {
                out.points.insert(p.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if p[i] < hi[i] {
                    p[i] += 1;
                    p[i + 1..].copy_from_slice(&lo[i + 1..]);
                    break;
                }
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        self.vertex_list().iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    pub(crate) fn require_integral(&self) -> Result<()> {
        match self.vertex_list().iter().find(|v| v.iter().any(|x| !x.is_integer())) {
            Some(v) => Err(Error::NotIntegral(fmt_qvec(v))),
            None => Ok(()),
        }
    }

    /// Integer vertices; errors if some vertex is not a lattice point.
    pub fn integer_vertices(&self) -> Result<Vec<Vec<i64>>> {
        self.require_integral()?;
        Ok(self
            .vertex_list()
            .iter()
            .map(|v| v.iter().map(|x| as_integer(x).unwrap()).collect())
            .collect())
    }

    /// Checks that every lattice point of `mP` is a sum of `m` lattice points
    /// of `P`, for `2 <= m <= max_level`, by iterated Minkowski sums.
    pub fn is_normal(&self, max_level: usize) -> Result<NormalityCheck> {
        self.require_integral()?;
        let base = self.lattice_points()?;
        let mut sums = base.clone();
        for m in 2..=max_level {
            sums = sums.minkowski_sum(&base);
            let target = self.dilate(m as u32).lattice_points()?;
            if let Some(p) = target.iter().find(|p| !sums.contains(p)).cloned() {
                return Ok(NormalityCheck { max_level, counterexample: Some((m, p)) });
            }
        }
        Ok(NormalityCheck { max_level, counterexample: None })
    }
}
