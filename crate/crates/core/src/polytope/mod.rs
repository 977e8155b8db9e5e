//! Exact rational convex polytopes.
//!
//! A polytope is stored in H-form with primitive integer normals and rational
//! right-hand sides. Its vertex set is computed once on construction by
//! intersecting every `n`-subset of halfspaces and keeping the feasible
//! solutions, which is adequate for `n <= 8` and a few dozen facets.
//! Lower-dimensional polytopes are allowed; `affine_dim` records the dimension
//! of their affine hull.

mod hull;
mod lattice;
mod smooth;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::rational::{dot_iq, fmt_qvec, gcd_all, primitive_integer, q, Q};

pub use hull::{hull, hull_of_lattice_points};
pub use lattice::{LatticePointSet, NormalityCheck};
pub use smooth::{AffineUnimodular, SmoothnessCheck};

/// The closed halfspace `⟨p, normal⟩ <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub rhs: Q,
}

impl HalfSpace {
    /// Builds a halfspace, dividing out the gcd of the normal.
    pub fn new(normal: Vec<i64>, rhs: Q) -> Result<Self> {
        let g = gcd_all(&normal);
        if g == 0 {
            return Err(Error::InvalidInput("halfspace normal must be nonzero".into()));
        }
        Ok(HalfSpace {
            normal: normal.iter().map(|x| x / g).collect(),
            rhs: rhs / BigInt::from(g),
        })
    }

    /// Builds the halfspace `⟨p, normal⟩ <= rhs` for a rational normal.
    pub fn from_rational(normal: &[Q], rhs: &Q) -> Result<Self> {
        let prim = primitive_integer(normal)?;
        // scale factor: normal = s * prim with s > 0
        let i = prim.iter().position(|&x| x != 0).unwrap();
        let s = &normal[i] / q(prim[i]);
        Ok(HalfSpace { normal: prim, rhs: rhs / s })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, p: &[Q]) -> Q {
        dot_iq(&self.normal, p)
    }

    pub fn contains(&self, p: &[Q]) -> bool {
        self.eval(p) <= self.rhs
    }

    pub fn is_tight(&self, p: &[Q]) -> bool {
        self.eval(p) == self.rhs
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·p <= {}", self.normal, self.rhs)
    }
}

/// Bounded convex polytope in H-representation.
#[derive(Clone, Debug)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<Vec<Q>>,
    affine_dim: Option<usize>,
}

/// A polytope given by its extreme points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Q>>,
}

impl PartialEq for HPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.halfspaces == other.halfspaces
    }
}

impl HPolytope {
    /// Validates, canonicalizes and checks boundedness.
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for h in &halfspaces {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: h.dim() });
            }
        }
        let halfspaces = canonical(halfspaces)?;
        check_bounded(dim, &halfspaces)?;
        Ok(Self::from_bounded(dim, halfspaces))
    }

    /// Parses rows `[a_1, .., a_n, b]` meaning `Σ a_i p_i <= b`.
    pub fn from_inequalities(dim: usize, rows: &[(Vec<i64>, Q)]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|(a, b)| HalfSpace::new(a.clone(), b.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, hs)
    }

    /// Constructor for halfspace lists already known to describe a bounded set.
    pub(crate) fn from_bounded(dim: usize, halfspaces: Vec<HalfSpace>) -> Self {
        let vertices = enumerate_vertices(dim, &halfspaces);
        let affine_dim = affine_dimension(&vertices);
        HPolytope { dim, halfspaces, vertices, affine_dim }
    }

    /// Axis-aligned box `lo_i <= p_i <= hi_i`.
    pub fn cuboid(lo: &[i64], hi: &[i64]) -> Result<Self> {
        let n = lo.len();
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            hs.push(HalfSpace::new(e.clone(), q(hi[i]))?);
            e[i] = -1;
            hs.push(HalfSpace::new(e, q(-lo[i]))?);
        }
        Self::new(n, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// Dimension of the affine hull; `None` for the empty set.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.affine_dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    pub fn require_full_dimensional(&self) -> Result<()> {
        match self.affine_dim {
            None => Err(Error::Empty),
            Some(d) if d < self.dim => Err(Error::LowerDimensional { dim: self.dim, affine_dim: d }),
            _ => Ok(()),
        }
    }

    /// Exact vertex set, lexicographically sorted.
    pub fn vertices(&self) -> Result<VPolytope> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        Ok(VPolytope { dim: self.dim, vertices: self.vertices.clone() })
    }

    pub(crate) fn vertex_list(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn contains(&self, p: &[Q]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(p))
    }

    /// Whether every vertex of `other` lies in `self`.
    pub fn contains_polytope(&self, other: &HPolytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Same point set, decided by mutual containment of vertices.
    pub fn equivalent(&self, other: &HPolytope) -> bool {
        self.dim == other.dim
            && self.is_empty() == other.is_empty()
            && self.contains_polytope(other)
            && other.contains_polytope(self)
    }

    /// `m P`; right-hand sides and vertices scale by `m`.
    pub fn dilate(&self, m: u32) -> HPolytope {
        let f = q(i64::from(m));
        HPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpace { normal: h.normal.clone(), rhs: &h.rhs * &f })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * &f).collect())
                .collect(),
            affine_dim: if m == 0 { self.affine_dim.map(|_| 0) } else { self.affine_dim },
        }
    }

    /// `t P` for a positive rational `t`.
    pub fn scale(&self, t: &Q) -> Result<HPolytope> {
        if !t.is_positive() {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        Ok(HPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpace { normal: h.normal.clone(), rhs: &h.rhs * t })
                .collect(),
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * t).collect()).collect(),
            affine_dim: self.affine_dim,
        })
    }

    /// Image under `p ↦ M p + t` for unimodular integer `M`.
    pub fn transform(&self, map: &AffineUnimodular) -> Result<HPolytope> {
        // ⟨a, p⟩ <= b with p = M⁻¹(q - t) becomes ⟨M⁻ᵀ a, q⟩ <= b + ⟨M⁻ᵀ a, t⟩.
        let inv_t = linalg::transpose_i(&linalg::unimodular_inverse(&map.matrix)?);
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                let normal = linalg::mat_vec_i(&inv_t, &h.normal);
                let rhs = &h.rhs + dot_iq(&normal, &map.translation);
                HalfSpace { normal, rhs }
            })
            .collect();
        let hs = canonical(hs)?;
        Ok(HPolytope::from_bounded(self.dim, hs))
    }

    /// Drops halfspaces that do not define facets (full-dimensional case) and
    /// duplicates.
    pub fn irredundant(&self) -> Result<HPolytope> {
        if !self.is_full_dimensional() {
            return hull(self.dim, &self.vertices);
        }
        let hs: Vec<HalfSpace> = self
            .halfspaces
            .iter()
            .filter(|h| {
                let tight: Vec<Vec<Q>> =
                    self.vertices.iter().filter(|v| h.is_tight(v)).cloned().collect();
                affine_dimension(&tight) == Some(self.dim - 1)
            })
            .cloned()
            .collect();
        Ok(HPolytope {
            dim: self.dim,
            halfspaces: hs,
            vertices: self.vertices.clone(),
            affine_dim: self.affine_dim,
        })
    }

    /// Euclidean volume (zero for lower-dimensional polytopes).
    pub fn volume(&self) -> Q {
        if !self.is_full_dimensional() {
            return Q::zero();
        }
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let simplices = self.triangulate_face(&all, self.dim);
        let fact: i64 = (1..=self.dim as i64).product();
        simplices
            .iter()
            .map(|s| {
                let base = &self.vertices[s[0]];
                let m: Vec<Vec<Q>> = s[1..]
                    .iter()
                    .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                linalg::det(&m).abs()
            })
            .fold(Q::zero(), |a, b| a + b)
            / q(fact)
    }

    /// Pulling triangulation of the face spanned by `face` (vertex indices).
    fn triangulate_face(&self, face: &[usize], d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for h in &self.halfspaces {
            let sub: Vec<usize> =
                face.iter().copied().filter(|&i| h.is_tight(&self.vertices[i])).collect();
            if sub.len() == face.len() || sub.contains(&apex) || !seen.insert(sub.clone()) {
                continue;
            }
            let pts: Vec<Vec<Q>> = sub.iter().map(|&i| self.vertices[i].clone()).collect();
            if affine_dimension(&pts) != Some(d - 1) {
                continue;
            }
            for mut s in self.triangulate_face(&sub, d - 1) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for HPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.halfspaces.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", rows.join(", "))
    }
}

impl VPolytope {
    /// Canonicalizes an arbitrary point list to its extreme points.
    pub fn from_points(dim: usize, points: &[Vec<Q>]) -> Result<Self> {
        hull(dim, points)?.vertices()
    }

    pub fn to_h(&self) -> Result<HPolytope> {
        hull(self.dim, &self.vertices)
    }

    pub fn scale(&self, m: u32) -> VPolytope {
        let f = q(i64::from(m));
        VPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * &f).collect()).collect(),
        }
    }

    pub fn display_vertices(&self) -> Vec<Vec<String>> {
        self.vertices.iter().map(|v| fmt_qvec(v)).collect()
    }
}

/// Primitive normals, sorted lexicographically by `(normal, rhs)`, duplicates
/// removed. For parallel duplicates only the tightest right-hand side is kept.
pub(crate) fn canonical(hs: Vec<HalfSpace>) -> Result<Vec<HalfSpace>> {
    let mut hs = hs
        .into_iter()
        .map(|h| HalfSpace::new(h.normal, h.rhs))
        .collect::<Result<Vec<_>>>()?;
    hs.sort();
    hs.dedup_by(|later, earlier| later.normal == earlier.normal);
    Ok(hs)
}

fn check_bounded(dim: usize, hs: &[HalfSpace]) -> Result<()> {
    let a: Vec<Vec<Q>> = hs.iter().map(|h| h.normal.iter().map(|&x| q(x)).collect()).collect();
    let b: Vec<Q> = hs.iter().map(|h| h.rhs.clone()).collect();
    for i in 0..dim {
        for sign in [1, -1] {
            let mut c = vec![Q::zero(); dim];
            c[i] = q(sign);
            match lp::maximize(&a, &b, &c) {
                LpOutcome::Unbounded => return Err(Error::Unbounded),
                LpOutcome::Infeasible => return Ok(()),
                LpOutcome::Optimal { .. } => {}
            }
        }
    }
    Ok(())
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn enumerate_vertices(dim: usize, hs: &[HalfSpace]) -> Vec<Vec<Q>> {
    let mut found = BTreeSet::new();
    for_each_subset(hs.len(), dim, |idx| {
        let m: Vec<Vec<Q>> =
            idx.iter().map(|&i| hs[i].normal.iter().map(|&x| q(x)).collect()).collect();
        let b: Vec<Q> = idx.iter().map(|&i| hs[i].rhs.clone()).collect();
        if let Some(p) = linalg::solve(&m, &b) {
            if !found.contains(&p) && hs.iter().all(|h| h.contains(&p)) {
                found.insert(p);
            }
        }
    });
    found.into_iter().collect()
}

/// Dimension of the affine hull of a point list; `None` if empty.
pub fn affine_dimension(points: &[Vec<Q>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(if diffs.is_empty() { 0 } else { linalg::rank(&diffs) })
}
