use num_traits::Zero;

use super::HPolytope;
use crate::error::{Error, Result};
use crate::linalg::{self, rank, unimodular_inverse};
use crate::rational::{fmt_qvec, primitive_integer, q, Q};

/// Affine map `p ↦ M p + t` with `M ∈ GL(n,ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineUnimodular {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<Q>,
}

impl AffineUnimodular {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<Q>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) || translation.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: translation.len() });
        }
        let d = linalg::det_i64(&matrix);
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        Ok(AffineUnimodular { matrix, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineUnimodular { matrix: linalg::identity_i(n), translation: vec![Q::zero(); n] }
    }

    pub fn apply(&self, p: &[Q]) -> Vec<Q> {
        linalg::mat_vec_iq(&self.matrix, p)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = unimodular_inverse(&self.matrix)?;
        let t = linalg::mat_vec_iq(&inv, &self.translation).into_iter().map(|x| -x).collect();
        Ok(AffineUnimodular { matrix: inv, translation: t })
    }
}

/// Result of [`HPolytope::is_delzant_smooth`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCheck {
    /// First vertex (in lexicographic order) where the edge cone is not unimodular.
    pub offending: Option<Vec<Q>>,
}

impl SmoothnessCheck {
    pub fn is_smooth(&self) -> bool {
        self.offending.is_none()
    }
}

impl HPolytope {
    fn tight_rows(&self, v: &[Q]) -> Vec<usize> {
        (0..self.halfspaces().len()).filter(|&i| self.halfspaces()[i].is_tight(v)).collect()
    }

    /// Primitive directions of the edges leaving vertex `v`.
    pub fn edge_directions(&self, v: &[Q]) -> Result<Vec<Vec<i64>>> {
        let verts = self.vertex_list();
        if !verts.iter().any(|w| w.as_slice() == v) {
            return Err(Error::NotAVertex(fmt_qvec(v)));
        }
        let n = self.dim();
        let tight_v = self.tight_rows(v);
        let mut dirs = Vec::new();
        for w in verts {
            if w.as_slice() == v {
                continue;
            }
            let common: Vec<Vec<Q>> = tight_v
                .iter()
                .filter(|&&i| self.halfspaces()[i].is_tight(w))
                .map(|&i| self.halfspaces()[i].normal.iter().map(|&x| q(x)).collect())
                .collect();
            if rank(&common) == n - 1 {
                let d: Vec<Q> = w.iter().zip(v).map(|(a, b)| a - b).collect();
                dirs.push(primitive_integer(&d)?);
            }
        }
        Ok(dirs)
    }

    fn smooth_at(&self, v: &[Q]) -> Result<Option<Vec<Vec<i64>>>> {
        let dirs = self.edge_directions(v)?;
        if dirs.len() != self.dim() {
            return Ok(None);
        }
        let cols = linalg::transpose_i(&dirs);
        Ok((linalg::det_i64(&cols).abs() == 1).then_some(dirs))
    }

    /// At every vertex: exactly `n` edges whose primitive directions form a
    /// ℤ-basis.
    pub fn is_delzant_smooth(&self) -> Result<SmoothnessCheck> {
        self.require_full_dimensional()?;
        for v in self.vertex_list() {
            if self.smooth_at(v)?.is_none() {
                return Ok(SmoothnessCheck { offending: Some(v.clone()) });
            }
        }
        Ok(SmoothnessCheck { offending: None })
    }

    /// Moves vertex `v` to the origin with its edges along the positive
    /// coordinate axes. Returns the image and the map used.
    ///
    /// The edge matrix `E` is ordered so that column `i` is the remaining edge
    /// with the largest `|d_i|` (ties go to the lexicographically larger
    /// direction); the map is `p ↦ E⁻¹(p − v)`.
    pub fn normalize_at_vertex(&self, v: &[Q]) -> Result<(HPolytope, AffineUnimodular)> {
        self.require_full_dimensional()?;
        let n = self.dim();
        let Some(mut dirs) = self.smooth_at(v)? else {
            return Err(Error::NotSmooth(fmt_qvec(v)));
        };
        let mut ordered = Vec::with_capacity(n);
        for i in 0..n {
            let best = (0..dirs.len())
                .max_by(|&a, &b| {
                    dirs[a][i].abs().cmp(&dirs[b][i].abs()).then_with(|| dirs[a].cmp(&dirs[b]))
                })
                .expect("n directions");
            ordered.push(dirs.swap_remove(best));
        }
        let e = linalg::transpose_i(&ordered);
        let inv = unimodular_inverse(&e)?;
        let t: Vec<Q> = linalg::mat_vec_iq(&inv, v).into_iter().map(|x| -x).collect();
        let map = AffineUnimodular { matrix: inv, translation: t };
        Ok((self.transform(&map)?, map))
    }

    /// True when the origin is a vertex whose edges run along the positive
    /// coordinate axes.
    pub fn is_normalized_at_origin(&self) -> bool {
        let n = self.dim();
        let origin = vec![Q::zero(); n];
        let Ok(mut dirs) = self.edge_directions(&origin) else {
            return false;
        };
        dirs.sort();
        let mut axes = linalg::identity_i(n);
        axes.sort();
        dirs == axes
    }

    /// Normalizes at the lexicographically first vertex.
    pub fn normalize(&self) -> Result<(HPolytope, AffineUnimodular)> {
        let v = self.vertex_list().first().cloned().ok_or(Error::Empty)?;
        self.normalize_at_vertex(&v)
    }
}
