//! Convex hulls of finite point sets.
//!
//! Full-dimensional hulls are found by testing every hyperplane through `n`
//! affinely independent candidate points for the supporting property. Points
//! that are midpoints of two other input points along a `{-1,0,1}` direction
//! cannot be vertices and are pruned first. Lower-dimensional inputs are
//! projected onto pivot coordinates of their affine hull, hulled there and
//! lifted back together with the defining equalities.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{canonical, for_each_subset, HPolytope, HalfSpace, LatticePointSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot_iq, primitive_integer, q, Q};

pub fn hull(dim: usize, points: &[Vec<Q>]) -> Result<HPolytope> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
    }
    let pts: Vec<Vec<Q>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let base = &pts[0];
    let mut diffs: Vec<Vec<Q>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let kernel = linalg::kernel(&diffs, dim);
    let pivots = linalg::rref(&mut diffs);

    let mut hs = Vec::new();
    for w in &kernel {
        let a = primitive_integer(w)?;
        let b = dot_iq(&a, base);
        hs.push(HalfSpace { normal: a.iter().map(|x| -x).collect(), rhs: -b.clone() });
        hs.push(HalfSpace { normal: a, rhs: b });
    }
    if !pivots.is_empty() {
        let projected: Vec<Vec<Q>> =
            pts.iter().map(|p| pivots.iter().map(|&j| p[j].clone()).collect()).collect();
        for f in full_dimensional_facets(pivots.len(), &projected)? {
            let mut normal = vec![0; dim];
            for (k, &j) in pivots.iter().enumerate() {
                normal[j] = f.normal[k];
            }
            hs.push(HalfSpace { normal, rhs: f.rhs });
        }
    }
    Ok(HPolytope::from_bounded(dim, canonical(hs)?))
}

pub fn hull_of_lattice_points(set: &LatticePointSet) -> Result<HPolytope> {
    hull(set.dim(), &set.to_rational())
}

fn prune_midpoints(dim: usize, pts: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let set: BTreeSet<&Vec<Q>> = pts.iter().collect();
    let dirs = directions(dim);
    pts.iter()
        .filter(|p| {
            !dirs.iter().any(|d| {
                let plus: Vec<Q> = p.iter().zip(d).map(|(x, &e)| x + q(e)).collect();
                let minus: Vec<Q> = p.iter().zip(d).map(|(x, &e)| x - q(e)).collect();
                set.contains(&plus) && set.contains(&minus)
            })
        })
        .cloned()
        .collect()
}

/// Half of `{-1,0,1}^n \ {0}` (one per sign pair); unit vectors only for large `n`.
fn directions(dim: usize) -> Vec<Vec<i64>> {
    if dim > 4 {
        return (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let mut out = Vec::new();
    let total = 3usize.pow(dim as u32);
    for code in 0..total {
        let mut c = code;
        let d: Vec<i64> = (0..dim)
            .map(|_| {
                let v = (c % 3) as i64 - 1;
                c /= 3;
                v
            })
            .collect();
        if let Some(first) = d.iter().find(|&&x| x != 0) {
            if *first > 0 {
                out.push(d);
            }
        }
    }
    out
}

fn full_dimensional_facets(dim: usize, pts: &[Vec<Q>]) -> Result<Vec<HalfSpace>> {
    let cands = prune_midpoints(dim, pts);
    let mut facets = BTreeSet::new();
    let mut err = None;
    for_each_subset(cands.len(), dim, |idx| {
        if err.is_some() {
            return;
        }
        let p0 = &cands[idx[0]];
        let diffs: Vec<Vec<Q>> = idx[1..]
            .iter()
            .map(|&i| cands[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let ker = linalg::kernel(&diffs, dim);
        if ker.len() != 1 {
            return;
        }
        let a = match primitive_integer(&ker[0]) {
            Ok(a) => a,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        let b = dot_iq(&a, p0);
        let mut above = false;
        let mut below = false;
        for p in &cands {
            let s = dot_iq(&a, p) - &b;
            if s > Q::zero() {
                above = true;
            } else if s < Q::zero() {
                below = true;
            }
            if above && below {
                return;
            }
        }
        if above {
            facets.insert(HalfSpace { normal: a.iter().map(|x| -x).collect(), rhs: -b });
        } else {
            facets.insert(HalfSpace { normal: a, rhs: b });
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(facets.into_iter().collect()),
    }
}
