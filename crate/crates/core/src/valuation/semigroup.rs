use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{slide, SlideDirection};
use crate::error::{Error, Result};
use crate::polytope::{hull_of_lattice_points, HPolytope, LatticePointSet};
use crate::rational::q_frac;

/// Truncated graded semigroup: `levels[m]` is the set of valuations of
/// degree-`m` sections, for `0 <= m <= max_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSemigroup {
    dim: usize,
    levels: Vec<LatticePointSet>,
}

impl GradedSemigroup {
    /// Builds a semigroup from explicit levels `1..=M`; level 0 is the origin.
    pub fn from_levels(dim: usize, levels: Vec<LatticePointSet>) -> Result<Self> {
        if let Some(bad) = levels.iter().find(|l| l.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.dim() });
        }
        let mut all = vec![LatticePointSet::origin(dim)];
        all.extend(levels);
        Ok(GradedSemigroup { dim, levels: all })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> Result<&LatticePointSet> {
        self.levels.get(m).ok_or(Error::EmptyLevel(m))
    }

    pub fn contains(&self, m: usize, x: &[i64]) -> bool {
        self.levels.get(m).is_some_and(|l| l.contains(x))
    }

    /// First pair `(m1, m2)` with `levels[m1] + levels[m2] ⊄ levels[m1+m2]`.
    pub fn additivity_failure(&self) -> Option<(usize, usize)> {
        let top = self.max_level();
        for m1 in 1..=top {
            for m2 in m1..=top - m1 {
                let sum = self.levels[m1].minkowski_sum(&self.levels[m2]);
                if !sum.is_subset(&self.levels[m1 + m2]) {
                    return Some((m1, m2));
                }
            }
        }
        None
    }
}

/// Semigroup of the valuation in direction `d` (or the monomial valuation if
/// `d` is `None`) on the sections of the line bundle given by `p`.
///
/// Level `m` is `slide(mP ∩ ℤⁿ, d)`. Levels are computed in parallel and the
/// additivity invariant is checked before returning.
pub fn build_semigroup(
    p: &HPolytope,
    d: Option<&SlideDirection>,
    max_level: usize,
) -> Result<GradedSemigroup> {
    let n = p.dim();
    if max_level == 0 {
        return Err(Error::InvalidInput("max_level must be at least 1".into()));
    }
    if let Some(d) = d {
        d.validate_coordinates(n)?;
    }
    p.require_full_dimensional()?;
    p.require_integral()?;
    if let Some(v) = p.is_delzant_smooth()?.offending {
        return Err(Error::NotSmooth(crate::rational::fmt_qvec(&v)));
    }
    if !p.is_normalized_at_origin() {
        return Err(Error::NotNormalized);
    }
    if let Some((level, point)) = p.is_normal(max_level)?.counterexample {
        return Err(Error::NotNormal { level, point });
    }
    let levels = (1..=max_level)
        .into_par_iter()
        .map(|m| {
            let pts = p.dilate(m as u32).lattice_points()?;
            match d {
                Some(d) => slide(&pts, d),
                None => Ok(pts),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let s = GradedSemigroup::from_levels(n, levels)?;
    if let Some((a, b)) = s.additivity_failure() {
        return Err(Error::AdditivityViolated(a, b));
    }
    Ok(s)
}

/// `Δ_m = (1/m) conv(levels[m])`.
pub fn okounkov_approx(s: &GradedSemigroup, m: usize) -> Result<HPolytope> {
    if m == 0 || m > s.max_level() || s.levels[m].is_empty() {
        return Err(Error::EmptyLevel(m));
    }
    hull_of_lattice_points(&s.levels[m])?.scale(&q_frac(1, m as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Discrepancy {
    /// Lattice point of `mΔ` absent from the level.
    Missing,
    /// Point of the level outside `mΔ`.
    Extra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeDiscrepancy {
    pub level: usize,
    pub point: Vec<i64>,
    pub kind: Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeCheck {
    pub max_level: usize,
    pub certificate: Option<ConeDiscrepancy>,
}

impl ConeCheck {
    pub fn holds(&self) -> bool {
        self.certificate.is_none()
    }
}

/// Checks `levels[m] = mΔ ∩ ℤⁿ` for `1 <= m <= max_level`. On failure the
/// certificate is the lexicographically first point of the symmetric
/// difference at the lowest failing level.
pub fn check_cone_condition(s: &GradedSemigroup, delta: &HPolytope) -> Result<ConeCheck> {
    if delta.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), got: delta.dim() });
    }
    delta.require_integral()?;
    for m in 1..=s.max_level() {
        let target = delta.dilate(m as u32).lattice_points()?;
        let level = &s.levels[m];
        let missing = target.iter().find(|x| !level.contains(x));
        let extra = level.iter().find(|x| !target.contains(x));
        let found = match (missing, extra) {
            (Some(a), Some(b)) if b < a => Some((b, Discrepancy::Extra)),
            (Some(a), _) => Some((a, Discrepancy::Missing)),
            (None, Some(b)) => Some((b, Discrepancy::Extra)),
            (None, None) => None,
        };
        if let Some((point, kind)) = found {
            return Ok(ConeCheck {
                max_level: s.max_level(),
                certificate: Some(ConeDiscrepancy { level: m, point: point.clone(), kind }),
            });
        }
    }
    Ok(ConeCheck { max_level: s.max_level(), certificate: None })
}

/// `(m, x) ∉ S` while `(t·m, t·x) ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationWitness {
    pub level: usize,
    pub point: Vec<i64>,
    pub multiple: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationCheck {
    pub max_level: usize,
    pub witness: Option<SaturationWitness>,
}

impl SaturationCheck {
    pub fn is_saturated(&self) -> bool {
        self.witness.is_none()
    }
}

/// Searches for a saturation failure within the truncation. Witnesses are
/// ordered by level, then point, then smallest multiple.
pub fn check_saturation(s: &GradedSemigroup) -> SaturationCheck {
    let top = s.max_level();
    for m in 1..=top {
        let mut candidates: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for t in 2..=top / m {
            let t_i = t as i64;
            for y in &s.levels[t * m] {
                if y.iter().all(|v| v % t_i == 0) {
                    let x: Vec<i64> = y.iter().map(|v| v / t_i).collect();
                    if !s.levels[m].contains(&x) {
                        candidates.entry(x).or_insert(t);
                    }
                }
            }
        }
        if let Some((point, multiple)) = candidates.into_iter().next() {
            return SaturationCheck {
                max_level: top,
                witness: Some(SaturationWitness { level: m, point, multiple }),
            };
        }
    }
    SaturationCheck { max_level: top, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn d2() -> SlideDirection {
        SlideDirection::new(0, 1, 2)
    }

    fn trapezoid(a: i64, l1: i64, l2: i64) -> HPolytope {
        HPolytope::from_inequalities(
            2,
            &[(vec![-1, 0], q(0)), (vec![0, -1], q(0)), (vec![1, 0], q(l1)), (vec![a, 1], q(l2))],
        )
        .unwrap()
    }

    #[test]
    fn rectangle_semigroup() {
        let rect = HPolytope::cuboid(&[0, 0], &[1, 3]).unwrap();
        let s = build_semigroup(&rect, Some(&d2()), 5).unwrap();
        assert_eq!(s.level(0).unwrap(), &LatticePointSet::origin(2));
        assert_eq!(s.level(1).unwrap().len(), 8);
        assert_eq!(okounkov_approx(&s, 1).unwrap(), trapezoid(4, 1, 5));
        assert!(check_cone_condition(&s, &trapezoid(4, 1, 5)).unwrap().holds());
        assert!(check_saturation(&s).is_saturated());
        assert_eq!(okounkov_approx(&s, 3).unwrap(), trapezoid(4, 1, 5));
    }

    #[test]
    fn square_is_not_saturated() {
        let sq = HPolytope::cuboid(&[0, 0], &[2, 2]).unwrap();
        let s = build_semigroup(&sq, Some(&d2()), 2).unwrap();
        assert!(s.contains(2, &[2, 2]));
        assert!(!s.contains(1, &[1, 1]));
        let w = check_saturation(&s).witness.unwrap();
        assert_eq!((w.level, w.point, w.multiple), (1, vec![1, 1], 2));
        let delta = hull_of_lattice_points(s.level(1).unwrap()).unwrap();
        let cert = check_cone_condition(&s, &delta).unwrap().certificate.unwrap();
        assert_eq!(cert, ConeDiscrepancy { level: 1, point: vec![1, 1], kind: Discrepancy::Missing });
    }

    #[test]
    fn identity_slide() {
        let p = trapezoid(1, 2, 3);
        let s = build_semigroup(&p, None, 3).unwrap();
        assert!(check_cone_condition(&s, &p).unwrap().holds());
        assert!(check_saturation(&s).is_saturated());
        assert_eq!(okounkov_approx(&s, 2).unwrap(), p);
    }

    #[test]
    fn preconditions() {
        let off = HPolytope::cuboid(&[1, 0], &[2, 1]).unwrap();
        assert_eq!(build_semigroup(&off, Some(&d2()), 2), Err(Error::NotNormalized));
        let sq = HPolytope::cuboid(&[0, 0], &[1, 1]).unwrap();
        assert_eq!(build_semigroup(&sq, Some(&SlideDirection::new(0, 1, 0)), 2), Err(Error::ZeroSlide));
        let s = build_semigroup(&sq, None, 2).unwrap();
        assert_eq!(okounkov_approx(&s, 3), Err(Error::EmptyLevel(3)));
        assert_eq!(okounkov_approx(&s, 0), Err(Error::EmptyLevel(0)));
        let half = HPolytope::cuboid(&[0, 0], &[1, 1]).unwrap().scale(&q_frac(1, 2)).unwrap();
        assert!(matches!(build_semigroup(&half, None, 2), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn additivity_failure_is_detected() {
        let l1 = LatticePointSet::from_points(1, [vec![0], vec![1]]).unwrap();
        let l2 = LatticePointSet::from_points(1, [vec![0], vec![2]]).unwrap();
        let s = GradedSemigroup::from_levels(1, vec![l1, l2]).unwrap();
        assert_eq!(s.additivity_failure(), Some((1, 1)));
    }
}
