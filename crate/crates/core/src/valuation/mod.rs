//! Lowest-term valuations in the coordinates `u_k = f_k - f_l^c`, the sliding
//! operator, and the graded semigroups built from them.

mod poly;
mod semigroup;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::LatticePointSet;
use crate::rational::Q;

pub use poly::UPolynomial;
pub use semigroup::{
    build_semigroup, check_cone_condition, check_saturation, okounkov_approx, ConeCheck,
    ConeDiscrepancy, Discrepancy, GradedSemigroup, SaturationCheck, SaturationWitness,
};

/// Direction `-e_k + c e_l` (0-based `k < l`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlideDirection {
    pub k: usize,
    pub l: usize,
    pub c: u32,
}

impl SlideDirection {
    pub fn new(k: usize, l: usize, c: u32) -> Self {
        SlideDirection { k, l, c }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k < self.l && self.l < n {
            Ok(())
        } else {
            Err(Error::InvalidDirection { k: self.k, l: self.l, n })
        }
    }

    /// Checks that the direction also defines a coordinate change, i.e. `c >= 1`.
    pub fn validate_coordinates(&self, n: usize) -> Result<()> {
        self.validate(n)?;
        if self.c == 0 {
            return Err(Error::ZeroSlide);
        }
        Ok(())
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Expands `f^α` in the coordinates `u`, where `f_k = u_k + u_l^c` and
/// `f_i = u_i` otherwise.
pub fn expand_monomial(alpha: &[u32], d: &SlideDirection) -> Result<UPolynomial> {
    let n = alpha.len();
    d.validate_coordinates(n)?;
    let a = alpha[d.k];
    let mut out = UPolynomial::zero(n);
    for j in 0..=a {
        let mut e = alpha.to_vec();
        e[d.k] = a - j;
        e[d.l] += d.c * j;
        out = &out + &UPolynomial::monomial(e, Q::from_integer(binomial(a, j)));
    }
    Ok(out)
}

/// Lexicographically smallest exponent with nonzero coefficient.
pub fn lowest_term(p: &UPolynomial) -> Result<Vec<i64>> {
    p.lowest()
        .map(|(e, _)| e.iter().map(|&x| x as i64).collect())
        .ok_or(Error::ZeroPolynomial)
}

/// The set of valuations `{ν(f) : f ∈ span(basis) \ {0}}`.
///
/// Gaussian elimination on lowest terms: each new element is reduced against
/// the pivot with the same lowest term until its lowest term is new. The
/// result is intrinsic to the span, so it does not depend on the basis order.
pub fn valuation_image(basis: &[UPolynomial]) -> Result<LatticePointSet> {
    let n = basis.first().ok_or(Error::EmptyInput)?.nvars();
    let mut pivots: BTreeMap<Vec<u32>, UPolynomial> = BTreeMap::new();
    for b in basis {
        if b.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.nvars() });
        }
        let mut p = b.clone();
        loop {
            let Some((lt, coef)) = p.lowest() else {
                return Err(Error::DependentBasis);
            };
            match pivots.get(lt) {
                Some(piv) => {
                    let ratio = coef / piv.lowest().expect("pivots are nonzero").1;
                    p = &p - &piv.scale(&ratio);
                }
                None => {
                    pivots.insert(lt.clone(), p);
                    break;
                }
            }
        }
    }
    LatticePointSet::from_points(n, pivots.keys().map(|e| e.iter().map(|&x| x as i64).collect()))
}

/// Monomial expansions `f^p` for every point `p` of a lattice-point set.
pub fn monomial_expansions(s: &LatticePointSet, d: &SlideDirection) -> Result<Vec<UPolynomial>> {
    s.iter()
        .map(|p| {
            let alpha = p
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| Error::NegativeCoordinate(p.clone())))
                .collect::<Result<Vec<u32>>>()?;
            expand_monomial(&alpha, d)
        })
        .collect()
}

/// Sliding operator: every line in direction `-e_k + c e_l` is translated
/// rigidly along itself as far as the orthant allows.
///
/// Agrees with [`valuation_image`] of [`monomial_expansions`] when each line
/// meets `s` in consecutive points, as for the lattice points of a polytope.
pub fn slide(s: &LatticePointSet, d: &SlideDirection) -> Result<LatticePointSet> {
    let n = s.dim();
    d.validate(n)?;
    let c = d.c as i64;
    let mut lines: BTreeMap<Vec<i64>, Vec<&Vec<i64>>> = BTreeMap::new();
    for p in s {
        if p.iter().any(|&x| x < 0) {
            return Err(Error::NegativeCoordinate(p.clone()));
        }
        let mut key = p.clone();
        key[d.l] += c * p[d.k];
        key[d.k] = 0;
        lines.entry(key).or_default().push(p);
    }
    let mut out = BTreeSet::new();
    for class in lines.values() {
        // p_l only grows along the direction, so p_k is the only binding wall.
        let a = class.iter().map(|p| p[d.k]).min().expect("nonempty class");
        for p in class {
            let mut r = (*p).clone();
            r[d.k] -= a;
            r[d.l] += c * a;
            out.insert(r);
        }
    }
    LatticePointSet::from_points(n, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::HPolytope;
    use crate::rational::q;

    fn d(c: u32) -> SlideDirection {
        SlideDirection::new(0, 1, c)
    }

    fn pts(v: &[[i64; 2]]) -> LatticePointSet {
        LatticePointSet::from_points(2, v.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn expansions() {
        let e = expand_monomial(&[1, 0], &d(2)).unwrap();
        assert_eq!(e, UPolynomial::from_terms(2, [(vec![1, 0], q(1)), (vec![0, 2], q(1))]).unwrap());
        assert_eq!(expand_monomial(&[0, 3], &d(2)).unwrap(), UPolynomial::monomial(vec![0, 3], q(1)));
        let e = expand_monomial(&[2, 0], &d(2)).unwrap();
        let expected =
            UPolynomial::from_terms(2, [(vec![2, 0], q(1)), (vec![1, 2], q(2)), (vec![0, 4], q(1))]).unwrap();
        assert_eq!(e, expected);
        assert_eq!(expand_monomial(&[1, 0], &d(0)), Err(Error::ZeroSlide));
        assert!(matches!(expand_monomial(&[1, 0], &SlideDirection::new(1, 0, 1)), Err(Error::InvalidDirection { .. })));
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(lowest_term(&expand_monomial(&[1, 0], &d(2)).unwrap()).unwrap(), vec![0, 2]);
        assert_eq!(lowest_term(&UPolynomial::one(3)).unwrap(), vec![0, 0, 0]);
        assert_eq!(lowest_term(&expand_monomial(&[1, 2], &d(2)).unwrap()).unwrap(), vec![0, 4]);
        assert_eq!(lowest_term(&UPolynomial::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rectangle_image() {
        let rect = HPolytope::cuboid(&[0, 0], &[1, 3]).unwrap().lattice_points().unwrap();
        let basis = monomial_expansions(&rect, &d(2)).unwrap();
        let img = valuation_image(&basis).unwrap();
        let expected = pts(&[[0, 0], [0, 1], [0, 2], [0, 3], [0, 4], [0, 5], [1, 0], [1, 1]]);
        assert_eq!(img, expected);
        assert_eq!(slide(&rect, &d(2)).unwrap(), expected);
    }

    #[test]
    fn pure_monomials_and_dependence() {
        let b = vec![UPolynomial::monomial(vec![2, 1], q(3)), UPolynomial::monomial(vec![0, 1], q(1))];
        assert_eq!(valuation_image(&b).unwrap(), pts(&[[0, 1], [2, 1]]));
        let e = expand_monomial(&[1, 0], &d(1)).unwrap();
        let dep = vec![e.clone(), e.scale(&q(2))];
        assert_eq!(valuation_image(&dep), Err(Error::DependentBasis));
    }

    #[test]
    fn slide_cases() {
        let wall = pts(&[[0, 0], [0, 4]]);
        assert_eq!(slide(&wall, &d(3)).unwrap(), wall);
        assert_eq!(slide(&pts(&[[1, 0], [2, 0]]), &d(0)).unwrap(), pts(&[[0, 0], [1, 0]]));
        assert!(matches!(slide(&pts(&[[-1, 0]]), &d(1)), Err(Error::NegativeCoordinate(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(4, 4), BigInt::from(1));
    }
}
