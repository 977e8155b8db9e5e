use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_i64, identity_i, mat_mul_i, unimodular_inverse};
use crate::rational::{q, Q};

/// Element of `ℤ[x_1..x_n]/(x_i² + Σ_j A^i_j x_i x_j)` in square-free normal
/// form. Bit `i` of a key stands for `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    n: usize,
    terms: BTreeMap<u32, Q>,
}

impl CohClass {
    pub fn zero(n: usize) -> Self {
        CohClass { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Q::one())
    }

    pub fn monomial(n: usize, mask: u32, coef: Q) -> Self {
        let mut c = Self::zero(n);
        c.add_term(mask, coef);
        c
    }

    /// Degree-2 class `Σ c_i x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut c = Self::zero(n);
        for (i, x) in coeffs.iter().enumerate() {
            c.add_term(1 << i, x.clone());
        }
        c
    }

    fn add_term(&mut self, mask: u32, coef: Q) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Q::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<u32, Q> {
        &self.terms
    }

    pub fn coefficient(&self, mask: u32) -> Q {
        self.terms.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficients of `x_1..x_n` (the degree-2 part).
    pub fn linear_part(&self) -> Vec<Q> {
        (0..self.n).map(|i| self.coefficient(1 << i)).collect()
    }

    /// Cohomological degree (twice the monomial degree) if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| 2 * m.count_ones());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CohClass) -> CohClass {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Q) -> CohClass {
        let mut out = CohClass::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = (0..self.n).filter(|i| m >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect();
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{c}*{}", vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiplication table of the Danilov presentation for a strictly upper
/// triangular `A`.
///
/// `x_i · x^S` for `i ∈ S` uses `x_i² = -Σ_{j>i} A^i_j x_i x_j`; the indices
/// only increase, so rewriting terminates and the normal form is unique.
#[derive(Clone, Debug)]
pub struct CohRing {
    n: usize,
    a: Vec<Vec<i64>>,
    table: Vec<Vec<CohClass>>,
}

impl CohRing {
    pub fn new(a: &[Vec<i64>]) -> Result<Self> {
        let n = a.len();
        if n > 16 {
            return Err(Error::InvalidInput(format!("n = {n} is too large for the cohomology ring")));
        }
        super::check_upper_triangular(a)?;
        let size = 1usize << n;
        let mut table = vec![vec![CohClass::zero(n); n]; size];
        for mask in 0..size as u32 {
            for i in (0..n).rev() {
                let bit = 1u32 << i;
                table[mask as usize][i] = if mask & bit == 0 {
                    CohClass::monomial(n, mask | bit, Q::one())
                } else {
                    let mut acc = CohClass::zero(n);
                    for j in i + 1..n {
                        if a[i][j] != 0 {
                            acc = acc.add(&table[mask as usize][j].scale(&q(-a[i][j])));
                        }
                    }
                    acc
                };
            }
        }
        Ok(CohRing { n, a: a.to_vec(), table })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Square-free monomials, which form a basis of the ring as a free module.
    pub fn basis(&self) -> Vec<u32> {
        (0..1u32 << self.n).collect()
    }

    pub fn gen(&self, i: usize) -> CohClass {
        CohClass::monomial(self.n, 1 << i, Q::one())
    }

    pub fn mul_gen(&self, c: &CohClass, i: usize) -> CohClass {
        let mut out = CohClass::zero(self.n);
        for (m, coef) in &c.terms {
            out = out.add(&self.table[*m as usize][i].scale(coef));
        }
        out
    }

    pub fn mul(&self, a: &CohClass, b: &CohClass) -> CohClass {
        let mut out = CohClass::zero(self.n);
        for (m, coef) in &b.terms {
            let mut t = a.scale(coef);
            for i in 0..self.n {
                if m >> i & 1 == 1 {
                    t = self.mul_gen(&t, i);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Normal form of a polynomial given by `(exponent vector, coefficient)` terms.
    pub fn reduce(&self, poly: &[(Vec<u32>, Q)]) -> Result<CohClass> {
        let mut out = CohClass::zero(self.n);
        for (e, c) in poly {
            if e.len() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, got: e.len() });
            }
            let mut t = CohClass::monomial(self.n, 0, c.clone());
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t = self.mul_gen(&t, i);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `x_i² + Σ_j A^i_j x_i x_j` evaluated on given images of the generators.
    fn relation_image(&self, a: &[Vec<i64>], i: usize, images: &[CohClass]) -> CohClass {
        let mut rel = self.mul(&images[i], &images[i]);
        for (j, &aij) in a[i].iter().enumerate() {
            if aij != 0 {
                rel = rel.add(&self.mul(&images[i], &images[j]).scale(&q(aij)));
            }
        }
        rel
    }

    /// `α_k = -Σ_j A^k_j x_j`.
    pub fn alpha(&self, k: usize) -> CohClass {
        CohClass::linear(&self.a[k].iter().map(|&x| q(-x)).collect::<Vec<_>>())
    }

    /// `y_k = x_k - α_k / 2`.
    pub fn y(&self, k: usize) -> CohClass {
        self.gen(k).sub(&self.alpha(k).scale(&crate::rational::q_frac(1, 2)))
    }
}

/// Ring homomorphism given on generators: `x_i ↦ Σ_j matrix[i][j] x̃_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMap {
    pub matrix: Vec<Vec<i64>>,
}

impl RingMap {
    pub fn identity(n: usize) -> Self {
        RingMap { matrix: identity_i(n) }
    }

    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if let Some(r) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        Ok(RingMap { matrix })
    }

    /// Builds a map from rational images, rejecting non-integral coefficients.
    pub fn from_rational(images: &[Vec<Q>]) -> Result<Self> {
        let matrix = images
            .iter()
            .map(|r| r.iter().map(|x| crate::rational::as_integer(x).ok_or(Error::NonIntegralMap)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Self::new(matrix)
    }

    /// Map sending `x_i` to `x̃_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &p) in perm.iter().enumerate() {
            m[i][p] = 1;
        }
        RingMap { matrix: m }
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_i(self.nvars())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> RingMap {
        RingMap { matrix: mat_mul_i(&self.matrix, &other.matrix) }
    }

    pub fn inverse(&self) -> Result<RingMap> {
        Ok(RingMap { matrix: unimodular_inverse(&self.matrix)? })
    }

    /// Image of the degree-2 class `Σ c_i x_i`, as coefficients in the target.
    pub fn apply_linear(&self, c: &[Q]) -> Vec<Q> {
        let n = self.nvars();
        (0..n).map(|j| c.iter().zip(&self.matrix).map(|(ci, row)| ci * q(row[j])).sum()).collect()
    }

    fn images(&self) -> Vec<CohClass> {
        self.matrix
            .iter()
            .map(|r| CohClass::linear(&r.iter().map(|&x| q(x)).collect::<Vec<_>>()))
            .collect()
    }

    /// True iff every relation of the source ring maps to zero in the target.
    pub fn descends(&self, source: &[Vec<i64>], target: &CohRing) -> bool {
        let imgs = self.images();
        (0..self.nvars()).all(|i| target.relation_image(source, i, &imgs).is_zero())
    }
}

impl fmt::Display for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        let parts: Vec<String> = (0..n)
            .map(|i| {
                let img = CohClass::linear(&self.matrix[i].iter().map(|&x| q(x)).collect::<Vec<_>>());
                format!("x{} -> {}", i + 1, img)
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Outcome of checking a ring map against source and target data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMapCheck {
    pub descends: bool,
    pub invertible: bool,
    pub inverse_descends: bool,
    pub preserves_omega: bool,
}

impl RingMapCheck {
    pub fn is_valid(&self) -> bool {
        self.descends && self.invertible && self.inverse_descends && self.preserves_omega
    }
}

/// Checks that `f` is a ring isomorphism `H*(M_A) → H*(M_Ã)` sending
/// `Σ λ_i x_i` to `Σ λ̃_i x̃_i`.
pub fn ring_map_check(
    f: &RingMap,
    source: &super::BottData,
    target: &super::BottData,
) -> Result<RingMapCheck> {
    let n = source.n();
    if target.n() != n || f.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, got: target.n() });
    }
    let src_ring = CohRing::new(&source.a)?;
    let tgt_ring = CohRing::new(&target.a)?;
    let descends = f.descends(&source.a, &tgt_ring);
    let invertible = det_i64(&f.matrix).abs() == 1;
    let inverse_descends = invertible && f.inverse()?.descends(&target.a, &src_ring);
    let preserves_omega = f.apply_linear(&source.lambda) == target.lambda;
    Ok(RingMapCheck { descends, invertible, inverse_descends, preserves_omega })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hirz(a: i64) -> CohRing {
        CohRing::new(&[vec![0, a], vec![0, 0]]).unwrap()
    }

    #[test]
    fn hirzebruch_relations() {
        let r = hirz(2);
        let x1 = r.gen(0);
        let x2 = r.gen(1);
        assert_eq!(r.mul(&x1, &x1), CohClass::monomial(2, 0b11, q(-2)));
        assert!(r.mul(&x2, &x2).is_zero());
        assert!(r.mul(&r.mul(&x1, &x2), &x1).is_zero());
        assert_eq!(r.basis().len(), 4);
    }

    #[test]
    fn reduce_polynomials() {
        let r = hirz(3);
        let c = r.reduce(&[(vec![2, 0], q(1)), (vec![1, 1], q(3))]).unwrap();
        assert!(c.is_zero());
        let c = r.reduce(&[(vec![0, 0], q(5))]).unwrap();
        assert_eq!(c, CohClass::one(2).scale(&q(5)));
        assert_eq!(CohClass::linear(&[q(1), q(-2)]).to_string(), "x1 + -2*x2");
    }

    #[test]
    fn special_elements() {
        let r = hirz(4);
        assert_eq!(r.alpha(0), CohClass::linear(&[q(0), q(-4)]));
        assert!(r.alpha(1).is_zero());
        assert_eq!(r.y(0), CohClass::linear(&[q(1), q(2)]));
        let model = CohRing::new(&[vec![0, 0, -1], vec![0, 0, -1], vec![0, 0, 0]]).unwrap();
        assert_eq!(model.alpha(0), model.gen(2));
        assert_eq!(model.alpha(1), model.gen(2));
    }

    #[test]
    fn ring_map_composition() {
        let f = RingMap::new(vec![vec![1, 2], vec![0, 1]]).unwrap();
        let g = f.inverse().unwrap();
        assert!(f.then(&g).is_identity());
        assert_eq!(f.apply_linear(&[q(1), q(3)]), vec![q(1), q(5)]);
        assert_eq!(RingMap::permutation(&[1, 0]).matrix, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(RingMap::from_rational(&[vec![crate::rational::q_frac(1, 2)]]), Err(Error::NonIntegralMap));
    }

    #[test]
    fn degrees() {
        let r = hirz(1);
        assert_eq!(r.gen(0).degree(), Some(2));
        assert_eq!(r.mul(&r.gen(0), &r.gen(1)).degree(), Some(4));
        assert_eq!(CohClass::zero(2).degree(), None);
        assert_eq!(r.gen(0).add(&CohClass::one(2)).degree(), None);
    }
}
