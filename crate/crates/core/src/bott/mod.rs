//! Toric Bott manifolds: the polytopes `Δ(A, λ)`, their cohomology rings, and
//! the symplectic rigidity decision for ℚ-trivial ones.

mod degeneration;
mod moves;
mod ring;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::HPolytope;
use crate::rational::{gcd_all, q, Q};

pub use degeneration::{verify_degeneration, verify_degeneration_move, DegenerationReport};
pub use moves::{
    decide_symplectomorphic, elementary_move, hirzebruch_classify, shift_move, standard_form,
    Block, Certificate, Decision, Move, StandardForm,
};
pub use ring::{ring_map_check, CohClass, CohRing, RingMap, RingMapCheck};

pub(crate) fn check_upper_triangular(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if row[..=i].iter().any(|&x| x != 0) {
            return Err(Error::NotUpperTriangular);
        }
    }
    Ok(())
}

/// `(A, λ)` with `A` strictly upper triangular; 0-based indices, so
/// `a[i][j]` is `A^{i+1}_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BottData {
    pub a: Vec<Vec<i64>>,
    pub lambda: Vec<Q>,
}

impl BottData {
    pub fn new(a: Vec<Vec<i64>>, lambda: Vec<Q>) -> Result<Self> {
        check_upper_triangular(&a)?;
        if lambda.len() != a.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: lambda.len() });
        }
        if a.is_empty() {
            return Err(Error::EmptyInput);
        }
        if lambda.iter().any(|l| !l.is_positive()) {
            return Err(Error::NonPositiveLambda);
        }
        Ok(BottData { a, lambda })
    }

    /// Two-dimensional case with `A^1_2 = a`.
    pub fn hirzebruch(a: i64, l1: Q, l2: Q) -> Result<Self> {
        Self::new(vec![vec![0, a], vec![0, 0]], vec![l1, l2])
    }

    /// The model `𝓗(λ)`: `A^i_n = -1` for `i < n`, all other entries zero.
    pub fn h_model(lambda: Vec<Q>) -> Result<Self> {
        let n = lambda.len();
        let mut a = vec![vec![0; n]; n];
        for row in a.iter_mut().take(n.saturating_sub(1)) {
            row[n - 1] = -1;
        }
        Self::new(a, lambda)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn ring(&self) -> CohRing {
        CohRing::new(&self.a).expect("validated on construction")
    }

    /// `[ω_λ] = Σ λ_i x_i`.
    pub fn omega(&self) -> CohClass {
        CohClass::linear(&self.lambda)
    }

    /// Normal of the `j`-th upper facet: `e_j + Σ_i A^i_j e_i`.
    pub fn upper_normal(&self, j: usize) -> Vec<i64> {
        let n = self.n();
        (0..n).map(|i| if i == j { 1 } else { self.a[i][j] }).collect()
    }

    /// Relabels coordinates: index `i` becomes `perm[i]`. Fails if the result
    /// is not strictly upper triangular.
    pub fn permuted(&self, perm: &[usize]) -> Result<BottData> {
        let n = self.n();
        let mut a = vec![vec![0; n]; n];
        let mut lambda = vec![Q::zero(); n];
        for i in 0..n {
            lambda[perm[i]] = self.lambda[i].clone();
            for j in 0..n {
                a[perm[i]][perm[j]] = self.a[i][j];
            }
        }
        check_upper_triangular(&a)?;
        Ok(BottData { a, lambda })
    }

    pub fn polytope(&self) -> HPolytope {
        bott_polytope(self)
    }
}

/// `Δ(A, λ) = {p_j >= 0} ∩ {⟨p, e_j + Σ_i A^i_j e_i⟩ <= λ_j}`.
pub fn bott_polytope(b: &BottData) -> HPolytope {
    let n = b.n();
    let mut rows = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut lo = vec![0; n];
        lo[j] = -1;
        rows.push((lo, Q::zero()));
        rows.push((b.upper_normal(j), b.lambda[j].clone()));
    }
    HPolytope::from_inequalities(n, &rows).expect("Δ(A, λ) is bounded")
}

/// Combinatorial cube test: each of the `2ⁿ` choices of one tight inequality
/// per index pair must give a point satisfying the other `n` strictly.
pub fn is_hypercube(b: &BottData) -> bool {
    let n = b.n();
    let normals: Vec<Vec<Q>> = (0..n).map(|j| b.upper_normal(j).into_iter().map(q).collect()).collect();
    for s in 0..1u32 << n {
        let mut m = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for j in 0..n {
            if s >> j & 1 == 1 {
                m.push(normals[j].clone());
                rhs.push(b.lambda[j].clone());
            } else {
                let mut e = vec![Q::zero(); n];
                e[j] = q(1);
                m.push(e);
                rhs.push(Q::zero());
            }
        }
        let Some(p) = linalg::solve(&m, &rhs) else { return false };
        for j in 0..n {
            let ok = if s >> j & 1 == 1 {
                p[j].is_positive()
            } else {
                crate::rational::dot_qq(&normals[j], &p) < b.lambda[j]
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Exceptional type of a generator: `α_k = c·y_l` with `c = -A^k_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExceptionalType {
    /// `c` even. `l` is `None` exactly when `α_k = 0` (then `c = 0`).
    Even { l: Option<usize>, c: i64 },
    Odd { l: usize, c: i64 },
    NotExceptional,
}

pub fn exceptional_type(b: &BottData, k: usize) -> Result<ExceptionalType> {
    let n = b.n();
    if k >= n {
        return Err(Error::InvalidInput(format!("index {k} out of range for n = {n}")));
    }
    let row = &b.a[k];
    let Some(l) = (k + 1..n).find(|&j| row[j] != 0) else {
        return Ok(ExceptionalType::Even { l: None, c: 0 });
    };
    let c = -row[l];
    // α_k = c·y_l  ⇔  A^k_j = ½ A^k_l A^l_j for j > l.
    let ok = (l + 1..n).all(|j| 2 * row[j] == row[l] * b.a[l][j]);
    Ok(match (ok, c % 2 == 0) {
        (false, _) => ExceptionalType::NotExceptional,
        (true, true) => ExceptionalType::Even { l: Some(l), c },
        (true, false) => ExceptionalType::Odd { l, c },
    })
}

/// `H*(M; ℚ) ≅ H*((ℂP¹)ⁿ; ℚ)`, tested as `α_k² = 0` for every `k`.
pub fn is_q_trivial(b: &BottData) -> bool {
    let r = b.ring();
    (0..b.n()).all(|k| {
        let a = r.alpha(k);
        r.mul(&a, &a).is_zero()
    })
}

/// All primitive `z = Σ c_i x_i` with `|c_i| <= bound` and `z² = 0`, in
/// lexicographic order of coefficient vectors.
pub fn primitive_square_zero(ring: &CohRing, bound: i64) -> Vec<Vec<i64>> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut c = vec![-bound; n];
    loop {
        if c.iter().any(|&x| x != 0) && gcd_all(&c) == 1 {
            let z = CohClass::linear(&c.iter().map(|&x| q(x)).collect::<Vec<_>>());
            if ring.mul(&z, &z).is_zero() {
                out.push(c.clone());
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < bound {
                c[i] += 1;
                c[i + 1..].iter_mut().for_each(|x| *x = -bound);
                break;
            }
        }
    }
}
