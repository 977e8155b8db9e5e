use std::cmp::Ordering;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{det_i64, unimodular_inverse};
use crate::lp::{maximize, LpOutcome};
use crate::polytope::{HPolytope, HalfSpace};
use crate::rational::{q, Q};

/// Closed simplex `{x_j >= 0, Σ x_j <= a}` together with which of its facets
/// are open in `𝔖ⁿ(a) = {0 <= x_j < a, Σ x_j < a}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenSimplex {
    pub closure: HPolytope,
    /// Parallel to `closure.halfspaces()`.
    pub open: Vec<bool>,
}

pub fn simplex(n: usize, a: &Q) -> Result<OpenSimplex> {
    if !a.is_positive() {
        return Err(Error::NonPositiveSize);
    }
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let mut rows: Vec<(Vec<i64>, Q)> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = -1;
            (v, Q::zero())
        })
        .collect();
    rows.push((vec![1; n], a.clone()));
    let closure = HPolytope::from_inequalities(n, &rows)?;
    let open = closure.halfspaces().iter().map(|h| h.normal.iter().all(|&x| x == 1)).collect();
    Ok(OpenSimplex { closure, open })
}

/// Certificate that `Ψ(int 𝔖ⁿ(a)) + x` lies in a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexFit {
    pub a: Q,
    pub psi: Vec<Vec<i64>>,
    pub x: Vec<Q>,
}

impl SimplexFit {
    fn column(&self, i: usize) -> Vec<i64> {
        self.psi.iter().map(|r| r[i]).collect()
    }

    /// Images of the closed simplex vertices `0, a e_1, …, a e_n`.
    pub fn mapped_vertices(&self) -> Vec<Vec<Q>> {
        let n = self.x.len();
        let mut out = vec![self.x.clone()];
        for i in 0..n {
            let c = self.column(i);
            out.push(self.x.iter().zip(&c).map(|(x, &p)| x + &self.a * q(p)).collect());
        }
        out
    }
}

/// The open simplex lies in the interior-or-boundary of closed convex `Δ`
/// exactly when its closure does, i.e. when every mapped vertex is in `Δ`.
pub fn fits(delta: &HPolytope, fit: &SimplexFit) -> Result<bool> {
    let n = delta.dim();
    if fit.psi.len() != n || fit.psi.iter().any(|r| r.len() != n) || fit.x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: fit.psi.len() });
    }
    let d = det_i64(&fit.psi);
    if d.abs() != 1 {
        return Err(Error::NotUnimodular(d));
    }
    if !fit.a.is_positive() {
        return Err(Error::NonPositiveSize);
    }
    Ok(fit.mapped_vertices().iter().all(|v| delta.contains(v)))
}

fn hp_dot(h: &HalfSpace, col: &[i64]) -> i64 {
    h.normal.iter().zip(col).map(|(a, b)| a * b).sum()
}

/// Largest `a` (and a matching `x`) for a fixed `Ψ`:
/// `max a  s.t.  ⟨h, x⟩ + a · max(0, maxᵢ ⟨h, Ψᵢ⟩) <= b_h`  for every facet.
fn best_for(delta: &HPolytope, psi: &[Vec<i64>]) -> Option<SimplexFit> {
    let n = delta.dim();
    let cols: Vec<Vec<i64>> = (0..n).map(|i| psi.iter().map(|r| r[i]).collect()).collect();
    let mut a_rows = Vec::with_capacity(delta.halfspaces().len() + 1);
    let mut b = Vec::with_capacity(a_rows.capacity());
    for h in delta.halfspaces() {
        let spread = cols.iter().map(|c| hp_dot(h, c)).max().unwrap_or(0).max(0);
        let mut row: Vec<Q> = h.normal.iter().map(|&x| q(x)).collect();
        row.push(q(spread));
        a_rows.push(row);
        b.push(h.rhs.clone());
    }
    let mut nonneg = vec![Q::zero(); n];
    nonneg.push(q(-1));
    a_rows.push(nonneg);
    b.push(Q::zero());
    let mut c = vec![Q::zero(); n];
    c.push(Q::one());
    match maximize(&a_rows, &b, &c) {
        LpOutcome::Optimal { value, x } if value.is_positive() => {
            Some(SimplexFit { a: value, psi: psi.to_vec(), x: x[..n].to_vec() })
        }
        _ => None,
    }
}

/// Larger `a` first, then lexicographically smaller `Ψ` (row-major), then `x`.
fn better(a: &SimplexFit, b: &SimplexFit) -> Ordering {
    b.a.cmp(&a.a).then_with(|| a.psi.cmp(&b.psi)).then_with(|| a.x.cmp(&b.x))
}

fn pick(a: SimplexFit, b: SimplexFit) -> SimplexFit {
    if better(&a, &b) == Ordering::Greater {
        b
    } else {
        a
    }
}

/// Vertices scaled by a common denominator, for exact integer width bounds.
struct WidthBound {
    scale: i128,
    vertices: Vec<Vec<i128>>,
}

impl WidthBound {
    fn new(delta: &HPolytope) -> Option<Self> {
        let verts = delta.vertices().ok()?.vertices;
        let mut den = BigInt::one();
        for v in &verts {
            for x in v {
                den = den.lcm(x.denom());
            }
        }
        let vertices = verts
            .iter()
            .map(|v| v.iter().map(|x| (x.numer() * (&den / x.denom())).to_i128()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(WidthBound { scale: den.to_i128()?, vertices })
    }

    /// `scale ×` lattice width of `Δ` in direction `h`.
    fn width(&self, h: &[i64]) -> i128 {
        let vals = self.vertices.iter().map(|v| v.iter().zip(h).map(|(a, &b)| a * b as i128).sum::<i128>());
        let (lo, hi) = vals.fold((i128::MAX, i128::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    }

    /// `scale ×` an upper bound on `a` for `Ψ`: along each row of `Ψ⁻¹` and
    /// along their sum the simplex has width exactly `a`.
    fn bound(&self, inv: &[Vec<i64>]) -> i128 {
        let n = inv.len();
        let sum: Vec<i64> = (0..n).map(|j| inv.iter().map(|r| r[j]).sum()).collect();
        inv.iter().map(|r| self.width(r)).chain(std::iter::once(self.width(&sum))).min().unwrap()
    }
}

fn all_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// Exhaustive search over `Ψ ∈ GL(n,ℤ)` with entries in `[-B, B]`.
///
/// The simplex is symmetric under permuting the columns of `Ψ`, so only
/// matrices with strictly increasing columns are visited. Candidates whose
/// lattice-width bound is strictly below the best value found so far are
/// skipped; ties are never pruned, so the result is independent of
/// scheduling.
pub fn best_simplex_lb(delta: &HPolytope, bound: i64) -> Result<SimplexFit> {
    let n = delta.dim();
    delta.require_full_dimensional()?;
    if bound < 1 {
        return Err(Error::InvalidInput("entry bound must be at least 1".into()));
    }
    if n > 3 {
        return Err(Error::InvalidInput(format!("exhaustive search supports n <= 3, got {n}")));
    }
    let vecs = all_vectors(n, bound);
    let widths = WidthBound::new(delta);
    let best_value: RwLock<Option<Q>> = RwLock::new(None);

    let visit = |cols: &[usize]| -> Option<SimplexFit> {
        let psi: Vec<Vec<i64>> = (0..n).map(|r| cols.iter().map(|&c| vecs[c][r]).collect()).collect();
        if det_i64(&psi).abs() != 1 {
            return None;
        }
        if let (Some(w), Some(best)) = (&widths, best_value.read().unwrap().as_ref()) {
            let inv = unimodular_inverse(&psi).ok()?;
            let ub = Q::new(w.bound(&inv).into(), w.scale.into());
            if ub < *best {
                return None;
            }
        }
        let fit = best_for(delta, &psi)?;
        let mut guard = best_value.write().unwrap();
        if guard.as_ref().is_none_or(|b| fit.a > *b) {
            *guard = Some(fit.a.clone());
        }
        Some(fit)
    };

    let best = (0..vecs.len())
        .into_par_iter()
        .filter_map(|first| {
            let mut local: Option<SimplexFit> = None;
            let mut idx = vec![first];
            extend(&mut idx, n, vecs.len(), &mut |cols| {
                if let Some(f) = visit(cols) {
                    local = Some(match local.take() {
                        Some(l) => pick(l, f),
                        None => f,
                    });
                }
            });
            local
        })
        .reduce_with(pick);
    best.ok_or_else(|| Error::InvalidInput("no unimodular matrix found".into()))
}

fn extend(idx: &mut Vec<usize>, n: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    if idx.len() == n {
        f(idx);
        return;
    }
    let start = idx.last().map_or(0, |&i| i + 1);
    for i in start..len {
        idx.push(i);
        extend(idx, n, len, f);
        idx.pop();
    }
}

fn canonical_columns(psi: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = psi.len();
    let mut cols: Vec<Vec<i64>> = (0..n).map(|i| psi.iter().map(|r| r[i]).collect()).collect();
    cols.sort();
    (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

fn neighbours(psi: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let n = psi.len();
    let mut out = Vec::new();
    for i in 0..n {
        let mut neg = psi.to_vec();
        for r in neg.iter_mut() {
            r[i] = -r[i];
        }
        out.push(neg);
        for j in 0..n {
            if i == j {
                continue;
            }
            for s in [1, -1] {
                let mut m = psi.to_vec();
                for r in m.iter_mut() {
                    r[i] += s * r[j];
                }
                out.push(m);
            }
        }
    }
    out
}

/// Seeded hill climbing over elementary column operations, from the identity
/// and from `restarts` random starting matrices.
///
/// The returned fit is a valid certificate (a lower bound), but unlike
/// [`best_simplex_lb`] it carries no optimality guarantee over any search
/// space.
pub fn heuristic_simplex_lb(delta: &HPolytope, seed: u64, restarts: usize) -> Result<SimplexFit> {
    let n = delta.dim();
    delta.require_full_dimensional()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity = crate::linalg::identity_i(n);
    let mut overall: Option<SimplexFit> = None;
    for round in 0..=restarts {
        let mut psi = identity.clone();
        if round > 0 {
            for _ in 0..rng.gen_range(1..=2 * n + 2) {
                let moves = neighbours(&psi);
                psi = moves[rng.gen_range(0..moves.len())].clone();
            }
        }
        let Some(mut current) = best_for(delta, &psi) else { continue };
        loop {
            let step = neighbours(&current.psi)
                .into_iter()
                .filter(|m| m.iter().flatten().all(|x| x.abs() <= 64))
                .filter_map(|m| best_for(delta, &m))
                .filter(|f| f.a > current.a)
                .reduce(pick);
            match step {
                Some(f) => current = f,
                None => break,
            }
        }
        let canon = best_for(delta, &canonical_columns(&current.psi)).unwrap_or(current);
        overall = Some(match overall.take() {
            Some(o) => pick(o, canon),
            None => canon,
        });
    }
    overall.ok_or_else(|| Error::InvalidInput("no feasible simplex".into()))
}
