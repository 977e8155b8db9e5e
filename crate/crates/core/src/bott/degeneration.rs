use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{elementary_move, is_hypercube, ring_map_check, shift_move, BottData, RingMap, RingMapCheck};
use crate::error::{Error, Result};
use crate::polytope::HPolytope;
use crate::rational::Q;
use crate::valuation::{build_semigroup, check_cone_condition, ConeDiscrepancy, SlideDirection};

/// Result of realizing a move `(A, λ) → (Ã, λ̃)` by a sliding degeneration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// The data whose polytope is slid; the side with the smaller `A^k_l`.
    pub source: BottData,
    /// The data whose polytope the slid semigroup is compared against.
    pub target: BottData,
    /// `None` for the identity move.
    pub slide: Option<SlideDirection>,
    /// Factor applied to both polytopes (denominators of λ, and the `n-1`
    /// dilation when the source polytope is not normal).
    pub dilation: u64,
    pub ring_map: RingMapCheck,
    /// `levels[m-1]` is true iff `ν(L^m) = mΔ̃ ∩ ℤⁿ`.
    pub levels: Vec<bool>,
    pub certificate: Option<ConeDiscrepancy>,
}

impl DegenerationReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_none()
    }
}

fn lambda_denominator(b: &BottData) -> BigInt {
    b.lambda.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(b: &BottData, s: u64) -> BottData {
    let f = Q::from_integer(BigInt::from(s));
    BottData { a: b.a.clone(), lambda: b.lambda.iter().map(|x| x * &f).collect() }
}

/// Slides `Δ(source)` in direction `-e_k + c e_l` with `c = ½(A^k_l + Ã^k_l)`
/// and compares every level `m <= max_level` with `mΔ(target)`.
///
/// Which of `b`, `bt` is slid is decided by the smaller `A^k_l`. The ring map
/// `x_k ↦ x̃_k + δ x̃_l` is checked and reported but does not gate the
/// geometric comparison, so a wrong target yields a level certificate.
pub fn verify_degeneration(
    b: &BottData,
    bt: &BottData,
    k: usize,
    l: usize,
    max_level: usize,
) -> Result<DegenerationReport> {
    let n = b.n();
    if bt.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: bt.n() });
    }
    if !(k < l && l < n) {
        return Err(Error::InvalidDirection { k, l, n });
    }
    let (a, at) = (b.a[k][l], bt.a[k][l]);
    if (at - a) % 2 != 0 {
        return Err(Error::NonIntegralMap);
    }
    let delta = (at - a) / 2;
    let mut m = crate::linalg::identity_i(n);
    m[k][l] = delta;
    let ring_map = ring_map_check(&RingMap::new(m)?, b, bt)?;
    let sum = a + at;
    if sum < 0 {
        return Err(Error::NotCertified(sum));
    }
    let (source, target) = if a <= at { (b, bt) } else { (bt, b) };
    if !is_hypercube(source) {
        return Err(Error::NotHypercube);
    }
    let slide = if delta == 0 {
        None
    } else if sum == 0 {
        return Err(Error::ZeroSlide);
    } else {
        Some(SlideDirection::new(k, l, (sum / 2) as u32))
    };

    let den = lambda_denominator(source).lcm(&lambda_denominator(target));
    let mut dilation: u64 = (&den)
        .try_into()
        .map_err(|_| Error::Overflow(format!("lambda denominator {den}")))?;
    let mut p = scaled(source, dilation).polytope();
    if !p.is_normal(max_level)?.is_normal() && n > 2 {
        dilation *= (n - 1) as u64;
        p = scaled(source, dilation).polytope();
    }
    let delta_t: HPolytope = scaled(target, dilation).polytope();

    let s = build_semigroup(&p, slide.as_ref(), max_level)?;
    let levels = (1..=max_level)
        .map(|m| -> Result<bool> { Ok(s.level(m)? == &delta_t.dilate(m as u32).lattice_points()?) })
        .collect::<Result<Vec<_>>>()?;
    let cone = check_cone_condition(&s, &delta_t)?;
    Ok(DegenerationReport {
        source: source.clone(),
        target: target.clone(),
        slide,
        dilation,
        ring_map,
        levels,
        certificate: cone.certificate,
    })
}

/// Builds the move at `(k, l)` and verifies it by [`verify_degeneration`].
///
/// With `target_entry = Some(t)` the move is the shift reaching `Ã^k_l = t`;
/// otherwise it is the normalizing [`elementary_move`].
pub fn verify_degeneration_move(
    b: &BottData,
    k: usize,
    l: usize,
    target_entry: Option<i64>,
    max_level: usize,
) -> Result<DegenerationReport> {
    let mv = match target_entry {
        Some(t) => {
            let diff = t - b.a.get(k).and_then(|r| r.get(l)).copied().unwrap_or(0);
            if diff % 2 != 0 {
                return Err(Error::NonIntegralMap);
            }
            shift_move(b, k, l, diff / 2)?
        }
        None => elementary_move(b, k, l)?,
    };
    verify_degeneration(b, &mv.target, k, l, max_level)
}
