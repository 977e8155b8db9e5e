//! Gromov width lower bounds: the coroot formula for coadjoint orbits and
//! certified simplex fitting inside moment polytopes.

mod simplex;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{dot_qq, q, Q};

pub use simplex::{best_simplex_lb, fits, heuristic_simplex_lb, simplex, OpenSimplex, SimplexFit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootFamily {
    A,
    B,
    C,
    D,
    G2,
}

impl FromStr for RootFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(RootFamily::A),
            "B" => Ok(RootFamily::B),
            "C" => Ok(RootFamily::C),
            "D" => Ok(RootFamily::D),
            "G2" | "G" => Ok(RootFamily::G2),
            _ => Err(Error::InvalidRootSystem(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootFamily::A => "A",
            RootFamily::B => "B",
            RootFamily::C => "C",
            RootFamily::D => "D",
            RootFamily::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// A classical root system in its standard Euclidean realization.
///
/// | family | ambient dim | roots |
/// |---|---|---|
/// | `A_r` | `r+1` | `e_i - e_j` |
/// | `B_r` | `r` | `±e_i ± e_j`, `±e_i` |
/// | `C_r` | `r` | `±e_i ± e_j`, `±2e_i` |
/// | `D_r` | `r` | `±e_i ± e_j` (`D_2 = A_1 × A_1`) |
/// | `G_2` | `3` | `e_i - e_j`, `±(2e_i - e_j - e_k)` |
///
/// Coroots are `2α / ⟨α, α⟩`, so the `G_2` long coroots have denominators 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemSpec {
    pub family: RootFamily,
    pub rank: usize,
    roots: Vec<Vec<Q>>,
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn pm_pairs(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    out
}

fn differences(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                out.push(v);
            }
        }
    }
    out
}

impl RootSystemSpec {
    pub fn new(family: RootFamily, rank: usize) -> Result<Self> {
        let roots: Vec<Vec<i64>> = match family {
            RootFamily::A if rank >= 1 => differences(rank + 1),
            RootFamily::B if rank >= 1 => {
                let mut r = pm_pairs(rank);
                r.extend((0..rank).flat_map(|i| [unit(rank, i, 1), unit(rank, i, -1)]));
                r
            }
            RootFamily::C if rank >= 1 => {
                let mut r = pm_pairs(rank);
                r.extend((0..rank).flat_map(|i| [unit(rank, i, 2), unit(rank, i, -2)]));
                r
            }
            RootFamily::D if rank >= 2 => pm_pairs(rank),
            RootFamily::G2 if rank == 2 => {
                let mut r = differences(3);
                for i in 0..3 {
                    let mut v = vec![-1; 3];
                    v[i] = 2;
                    r.push(v.clone());
                    r.push(v.iter().map(|x| -x).collect());
                }
                r
            }
            _ => {
                return Err(Error::InvalidRootSystem(format!("rank {rank} is invalid for family {family}")))
            }
        };
        let roots = roots.into_iter().map(|r| r.into_iter().map(q).collect()).collect();
        Ok(RootSystemSpec { family, rank, roots })
    }

    /// Dimension of the Euclidean space carrying the realization.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            RootFamily::A => self.rank + 1,
            RootFamily::G2 => 3,
            _ => self.rank,
        }
    }

    pub fn roots(&self) -> &[Vec<Q>] {
        &self.roots
    }

    pub fn coroots(&self) -> Vec<Vec<Q>> {
        self.roots
            .iter()
            .map(|r| {
                let s = q(2) / dot_qq(r, r);
                r.iter().map(|x| x * &s).collect()
            })
            .collect()
    }

    /// Weyl reflection `s_α(λ) = λ - ⟨λ, α∨⟩ α` for the `i`-th root.
    pub fn reflect(&self, lambda: &[Q], i: usize) -> Vec<Q> {
        let r = &self.roots[i];
        let pairing = q(2) * dot_qq(lambda, r) / dot_qq(r, r);
        lambda.iter().zip(r).map(|(l, a)| l - &pairing * a).collect()
    }
}

/// `min |⟨λ, α∨⟩|` over coroots with nonzero pairing.
pub fn gw_formula(spec: &RootSystemSpec, lambda: &[Q]) -> Result<Q> {
    if lambda.len() != spec.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: spec.ambient_dim(), got: lambda.len() });
    }
    spec.coroots()
        .iter()
        .map(|c| dot_qq(lambda, c).abs())
        .filter(|x| !x.is_zero())
        .min()
        .ok_or(Error::ZeroOrbit)
}
