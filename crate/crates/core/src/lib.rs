//! Exact lattice-polytope toolkit for toric degenerations: lowest-term
//! valuations and sliding, simplex-fitting Gromov width bounds, and
//! cohomological rigidity of Bott manifolds.

#![allow(clippy::needless_range_loop)]

pub mod bott;
pub mod error;
pub mod gromov;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod valuation;

pub use error::{Error, Result};
pub use polytope::{
    hull, hull_of_lattice_points, AffineUnimodular, HPolytope, HalfSpace, LatticePointSet,
    NormalityCheck, SmoothnessCheck, VPolytope,
};
pub use rational::Q;
