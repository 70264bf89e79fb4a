//! Exact lattice-polytope geometry.
//!
//! Hulls are computed by enumerating candidate supporting hyperplanes through affinely
//! independent point tuples inside the affine hull. That is exponential in the dimension of the
//! hull but exact, and the point sets met here (supports and permutation orbits for small `n`) are
//! small.

mod cone;
mod intlin;
mod polytope;
mod weight;

use thiserror::Error;

pub use cone::Cone;
pub use polytope::{affine_dim, DiagExtremes, Face, Facet, LatticePolytope};
pub use weight::{
    dominates, is_dominant, majorization_contains, permutation_orbit, weight_polytope,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvexError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("point is not in the polytope")]
    NotInPolytope,
    #[error("vertex set is not a face of the polytope")]
    InvalidFace,
    #[error("generators violate the cone inequalities")]
    InconsistentCone,
    #[error("bounding box too large to enumerate")]
    TooLarge,
}
