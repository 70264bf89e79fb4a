//! Matrix amoebas of hypersurfaces in `GL_n(C)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`algebra`]: exact Gaussian rationals and small dense matrices over a ring.
//! * [`glpoly`]: regular functions `det^N * p(a_11, ..., a_nn)`, their parser and the torus
//!   substitution `z -> f(A diag(z) B^-1)`.
//! * [`support`]: supports, `Q_m` coefficients, spherical Newton polytopes, minors and `v_lambda`.
//! * [`convex`]: exact lattice polytopes, normal cones, weight polytopes and majorization.
//! * [`numerics`]: singular-value logarithm, Haar sampling, amoeba membership and Ronkin estimates.
//! * [`puiseux`]: truncated Puiseux series, Smith normal form valuations, tropical polynomials.
//! * [`tropical`]: the closed-form limit set of rescaled amoebas and the scaling experiment.

// Negated float comparisons are used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod convex;
pub mod glpoly;
pub mod numerics;
pub mod puiseux;
pub mod rng;
pub mod scalar;
pub mod serde_float;
pub mod support;
pub mod tropical;

pub use glpoly::{parse, LaurentPoly, RegularFunction};
pub use scalar::Scalar;
