//! Floating-point side: singular-value logarithm, Haar sampling on `U(n)`, amoeba membership by
//! optimization over `U(n) x U(n)`, Monte-Carlo Ronkin estimates and component orders.

mod eval;
mod grid;
mod haar;
mod membership;
mod ronkin;
mod slog;
mod stats;

use thiserror::Error;

pub use eval::NumericFunction;
pub use grid::{amoeba_grid, grid_axis, AmoebaGrid, GridSample};
pub use haar::{haar_unitary, haar_unitary_with, unitarity_defect};
pub use membership::{membership, MembershipOptions, MembershipVerdict, Verdict};
pub use ronkin::{
    order_of_component, ronkin_gradient, ronkin_mc, OrderEstimate, RonkinEstimate, DEFAULT_FD_STEP,
    ORDER_RESIDUAL_LIMIT,
};
pub use slog::{slog, SLogPoint, SLOG_RELATIVE_FLOOR};
pub use stats::{mean_and_stderr, pairwise_sum};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("matrix is numerically singular (smallest singular value {smallest:e})")]
    Singular { smallest: f64 },
    #[error("point has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point has a non-finite coordinate")]
    NonFinite,
    #[error("at least {min} samples are required, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("grid resolution must be at least 2, got {0}")]
    Resolution(usize),
    #[error("gradient estimate {gradient:?} is {residual:.3} away from an integer vector")]
    EstimationFailure { gradient: Vec<f64>, residual: f64 },
    #[error("function value overflowed at the sampled scale")]
    Overflow,
}

/// `U diag(d) V^*`.
pub fn bi_unitary(u: &CMatrix, d: &[f64], v: &CMatrix) -> CMatrix {
    let mut ud = u.clone();
    for (j, dj) in d.iter().enumerate() {
        ud.column_mut(j).scale_mut(*dj);
    }
    ud * v.adjoint()
}
