//! Regular functions on `GL_n(C)` and the torus substitution.
//!
//! A [`RegularFunction`] is `det^N * p` where `p` is a polynomial with exact Gaussian-rational
//! coefficients in the `n^2` matrix entries. The representation is not canonical (`p` may be
//! divisible by `det`); [`RegularFunction::probably_equal`] decides equality by exact evaluation
//! at random points.

mod laurent;
mod parse;
mod regular;
mod subst;

use thiserror::Error;

pub use laurent::LaurentPoly;
pub use parse::{parse, parse_with_limit};
pub use regular::{Monomial, RegularFunction, DEFAULT_MAX_DIMENSION};
pub use subst::{substitute, substitute_c64, substitute_ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlPolyError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("entry a[{i},{j}] at offset {pos} is outside 1..={n}")]
    IndexOutOfRange {
        pos: usize,
        i: usize,
        j: usize,
        n: usize,
    },
    #[error("exponent at offset {pos} must be an integer")]
    NonIntegerExponent { pos: usize },
    #[error("negative power at offset {pos} of a factor that is not a unit")]
    NegativePower { pos: usize },
    #[error("dimension {n} is outside 1..={max}")]
    Dimension { n: usize, max: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
}
