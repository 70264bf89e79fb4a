//! Truncated Puiseux series over Gaussian rationals, matrices of them, invariant-factor
//! valuations via Smith normal form over the valuation ring, tropicalized coefficients of the
//! torus substitution, and the numeric `slog(A(s)) / ln s` limit check.

mod limit;
mod matrix;
mod parse;
mod series;
mod smith;
mod trop;

use thiserror::Error;

pub use limit::{eval_series, slog_limit_report, SlogLimitReport, SlogLimitRow};
pub use matrix::PuiseuxMatrix;
pub use parse::parse_series;
pub use series::{Exponent, PuiseuxSeries, DEFAULT_TRUNCATION};
pub use smith::{smith_sval, SvalResult};
pub use trop::{trop_hypersurface_member, trop_poly, tropical_minimum, TropPoly, TropValue};

use crate::numerics::NumericsError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PuiseuxError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("requested order {requested} is not below the truncation order {available}")]
    PastTruncation {
        requested: Exponent,
        available: Exponent,
    },
    #[error("series with valuation {val:?} is not a unit of the valuation ring")]
    NotAUnit { val: Option<Exponent> },
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("valuation is unknown below the truncation order {trunc:?}")]
    UnknownValuation { trunc: Option<Exponent> },
    #[error("matrix rows must all have length {expected}, found {got}")]
    NotSquare { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, found {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("truncation order too low to determine {what}")]
    InsufficientPrecision { what: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Serde helpers writing exponents as strings like `"-3/2"`.
pub(crate) mod exponent_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::Exponent;

    pub fn to_string(e: &Exponent) -> String {
        e.to_string()
    }

    pub fn from_str(s: &str) -> Option<Exponent> {
        match s.split_once('/') {
            Some((p, q)) => {
                let q: i64 = q.trim().parse().ok()?;
                (q != 0).then_some(())?;
                Some(Exponent::new(p.trim().parse().ok()?, q))
            }
            None => Some(Exponent::from_integer(s.trim().parse().ok()?)),
        }
    }

    pub mod list {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Exponent], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Exponent>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| from_str(s).ok_or_else(|| D::Error::custom(format!("bad exponent {s:?}"))))
                .collect()
        }
    }
}
