use serde::{Deserialize, Serialize};

use super::{CMatrix, NumericsError};

/// Ratio of smallest to largest singular value below which a matrix counts as singular.
pub const SLOG_RELATIVE_FLOOR: f64 = 1e-15;

/// A point of `R^n / S_n`, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SLogPoint {
    pub values: Vec<f64>,
}

impl SLogPoint {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values }
    }

    /// Quotient distance: min over permutations of the max-norm difference, which for sorted
    /// representatives is the sorted difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Logarithms of the singular values of `a`, ascending.
pub fn slog(a: &CMatrix) -> Result<SLogPoint, NumericsError> {
    let sv = a.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) || min <= max * SLOG_RELATIVE_FLOOR {
        return Err(NumericsError::Singular { smallest: min });
    }
    Ok(SLogPoint::new(sv.iter().map(|s| s.ln()).collect()))
}
