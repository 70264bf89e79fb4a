use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::matrix::PuiseuxMatrix;
use super::smith::{smith_sval, SvalResult};
use super::PuiseuxError;
use crate::numerics::{slog, CMatrix};

/// `A(s)` from the known terms of each entry, for `0 < s < 1`.
pub fn eval_series(a: &PuiseuxMatrix, s: f64) -> Result<CMatrix, PuiseuxError> {
    if !(s > 0.0 && s < 1.0) {
        return Err(PuiseuxError::InvalidParameter(format!(
            "s = {s} is outside (0, 1)"
        )));
    }
    Ok(a.eval(s))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlogLimitRow {
    pub s: f64,
    /// `slog(A(s)) / ln s`, ascending.
    pub ratios: Vec<f64>,
    /// Max-norm distance from `ratios` to the invariant-factor valuations.
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlogLimitReport {
    pub rows: Vec<SlogLimitRow>,
    pub sval: SvalResult,
}

/// Compares `slog(A(s)) / ln s` with `sval(A(t))` along the given `s` values.
pub fn slog_limit_report(
    a: &PuiseuxMatrix,
    s_values: &[f64],
) -> Result<SlogLimitReport, PuiseuxError> {
    let sval = smith_sval(a)?;
    let target: Vec<f64> = sval
        .factors
        .iter()
        .map(|e| e.to_f64().unwrap_or(f64::NAN))
        .collect();
    let rows = s_values
        .iter()
        .map(|&s| {
            let m = eval_series(a, s)?;
            let ln_s = s.ln();
            let mut ratios: Vec<f64> = slog(&m)?.values.iter().map(|v| v / ln_s).collect();
            ratios.sort_by(f64::total_cmp);
            let error = ratios
                .iter()
                .zip(&target)
                .map(|(r, t)| (r - t).abs())
                .fold(0.0, f64::max);
            Ok(SlogLimitRow { s, ratios, error })
        })
        .collect::<Result<Vec<_>, PuiseuxError>>()?;
    Ok(SlogLimitReport { rows, sval })
}
