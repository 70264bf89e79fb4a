use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eval::NumericFunction;
use super::haar::haar_unitary_with;
use super::stats::mean_and_stderr;
use super::{bi_unitary, NumericsError};
use crate::convex::LatticePolytope;
use crate::glpoly::RegularFunction;
use crate::rng::rng_for;
use crate::serde_float;

/// Samples below this count are rejected.
pub const MIN_SAMPLES: usize = 100;
/// Redraws allowed when a sample lands exactly on the zero set.
const MAX_REDRAWS: usize = 16;
pub const DEFAULT_FD_STEP: f64 = 0.25;
/// Distance from the nearest integer vector beyond which an order estimate is rejected.
pub const ORDER_RESIDUAL_LIMIT: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RonkinEstimate {
    pub x: Vec<f64>,
    #[serde(with = "serde_float")]
    pub mean: f64,
    #[serde(with = "serde_float")]
    pub stderr: f64,
    pub samples: usize,
    /// Draws discarded because `f` vanished exactly there.
    pub zero_hits: usize,
}

fn check_point(f: &RegularFunction, x: &[f64], samples: usize) -> Result<(), NumericsError> {
    if x.len() != f.n() {
        return Err(NumericsError::DimensionMismatch {
            expected: f.n(),
            got: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(NumericsError::NonFinite);
    }
    if samples < MIN_SAMPLES {
        return Err(NumericsError::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples,
        });
    }
    Ok(())
}

/// Evaluates `g` on fresh Haar pairs from the `i`-th stream until every value is nonzero.
/// Returns the values and the number of discarded draws, or `None` if all redraws vanished.
fn draw<const K: usize>(
    n: usize,
    seed: u64,
    i: usize,
    mut g: impl FnMut(&super::CMatrix, &super::CMatrix) -> [f64; K],
) -> (Option<[f64; K]>, usize) {
    let mut rng = rng_for(seed, i as u64);
    let mut hits = 0;
    for _ in 0..MAX_REDRAWS {
        let u = haar_unitary_with(n, &mut rng);
        let v = haar_unitary_with(n, &mut rng);
        let vals = g(&u, &v);
        if vals.iter().all(|a| *a > 0.0) {
            return (Some(vals), hits);
        }
        hits += 1;
    }
    (None, hits)
}

/// Monte-Carlo estimate of `R_f(x) = E log |f(U diag(e^x) V^*)|` over Haar `U, V`.
///
/// Sample `i` uses its own seeded stream, so the result does not depend on thread count.
pub fn ronkin_mc(
    f: &RegularFunction,
    x: &[f64],
    samples: usize,
    seed: u64,
) -> Result<RonkinEstimate, NumericsError> {
    check_point(f, x, samples)?;
    let n = f.n();
    let func = NumericFunction::new(f);
    let d: Vec<f64> = x.iter().map(|v| v.exp()).collect();
    let draws: Vec<(Option<[f64; 1]>, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            draw(n, seed, i, |u, v| {
                [func.value(&bi_unitary(u, &d, v)).norm()]
            })
        })
        .collect();
    let zero_hits = draws.iter().map(|(_, h)| h).sum();
    let logs: Vec<f64> = draws
        .iter()
        .map(|(v, _)| v.map_or(f64::NEG_INFINITY, |[a]| a.ln()))
        .collect();
    if logs.iter().any(|l| *l == f64::INFINITY || l.is_nan()) {
        return Err(NumericsError::Overflow);
    }
    let (mean, stderr) = mean_and_stderr(&logs);
    Ok(RonkinEstimate {
        x: x.to_vec(),
        mean,
        stderr,
        samples,
        zero_hits,
    })
}

/// Central-difference gradient of the Ronkin function with common random numbers: every
/// sample evaluates all `2n` shifted points on the same `(U, V)`. Returns means and standard
/// errors per coordinate.
pub fn ronkin_gradient(
    f: &RegularFunction,
    x: &[f64],
    step: f64,
    samples: usize,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>), NumericsError> {
    check_point(f, x, samples)?;
    let n = f.n();
    let func = NumericFunction::new(f);
    let shifted: Vec<[Vec<f64>; 2]> = (0..n)
        .map(|k| {
            let at = |sign: f64| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        if j == k {
                            (v + sign * step).exp()
                        } else {
                            v.exp()
                        }
                    })
                    .collect::<Vec<f64>>()
            };
            [at(1.0), at(-1.0)]
        })
        .collect();
    let per_sample: Vec<Vec<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            'draw: for _ in 0..MAX_REDRAWS {
                let u = haar_unitary_with(n, &mut rng);
                let v = haar_unitary_with(n, &mut rng);
                let mut diffs = Vec::with_capacity(n);
                for [p, m] in &shifted {
                    let fp = func.value(&bi_unitary(&u, p, &v)).norm();
                    let fm = func.value(&bi_unitary(&u, m, &v)).norm();
                    if fp == 0.0 || fm == 0.0 {
                        continue 'draw;
                    }
                    diffs.push((fp.ln() - fm.ln()) / (2.0 * step));
                }
                return diffs;
            }
            vec![f64::NAN; n]
        })
        .collect();
    let mut means = Vec::with_capacity(n);
    let mut errs = Vec::with_capacity(n);
    for k in 0..n {
        let col: Vec<f64> = per_sample.iter().map(|d| d[k]).collect();
        if col.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::Overflow);
        }
        let (m, s) = mean_and_stderr(&col);
        means.push(m);
        errs.push(s);
    }
    Ok((means, errs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    pub x: Vec<f64>,
    pub gradient: Vec<f64>,
    pub stderr: Vec<f64>,
    pub order: Vec<i64>,
    /// Max-norm distance from `gradient` to `order`.
    pub residual: f64,
    /// Whether `order` lies in the given Newton polytope.
    pub in_polytope: bool,
}

/// Order `nu_f(x)` of the complement component containing `x`, as the rounded Ronkin gradient.
pub fn order_of_component(
    f: &RegularFunction,
    x: &[f64],
    step: f64,
    samples: usize,
    seed: u64,
    polytope: &LatticePolytope,
) -> Result<OrderEstimate, NumericsError> {
    let (gradient, stderr) = ronkin_gradient(f, x, step, samples, seed)?;
    let order: Vec<i64> = gradient.iter().map(|g| g.round() as i64).collect();
    let residual = gradient
        .iter()
        .zip(&order)
        .map(|(g, o)| (g - *o as f64).abs())
        .fold(0.0, f64::max);
    if residual > ORDER_RESIDUAL_LIMIT {
        return Err(NumericsError::EstimationFailure { gradient, residual });
    }
    let in_polytope = polytope.n() == order.len() && polytope.contains(&order);
    Ok(OrderEstimate {
        x: x.to_vec(),
        gradient,
        stderr,
        order,
        residual,
        in_polytope,
    })
}
