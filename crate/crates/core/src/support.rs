//! Supports `S_f`, coefficients `Q_m`, spherical Newton polytopes and the minors `det_k`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::SquareMat;
use crate::convex::{ConvexError, LatticePolytope};
use crate::glpoly::{substitute, substitute_c64, GlPolyError, RegularFunction};
use crate::rng::{random_invertible, rng_for};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupportError {
    #[error("the zero function has no support")]
    ZeroFunction,
    #[error("index sets have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("weight {0:?} is not weakly increasing")]
    NonMonotone(Vec<i64>),
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Poly(#[from] GlPolyError),
    #[error(transparent)]
    Convex(#[from] ConvexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Confidence {
    /// Two consecutive independent trials returned the same support.
    Exact,
    Randomized {
        trials: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub n: usize,
    /// Sorted lexicographically.
    pub points: Vec<Vec<i64>>,
    pub confidence: Confidence,
}

impl SupportSet {
    pub fn contains(&self, m: &[i64]) -> bool {
        self.points
            .binary_search_by(|p| p.as_slice().cmp(m))
            .is_ok()
    }
}

/// Union of the supports of `z -> f(A diag(z) B^-1)` over `trials` random exact pairs.
pub fn support(f: &RegularFunction, trials: usize, seed: u64) -> Result<SupportSet, SupportError> {
    if trials == 0 {
        return Err(SupportError::NoTrials);
    }
    let n = f.n();
    let per_trial: Vec<BTreeSet<Vec<i64>>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(seed, t);
            let a = random_invertible(n, &mut rng);
            let b = random_invertible(n, &mut rng);
            substitute(f, &a, &b).map(|p| p.support())
        })
        .collect::<Result<_, _>>()?;
    let union: BTreeSet<Vec<i64>> = per_trial.iter().flatten().cloned().collect();
    let exact = per_trial.len() >= 2 && per_trial.windows(2).any(|w| w[0] == w[1] && w[1] == union);
    Ok(SupportSet {
        n,
        points: union.into_iter().collect(),
        confidence: if exact {
            Confidence::Exact
        } else {
            Confidence::Randomized { trials }
        },
    })
}

/// Exact coefficient of `z^m` in `f(A diag(z) B^-1)`.
pub fn qm(
    f: &RegularFunction,
    m: &[i64],
    a: &SquareMat<Scalar>,
    b: &SquareMat<Scalar>,
) -> Result<Scalar, SupportError> {
    let p = substitute(f, a, b)?;
    Ok(p.coeff(m).cloned().unwrap_or_else(Scalar::zero))
}

/// Floating-point coefficient of `z^m` in `f(A diag(z) B^-1)`.
pub fn qm_c64(
    f: &RegularFunction,
    m: &[i64],
    a: &SquareMat<Complex64>,
    b: &SquareMat<Complex64>,
) -> Result<Complex64, SupportError> {
    let p = substitute_c64(f, a, b)?;
    Ok(p.coeff(m).copied().unwrap_or_default())
}

/// Spherical Newton polytope: hull of the support.
pub fn snewt(
    f: &RegularFunction,
    trials: usize,
    seed: u64,
) -> Result<LatticePolytope, SupportError> {
    if f.is_zero() {
        return Err(SupportError::ZeroFunction);
    }
    let s = support(f, trials, seed)?;
    Ok(LatticePolytope::hull(&s.points)?)
}

fn check_indices(n: usize, idx: &[usize]) -> Result<Vec<usize>, SupportError> {
    idx.iter()
        .map(|&i| {
            if (1..=n).contains(&i) {
                Ok(i - 1)
            } else {
                Err(SupportError::IndexOutOfRange { index: i, n })
            }
        })
        .collect()
}

/// Minor on 1-based rows `rows` and columns `cols`.
pub fn minor_det(
    n: usize,
    rows: &[usize],
    cols: &[usize],
) -> Result<RegularFunction, SupportError> {
    if rows.len() != cols.len() {
        return Err(SupportError::SizeMismatch(rows.len(), cols.len()));
    }
    let r = check_indices(n, rows)?;
    let c = check_indices(n, cols)?;
    Ok(RegularFunction::minor(n, &r, &c))
}

/// `det_k`: the minor on the last `k` rows and columns.
pub fn trailing_minor(n: usize, k: usize) -> Result<RegularFunction, SupportError> {
    if k > n {
        return Err(SupportError::IndexOutOfRange { index: k, n });
    }
    let idx: Vec<usize> = (n - k + 1..=n).collect();
    minor_det(n, &idx, &idx)
}

/// `v_lambda = prod_k det_k^(lambda_{n-k+1} - lambda_{n-k})` with `lambda_0 = 0`.
pub fn v_lambda(lambda: &[i64]) -> Result<RegularFunction, SupportError> {
    if !crate::convex::is_dominant(lambda) {
        return Err(SupportError::NonMonotone(lambda.to_vec()));
    }
    let n = lambda.len();
    // det_n = det carries the possibly negative exponent lambda_1.
    let mut f = RegularFunction::det_pow(n, lambda[0]);
    for k in 1..n {
        let e = lambda[n - k] - lambda[n - k - 1];
        if e > 0 {
            f = f.mul(&trailing_minor(n, k)?.pow(e as u32));
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glpoly::parse;

    #[test]
    fn minors_by_hand() {
        let m = minor_det(3, &[1, 2], &[2, 3]).unwrap();
        assert_eq!(m, parse("a12*a23 - a13*a22", 3).unwrap());
        assert_eq!(trailing_minor(2, 1).unwrap(), parse("a22", 2).unwrap());
        assert_eq!(trailing_minor(2, 2).unwrap(), parse("det", 2).unwrap());
        assert!(minor_det(3, &[1], &[1, 2]).is_err());
        assert!(minor_det(3, &[4], &[1]).is_err());
    }

    #[test]
    fn v_lambda_special_weights() {
        assert_eq!(v_lambda(&[0, 0, 0]).unwrap(), RegularFunction::one(3));
        assert_eq!(
            v_lambda(&[-1, -1]).unwrap(),
            RegularFunction::det_pow(2, -1)
        );
        assert!(v_lambda(&[0, 0, 1])
            .unwrap()
            .probably_equal(&trailing_minor(3, 1).unwrap(), 3));
        assert!(v_lambda(&[0, 1, 1])
            .unwrap()
            .probably_equal(&trailing_minor(3, 2).unwrap(), 3));
        assert!(v_lambda(&[2, 1]).is_err());
    }
}
