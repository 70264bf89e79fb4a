use serde::{Deserialize, Serialize};

use super::exponent_serde;
use super::matrix::PuiseuxMatrix;
use super::series::{Exponent, PuiseuxSeries};
use super::PuiseuxError;

/// Valuations of the invariant factors of a Puiseux matrix, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvalResult {
    #[serde(with = "exponent_serde::list")]
    pub factors: Vec<Exponent>,
    /// Every pivot valuation was determined and provably minimal, and the input truncation
    /// order exceeds the largest factor.
    pub certified: bool,
}

impl SvalResult {
    pub fn sum(&self) -> Exponent {
        self.factors.iter().sum()
    }
}

/// Smith normal form over the valuation ring by elimination.
///
/// Each step pivots on a known entry of least valuation (ties broken by row-major position),
/// which divides every other entry in the ring, and clears its column. Only the valuations of
/// the pivots are needed, so row operations on the pivot row and column clearing are skipped.
pub fn smith_sval(a: &PuiseuxMatrix) -> Result<SvalResult, PuiseuxError> {
    let n = a.n();
    let mut m = a.rows();
    let mut certified = true;
    let mut factors = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(usize, usize, Exponent)> = None;
        let mut unknown_floor: Option<Exponent> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, s) in row.iter().enumerate().skip(k) {
                if let Some(v) = s.val() {
                    if best.as_ref().is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                    }
                } else if let Some(q) = s.trunc() {
                    unknown_floor = Some(unknown_floor.map_or(q, |u: Exponent| u.min(q)));
                }
            }
        }
        let Some((pi, pj, pv)) = best else {
            return Err(match unknown_floor {
                None => PuiseuxError::Singular,
                Some(_) => PuiseuxError::InsufficientPrecision {
                    what: format!("invariant factor {}", k + 1),
                },
            });
        };
        if unknown_floor.is_some_and(|u| u < pv) {
            certified = false;
        }
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let pinv = m[k][k].inverse()?;
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let factor = row[k].mul(&pinv);
            if factor.is_exact_zero() {
                continue;
            }
            for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x = x.sub(&factor.mul(p));
            }
            row[k] = PuiseuxSeries::exact_zero();
        }
        factors.push(pv);
    }
    factors.sort();
    if let (Some(t), Some(max)) = (a.trunc_order(), factors.last()) {
        if *max >= t {
            certified = false;
        }
    }
    Ok(SvalResult { factors, certified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Exponent {
        Exponent::from_integer(v)
    }

    #[test]
    fn hand_computed_values() {
        let d = PuiseuxMatrix::parse(&[vec!["t", "0"], vec!["0", "t^-1"]]).unwrap();
        assert_eq!(
            smith_sval(&d).unwrap(),
            SvalResult {
                factors: vec![q(-1), q(1)],
                certified: true
            }
        );

        let a = PuiseuxMatrix::parse(&[vec!["1", "t"], vec!["t", "t"]]).unwrap();
        let r = smith_sval(&a).unwrap();
        assert_eq!(r.factors, vec![q(0), q(1)]);
        assert!(r.certified);
        assert_eq!(r.sum(), a.det().val().unwrap());
    }

    #[test]
    fn short_truncation_is_flagged() {
        let a = PuiseuxMatrix::parse(&[vec!["1", "t"], vec!["t", "t^3"]]).unwrap();
        let exact = smith_sval(&a).unwrap();
        assert_eq!(exact.factors, vec![q(0), q(2)]);
        // det = t^3 - t^2 needs order above 2 to be seen.
        let short = smith_sval(&a.with_trunc(q(2)));
        assert!(
            matches!(short, Err(PuiseuxError::InsufficientPrecision { .. }))
                || !short.unwrap().certified
        );
        let long = smith_sval(&a.with_trunc(q(4))).unwrap();
        assert!(long.certified);
        assert_eq!(long.factors, exact.factors);
    }

    #[test]
    fn singular_matrix() {
        let a = PuiseuxMatrix::parse(&[vec!["1", "t"], vec!["2", "2*t"]]).unwrap();
        assert_eq!(smith_sval(&a), Err(PuiseuxError::Singular));
    }
}
