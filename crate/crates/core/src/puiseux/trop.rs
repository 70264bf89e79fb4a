use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::exponent_serde;
use super::matrix::PuiseuxMatrix;
use super::series::Exponent;
use super::PuiseuxError;
use crate::glpoly::{substitute_ring, RegularFunction};
use crate::support::SupportSet;

/// Valuation of a coefficient; `Infinite` for a coefficient that is exactly zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TropValue {
    Finite(Exponent),
    Infinite,
}

impl Serialize for TropValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TropValue::Finite(e) => s.serialize_str(&exponent_serde::to_string(e)),
            TropValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for TropValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "inf" {
            return Ok(TropValue::Infinite);
        }
        exponent_serde::from_str(&text)
            .map(TropValue::Finite)
            .ok_or_else(|| serde::de::Error::custom(format!("bad valuation {text:?}")))
    }
}

/// Tropicalization `y -> min_m (val Q_m(P, Q) + m . y)` of the torus substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropPoly {
    pub n: usize,
    /// Sorted by exponent.
    pub terms: Vec<(Vec<i64>, TropValue)>,
}

/// Valuations of the coefficients of `z -> f(P diag(z) Q^-1)` for every exponent of `support`
/// and every exponent that appears in the substitution.
pub fn trop_poly(
    f: &RegularFunction,
    p: &PuiseuxMatrix,
    q: &PuiseuxMatrix,
    support: &SupportSet,
) -> Result<TropPoly, PuiseuxError> {
    let n = f.n();
    for m in [p, q] {
        if m.n() != n {
            return Err(PuiseuxError::DimensionMismatch {
                expected: n,
                got: m.n(),
            });
        }
    }
    if support.n != n {
        return Err(PuiseuxError::DimensionMismatch {
            expected: n,
            got: support.n,
        });
    }
    let q_inv = q.inverse()?;
    let psi = substitute_ring(f, p.entries(), q_inv.entries()).ok_or(PuiseuxError::Singular)?;
    let exponents: BTreeSet<Vec<i64>> = support
        .points
        .iter()
        .cloned()
        .chain(psi.terms().map(|(m, _)| m.clone()))
        .collect();
    let mut terms = Vec::with_capacity(exponents.len());
    for m in exponents {
        let value = match psi.coeff(&m) {
            None => TropValue::Infinite,
            Some(c) if c.is_exact_zero() => TropValue::Infinite,
            Some(c) => match c.val() {
                Some(v) => TropValue::Finite(v),
                None => {
                    return Err(PuiseuxError::InsufficientPrecision {
                        what: format!("the coefficient of z^{m:?}"),
                    })
                }
            },
        };
        terms.push((m, value));
    }
    Ok(TropPoly { n, terms })
}

/// Minimum of `val_m + m . y` and the number of exponents attaining it.
pub fn tropical_minimum(tp: &TropPoly, y: &[Exponent]) -> Option<(Exponent, usize)> {
    let mut best: Option<(Exponent, usize)> = None;
    for (m, v) in &tp.terms {
        let TropValue::Finite(v) = v else { continue };
        let value = m.iter().zip(y).fold(*v, |acc, (mi, yi)| acc + yi * *mi);
        best = match best {
            Some((b, c)) if value == b => Some((b, c + 1)),
            Some((b, c)) if value > b => Some((b, c)),
            _ => Some((value, 1)),
        };
    }
    best
}

/// Whether the minimum of the tropical polynomial at `y` is attained at least twice.
pub fn trop_hypersurface_member(tp: &TropPoly, y: &[Exponent]) -> bool {
    tropical_minimum(tp, y).is_some_and(|(_, count)| count >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glpoly::parse;
    use crate::support::support;

    fn fin(v: i64) -> TropValue {
        TropValue::Finite(Exponent::from_integer(v))
    }

    #[test]
    fn det_minus_one_at_identity() {
        let f = parse("det - 1", 2).unwrap();
        let s = support(&f, 3, 1).unwrap();
        let id = PuiseuxMatrix::identity(2);
        let tp = trop_poly(&f, &id, &id, &s).unwrap();
        assert_eq!(tp.terms, vec![(vec![0, 0], fin(0)), (vec![1, 1], fin(0))]);
        let y = |a: i64, b: i64| [Exponent::from_integer(a), Exponent::from_integer(b)];
        assert!(trop_hypersurface_member(&tp, &y(3, -3)));
        assert!(!trop_hypersurface_member(&tp, &y(1, 0)));
    }

    #[test]
    fn one_variable_tie() {
        let tp = TropPoly {
            n: 1,
            terms: vec![(vec![0], fin(0)), (vec![1], fin(0))],
        };
        assert!(trop_hypersurface_member(&tp, &[Exponent::from_integer(0)]));
        assert!(!trop_hypersurface_member(&tp, &[Exponent::from_integer(1)]));
    }

    #[test]
    fn determinant_of_unipotent_conjugate() {
        let f = parse("det", 3).unwrap();
        let s = support(&f, 3, 1).unwrap();
        let mut rows = PuiseuxMatrix::identity(3).rows();
        rows[0][1] = crate::puiseux::parse_series("t").unwrap();
        let p = PuiseuxMatrix::from_rows(rows).unwrap();
        let tp = trop_poly(&f, &p, &PuiseuxMatrix::identity(3), &s).unwrap();
        assert_eq!(tp.terms, vec![(vec![1, 1, 1], fin(0))]);
    }

    #[test]
    fn infinite_values_serialize() {
        let tp = TropPoly {
            n: 1,
            terms: vec![(vec![2], TropValue::Infinite), (vec![0], fin(-1))],
        };
        let json = serde_json::to_string(&tp).unwrap();
        assert!(json.contains("\"inf\""));
        assert_eq!(serde_json::from_str::<TropPoly>(&json).unwrap(), tp);
    }
}
