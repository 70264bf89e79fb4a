use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::parse::parse_series;
use super::series::{Exponent, PuiseuxSeries};
use super::PuiseuxError;
use crate::algebra::SquareMat;
use crate::numerics::CMatrix;

/// Square matrix of Puiseux series. Serialized as rows of series literals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct PuiseuxMatrix {
    entries: SquareMat<PuiseuxSeries>,
}

impl PuiseuxMatrix {
    pub fn new(entries: SquareMat<PuiseuxSeries>) -> Self {
        Self { entries }
    }

    pub fn from_rows(rows: Vec<Vec<PuiseuxSeries>>) -> Result<Self, PuiseuxError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(PuiseuxError::NotSquare {
                expected: n,
                got: bad.len(),
            });
        }
        if n == 0 {
            return Err(PuiseuxError::NotSquare {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self::new(
            SquareMat::from_rows(rows).expect("checked square"),
        ))
    }

    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, PuiseuxError> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_series(s.as_ref()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(SquareMat::identity(n))
    }

    pub fn diagonal(d: &[PuiseuxSeries]) -> Self {
        Self::new(SquareMat::diagonal(d))
    }

    pub fn n(&self) -> usize {
        self.entries.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxSeries {
        self.entries.get(i, j)
    }

    pub fn entries(&self) -> &SquareMat<PuiseuxSeries> {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<PuiseuxSeries>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Common denominator of all exponents.
    pub fn ramification(&self) -> i64 {
        self.entries
            .entries()
            .iter()
            .fold(1, |k, s| k.lcm(&s.ramification()))
    }

    /// Smallest truncation order among the entries, `None` if all are exact.
    pub fn trunc_order(&self) -> Option<Exponent> {
        self.entries
            .entries()
            .iter()
            .filter_map(|s| s.trunc())
            .min()
    }

    pub fn with_trunc(&self, q: Exponent) -> Self {
        Self::new(self.entries.map(|s| s.with_trunc(q)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.entries.mul(&other.entries))
    }

    pub fn det(&self) -> PuiseuxSeries {
        self.entries.det()
    }

    /// Gauss-Jordan inverse pivoting on entries of least valuation.
    pub fn inverse(&self) -> Result<Self, PuiseuxError> {
        self.entries
            .inverse_with(|s| s.val())
            .map(Self::new)
            .ok_or(PuiseuxError::Singular)
    }

    /// Numeric value of the known terms of every entry at `t = s`.
    pub fn eval(&self, s: f64) -> CMatrix {
        let n = self.n();
        CMatrix::from_fn(n, n, |i, j| self.get(i, j).eval(s))
    }
}

impl TryFrom<Vec<Vec<String>>> for PuiseuxMatrix {
    type Error = PuiseuxError;

    fn try_from(rows: Vec<Vec<String>>) -> Result<Self, Self::Error> {
        Self::parse(&rows)
    }
}

impl From<PuiseuxMatrix> for Vec<Vec<String>> {
    fn from(m: PuiseuxMatrix) -> Self {
        m.rows()
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_inverse() {
        let m = PuiseuxMatrix::parse(&[vec!["1", "t"], vec!["t^(1/2)", "1 + t"]]).unwrap();
        assert_eq!(m.ramification(), 2);
        let json = serde_json::to_string(&m).unwrap();
        let back: PuiseuxMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);

        let prod = m.mul(&m.inverse().unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let e = prod.get(i, j);
                let expected = if i == j {
                    Some(Exponent::from_integer(0))
                } else {
                    None
                };
                assert_eq!(e.val(), expected, "entry ({i},{j}) = {e}");
            }
        }
        assert!(PuiseuxMatrix::parse(&[vec!["1", "t"]]).is_err());
    }
}
