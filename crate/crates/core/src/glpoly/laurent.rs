use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::Ring;

/// Sparse Laurent polynomial in `n` torus variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<C> {
    n: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: Vec<i64>, coeff: C) -> Self {
        let n = exponent.len();
        let mut p = Self::zero(n);
        if !coeff.is_zero_elem() {
            p.terms.insert(exponent, coeff);
        }
        p
    }

    pub fn constant(n: usize, coeff: C) -> Self {
        Self::monomial(vec![0; n], coeff)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[i64]) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn support(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    fn add_term(&mut self, m: Vec<i64>, c: C) {
        if let Some(existing) = self.terms.get_mut(&m) {
            let s = existing.plus(&c);
            if s.is_zero_elem() {
                self.terms.remove(&m);
            } else {
                *existing = s;
            }
        } else if !c.is_zero_elem() {
            self.terms.insert(m, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.negate()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Vec<i64> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.times(c));
        }
        out
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at `z`; `None` if a negative power meets a non-invertible coordinate.
    pub fn eval(&self, z: &[C]) -> Option<C> {
        assert_eq!(z.len(), self.n, "point dimension mismatch");
        let inverses: Vec<Option<C>> = z.iter().map(|v| v.try_inverse()).collect();
        let mut acc = C::zero_elem();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.iter().enumerate() {
                let base = if e >= 0 {
                    z[k].clone()
                } else {
                    inverses[k].clone()?
                };
                for _ in 0..e.unsigned_abs() {
                    term = term.times(&base);
                }
            }
            acc = acc.plus(&term);
        }
        Some(acc)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}
