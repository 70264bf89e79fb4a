use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::PuiseuxError;
use crate::algebra::Ring;
use crate::scalar::{self, Scalar};

/// Exponents of `t`.
pub type Exponent = Ratio<i64>;

/// Relative precision used when inverting an exact series that is not a monomial.
pub const DEFAULT_TRUNCATION: i64 = 16;

/// A Puiseux series `sum c_e t^e + O(t^q)` with exact coefficients.
///
/// `trunc = None` means the series is exact (a finite sum). Otherwise every coefficient at
/// exponents `>= q` is unknown, and stored terms all lie below `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    terms: BTreeMap<Exponent, Scalar>,
    trunc: Option<Exponent>,
}

fn min_trunc(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PuiseuxSeries {
    pub fn exact_zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    /// `O(t^q)`: nothing is known below order `q`.
    pub fn unknown(q: Exponent) -> Self {
        Self {
            terms: BTreeMap::new(),
            trunc: Some(q),
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    pub fn monomial(c: Scalar, e: Exponent) -> Self {
        Self::from_terms([(e, c)], None)
    }

    /// `t^e` with coefficient one.
    pub fn t_pow(e: Exponent) -> Self {
        Self::monomial(Scalar::one(), e)
    }

    /// Sums repeated exponents and drops zero coefficients and terms at or past `trunc`.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Exponent, Scalar)>,
        trunc: Option<Exponent>,
    ) -> Self {
        let mut map: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if trunc.is_some_and(|q| e >= q) {
                continue;
            }
            *map.entry(e).or_insert_with(Scalar::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map, trunc }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&Scalar> {
        self.terms.get(e)
    }

    pub fn trunc(&self) -> Option<Exponent> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_none()
    }

    /// No known terms but a finite truncation: the valuation is not determined.
    pub fn is_undetermined(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_some()
    }

    /// Least exponent with a nonzero coefficient, if any is known.
    pub fn val(&self) -> Option<Exponent> {
        self.terms.keys().next().copied()
    }

    /// Lower bound on the valuation: `val` if determined, else the truncation order. `None` for
    /// the exact zero series.
    pub fn val_lower_bound(&self) -> Option<Exponent> {
        self.val().or(self.trunc)
    }

    pub fn leading(&self) -> Option<(Exponent, &Scalar)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Least common denominator of all exponents (and the truncation order).
    pub fn ramification(&self) -> i64 {
        self.terms
            .keys()
            .chain(self.trunc.iter())
            .fold(1, |k, e| k.lcm(e.denom()))
    }

    /// Lowers the truncation order to `q` if that is smaller, discarding terms at or past it.
    pub fn with_trunc(&self, q: Exponent) -> Self {
        let trunc = min_trunc(self.trunc, Some(q));
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())), trunc)
    }

    /// `T_q`: the exact polynomial of all terms with exponent `<= q`.
    ///
    /// Fails if some coefficient at an exponent `<= q` is unknown.
    pub fn truncate(&self, q: Exponent) -> Result<Self, PuiseuxError> {
        if let Some(t) = self.trunc {
            if q >= t {
                return Err(PuiseuxError::PastTruncation {
                    requested: q,
                    available: t,
                });
            }
        }
        Ok(Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e <= q)
                .map(|(e, c)| (*e, c.clone())),
            None,
        ))
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = min_trunc(self.trunc, other.trunc);
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
            trunc,
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)), self.trunc)
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
            trunc: self.trunc.map(|q| q + e),
        }
    }

    /// Product with `O(t^{q_a + v_b}, t^{q_b + v_a})` error, `v` being the valuation lower bound.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::exact_zero();
        }
        let va = self.val_lower_bound().expect("nonzero");
        let vb = other.val_lower_bound().expect("nonzero");
        let trunc = min_trunc(self.trunc.map(|q| q + vb), other.trunc.map(|q| q + va));
        let mut map: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if trunc.is_some_and(|q| e >= q) {
                    // Terms are sorted, so later `eb` only grow.
                    break;
                }
                *map.entry(e).or_insert_with(Scalar::zero) += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map, trunc }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a unit of the valuation ring (valuation exactly 0) by the geometric series.
    pub fn invert_unit(&self) -> Result<Self, PuiseuxError> {
        match self.val() {
            Some(v) if v.is_zero() => {}
            Some(v) => return Err(PuiseuxError::NotAUnit { val: Some(v) }),
            None => return Err(PuiseuxError::NotAUnit { val: None }),
        }
        let c0 = self.terms[&Exponent::zero()].clone();
        let c0_inv = c0.inv();
        if self.terms.len() == 1 && self.trunc.is_none() {
            return Ok(Self::constant(c0_inv));
        }
        let target = self
            .trunc
            .unwrap_or(Exponent::from_integer(DEFAULT_TRUNCATION));
        // self = c0 (1 + r) with val(r) > 0; 1/(1+r) = sum (-r)^k.
        let minus_r = Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, c)| (*e, -(c * &c0_inv))),
            Some(target),
        );
        let mut acc = Self::one().with_trunc(target);
        let mut power = Self::one();
        loop {
            power = power.mul(&minus_r).with_trunc(target);
            if power.terms.is_empty() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Inverse in the Puiseux field: `t^{-v} * invert_unit(t^{-v} * self)`.
    pub fn inverse(&self) -> Result<Self, PuiseuxError> {
        if self.is_exact_zero() {
            return Err(PuiseuxError::DivisionByZero);
        }
        let v = self
            .val()
            .ok_or(PuiseuxError::UnknownValuation { trunc: self.trunc })?;
        Ok(self.shift(-v).invert_unit()?.shift(-v))
    }

    /// Numeric value of the known terms at `t = s > 0`.
    pub fn eval(&self, s: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| scalar::to_c64(c) * s.powf(*e.numer() as f64 / *e.denom() as f64))
            .sum()
    }
}

fn format_exponent(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

fn format_t(e: &Exponent) -> String {
    if e.is_one() {
        "t".to_string()
    } else {
        format!("t^{}", format_exponent(e))
    }
}

impl fmt::Display for PuiseuxSeries {
    /// Prints in the literal grammar, e.g. `1 - 2*t^(1/2) + (1+i)*t^3 + O(t^4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let negative_real = c.im.is_zero() && c.re.is_negative();
            let mag = if negative_real { -c.clone() } else { c.clone() };
            let sign = if negative_real { "-" } else { "+" };
            if first {
                if negative_real {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = scalar::format_scalar(&mag);
            // A leading `-` of a purely imaginary coefficient would read as a term sign.
            let coeff = if coeff.starts_with('-') {
                format!("({coeff})")
            } else {
                coeff
            };
            if e.is_zero() {
                write!(f, "{coeff}")?;
            } else if scalar::is_one(&mag) {
                write!(f, "{}", format_t(e))?;
            } else {
                write!(f, "{coeff}*{}", format_t(e))?;
            }
        }
        match (&self.trunc, first) {
            (None, true) => write!(f, "0"),
            (None, false) => Ok(()),
            (Some(q), true) => write!(f, "O({})", format_t(q)),
            (Some(q), false) => write!(f, " + O({})", format_t(q)),
        }
    }
}

impl Ring for PuiseuxSeries {
    fn zero_elem() -> Self {
        Self::exact_zero()
    }
    fn one_elem() -> Self {
        Self::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_exact_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_scalar(s: &Scalar) -> Self {
        Self::constant(s.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}
