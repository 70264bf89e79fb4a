use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GlPolyError;
use crate::algebra::{Ring, SquareMat};
use crate::rng::{random_invertible, rng_for};
use crate::scalar::{self, Scalar};

/// Largest matrix size accepted unless a caller raises the limit.
pub const DEFAULT_MAX_DIMENSION: usize = 8;

/// Sparse exponent vector over the entries `a_ij`, stored as sorted `(i*n + j, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(u16, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Self(vec![(index as u16, 1)])
    }

    /// Builds from `(variable, exponent)` pairs in any order; zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc: BTreeMap<u16, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *acc.entry(v as u16).or_insert(0) += e;
            }
        }
        Self(acc.into_iter().collect())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_pairs(self.pairs().chain(other.pairs()))
    }
}

/// `det^N * p` with `p` a polynomial in the entries of an `n x n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularFunction {
    n: usize,
    det_power: i64,
    terms: BTreeMap<Monomial, Scalar>,
}

impl RegularFunction {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            det_power: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut f = Self::zero(n);
        if !c.is_zero() {
            f.terms.insert(Monomial::one(), c);
        }
        f
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    /// The entry `a_{i+1, j+1}` (indices are 0-based here).
    pub fn entry(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "entry index out of range");
        let mut f = Self::zero(n);
        f.terms.insert(Monomial::var(i * n + j), Scalar::one());
        f
    }

    /// Builds `det^det_power * sum c_k m_k` from explicit terms.
    pub fn from_terms(
        n: usize,
        det_power: i64,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut f = Self {
            n,
            det_power,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// The determinant polynomial (with `det_power = 0`).
    pub fn det(n: usize) -> Self {
        let rows: Vec<usize> = (0..n).collect();
        Self::minor(n, &rows, &rows)
    }

    /// Determinant of the submatrix on 0-based `rows` x `cols`, expanded as a polynomial.
    pub fn minor(n: usize, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(
            rows.len(),
            cols.len(),
            "minor needs as many rows as columns"
        );
        let k = rows.len();
        let m = SquareMat::from_fn(k, |r, c| Self::entry(n, rows[r], cols[c]));
        m.det()
    }

    /// `det^k` stored as a pure det power.
    pub fn det_pow(n: usize, k: i64) -> Self {
        let mut f = Self::one(n);
        f.det_power = k;
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn det_power(&self) -> i64 {
        self.det_power
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(existing) = self.terms.get_mut(&m) {
            *existing += c;
            if existing.is_zero() {
                self.terms.remove(&m);
            }
        } else {
            self.terms.insert(m, c);
        }
    }

    fn check_same_n(&self, other: &Self) -> Result<(), GlPolyError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(GlPolyError::DimensionMismatch(self.n, other.n))
        }
    }

    fn poly_mul(a: &BTreeMap<Monomial, Scalar>, b: &BTreeMap<Monomial, Scalar>) -> Self {
        let mut out = Self::zero(0);
        for (m1, c1) in a {
            for (m2, c2) in b {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Rewrites with a smaller det power by absorbing `det^(self.det_power - target)` into `p`.
    fn lowered_to(&self, target: i64) -> Self {
        debug_assert!(target <= self.det_power);
        if target == self.det_power {
            return self.clone();
        }
        let det = Self::det(self.n);
        let mut acc = Self {
            n: self.n,
            det_power: target,
            terms: self.terms.clone(),
        };
        for _ in 0..(self.det_power - target) {
            let mut next = Self::poly_mul(&acc.terms, &det.terms);
            next.n = self.n;
            next.det_power = target;
            acc = next;
        }
        acc
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GlPolyError> {
        self.check_same_n(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let target = self.det_power.min(other.det_power);
        let mut out = self.lowered_to(target);
        for (m, c) in other.lowered_to(target).terms {
            out.add_term(m, c);
        }
        if out.terms.is_empty() {
            out.det_power = 0;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GlPolyError> {
        self.check_same_n(other)?;
        let mut out = Self::poly_mul(&self.terms, &other.terms);
        out.n = self.n;
        out.det_power = if out.terms.is_empty() {
            0
        } else {
            self.det_power + other.det_power
        };
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("dimension mismatch in add")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("dimension mismatch in mul")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::from_terms(
            self.n,
            self.det_power,
            self.terms.iter().map(|(m, v)| (m.clone(), v * c)),
        );
        if out.terms.is_empty() {
            out.det_power = 0;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// If `self` is visibly a unit `c * det^k`, returns `(c, k)`.
    pub fn as_unit(&self) -> Option<(Scalar, i64)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next()?;
            if m.is_one() {
                return Some((c.clone(), self.det_power));
            }
        }
        // p = c * det(poly)
        let det = Self::det(self.n);
        if self.terms.len() != det.terms.len() {
            return None;
        }
        let (m0, d0) = det.terms.iter().next()?;
        let c = self.terms.get(m0)? / d0;
        let scaled = det.scale(&c);
        if scaled.terms == self.terms {
            Some((c, self.det_power + 1))
        } else {
            None
        }
    }

    /// Integer power, allowing negative exponents for visible units.
    pub fn powi(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            return Some(self.pow(k as u32));
        }
        let (c, d) = self.as_unit()?;
        let c_pow = scalar::powi(&c, k)?;
        Some(Self::det_pow(self.n, d * k).scale(&c_pow))
    }

    /// Total degree of every monomial, counting `det^N` as degree `n*N`.
    fn degree_of(&self, m: &Monomial) -> i64 {
        m.degree() as i64 + self.n as i64 * self.det_power
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, RegularFunction> {
        let mut out: BTreeMap<i64, RegularFunction> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = self.degree_of(m);
            out.entry(d)
                .or_insert_with(|| Self {
                    n: self.n,
                    det_power: self.det_power,
                    terms: BTreeMap::new(),
                })
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Evaluates over any ring; `None` if a negative det power meets a non-invertible det.
    pub fn evaluate_ring<R: Ring>(&self, a: &SquareMat<R>) -> Option<R> {
        assert_eq!(a.n(), self.n, "matrix size mismatch");
        let mut acc = R::zero_elem();
        for (m, c) in &self.terms {
            let mut term = R::from_scalar(c);
            for (v, e) in m.pairs() {
                let x = &a.entries()[v];
                for _ in 0..e {
                    term = term.times(x);
                }
            }
            acc = acc.plus(&term);
        }
        if self.det_power != 0 {
            let d = a.det();
            let base = if self.det_power < 0 {
                d.try_inverse()?
            } else {
                d
            };
            for _ in 0..self.det_power.unsigned_abs() {
                acc = acc.times(&base);
            }
        }
        Some(acc)
    }

    /// Exact evaluation at an invertible Gaussian-rational matrix.
    pub fn evaluate_exact(&self, a: &SquareMat<Scalar>) -> Result<Scalar, GlPolyError> {
        if a.n() != self.n {
            return Err(GlPolyError::DimensionMismatch(self.n, a.n()));
        }
        if a.det().is_zero() {
            return Err(GlPolyError::Singular);
        }
        self.evaluate_ring(a).ok_or(GlPolyError::Singular)
    }

    /// Floating evaluation; fails when `|det A|` is below `det_floor`.
    pub fn evaluate(
        &self,
        a: &SquareMat<Complex64>,
        det_floor: f64,
    ) -> Result<Complex64, GlPolyError> {
        if a.n() != self.n {
            return Err(GlPolyError::DimensionMismatch(self.n, a.n()));
        }
        if a.det().norm() <= det_floor {
            return Err(GlPolyError::Singular);
        }
        self.evaluate_ring(a).ok_or(GlPolyError::Singular)
    }

    /// Equality test by exact evaluation of the difference at three random invertible points.
    /// Sound with probability one; never returns a false negative.
    pub fn probably_equal(&self, other: &Self, seed: u64) -> bool {
        if self.n != other.n {
            return false;
        }
        let diff = self.sub(other);
        if diff.is_zero() {
            return true;
        }
        (0..3).all(|k| {
            let mut rng = rng_for(seed, k);
            let a = random_invertible(self.n, &mut rng);
            diff.evaluate_ring(&a).is_some_and(|v| v.is_zero())
        })
    }

    fn entry_name(&self, v: usize) -> String {
        let (i, j) = (v / self.n + 1, v % self.n + 1);
        if self.n <= 9 {
            format!("a{i}{j}")
        } else {
            format!("a[{i},{j}]")
        }
    }

    fn format_poly(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.im.is_zero() && c.re < num_rational::BigRational::zero() {
                ('-', -c.clone())
            } else {
                ('+', c.clone())
            };
            if k > 0 {
                out.push_str(&format!(" {sign} "));
            } else if sign == '-' {
                out.push('-');
            }
            let mut factors = Vec::new();
            if !scalar::is_one(&mag) || m.is_one() {
                factors.push(scalar::format_scalar(&mag));
            }
            for (v, e) in m.pairs() {
                let name = self.entry_name(v);
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for RegularFunction {
    /// Formats in the parser grammar, so that `parse(f.to_string(), n)` returns `f`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.format_poly();
        if self.det_power == 0 || self.terms.is_empty() {
            write!(f, "{poly}")
        } else if self.terms.len() == 1 && self.terms.keys().next().is_some_and(Monomial::is_one) {
            let c = self.terms.values().next().expect("one term");
            if scalar::is_one(c) {
                write!(f, "det^{}", self.det_power)
            } else {
                write!(f, "{}*det^{}", scalar::format_scalar(c), self.det_power)
            }
        } else {
            write!(f, "det^{}*({poly})", self.det_power)
        }
    }
}

/// Ring structure so that matrices of regular functions have determinants.
impl Ring for RegularFunction {
    fn zero_elem() -> Self {
        Self::zero(0)
    }
    fn one_elem() -> Self {
        Self::one(0)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.with_dim_of(other).add(&other.with_dim_of(self))
    }
    fn minus(&self, other: &Self) -> Self {
        self.with_dim_of(other).sub(&other.with_dim_of(self))
    }
    fn times(&self, other: &Self) -> Self {
        self.with_dim_of(other).mul(&other.with_dim_of(self))
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_scalar(s: &Scalar) -> Self {
        Self::constant(0, s.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        self.powi(-1)
    }
}

impl RegularFunction {
    /// Constants built by the generic [`Ring`] constructors carry `n = 0`; adopt the other
    /// operand's dimension in that case.
    fn with_dim_of(&self, other: &Self) -> Self {
        if self.n == 0
            && other.n != 0
            && self.terms.keys().all(Monomial::is_one)
            && self.det_power == 0
        {
            let mut c = self.clone();
            c.n = other.n;
            c
        } else {
            self.clone()
        }
    }
}
