//! Minimal ring abstraction and small dense square matrices over it.
//!
//! Substitution into regular functions is shared between exact scalars, floating complex
//! numbers and truncated Puiseux series, so it is written once against [`Ring`].

use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

pub trait Ring: Clone + Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    /// True only for an element known to be exactly zero.
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn try_inverse(&self) -> Option<Self>;
}

impl Ring for Scalar {
    fn zero_elem() -> Self {
        Scalar::zero()
    }
    fn one_elem() -> Self {
        Scalar::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self.clone()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl Ring for Complex64 {
    fn zero_elem() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_elem() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero_elem(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_scalar(s: &Scalar) -> Self {
        scalar::to_c64(s)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero_elem() {
            None
        } else {
            Some(self.inv())
        }
    }
}

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMat<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> SquareMat<R> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds from rows; returns `None` unless the rows form a square array.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                R::one_elem()
            } else {
                R::zero_elem()
            }
        })
    }

    pub fn diagonal(d: &[R]) -> Self {
        Self::from_fn(
            d.len(),
            |i, j| if i == j { d[i].clone() } else { R::zero_elem() },
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SquareMat<S> {
        SquareMat {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = R::zero_elem();
            for k in 0..n {
                acc = acc.plus(&self.get(i, k).times(other.get(k, j)));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Division-free determinant by dynamic programming over column subsets, `O(n 2^n)`.
    pub fn det(&self) -> R {
        let n = self.n;
        if n == 0 {
            return R::one_elem();
        }
        let full = 1usize << n;
        let mut dp: Vec<Option<R>> = vec![None; full];
        dp[0] = Some(R::one_elem());
        for mask in 0..full {
            let Some(cur) = dp[mask].take() else { continue };
            let row = mask.count_ones() as usize;
            if row == n {
                dp[mask] = Some(cur);
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let a = self.get(row, col);
                if a.is_zero_elem() {
                    continue;
                }
                // Sign of placing `col` after the already chosen columns.
                let above = (mask >> (col + 1)).count_ones();
                let mut term = cur.times(a);
                if above % 2 == 1 {
                    term = term.negate();
                }
                let next = mask | (1 << col);
                dp[next] = Some(match dp[next].take() {
                    Some(v) => v.plus(&term),
                    None => term,
                });
            }
            dp[mask] = Some(cur);
        }
        dp[full - 1].take().unwrap_or_else(R::zero_elem)
    }

    /// Gauss-Jordan inverse. `key` ranks candidate pivots (smaller is preferred, `None` means
    /// unusable); returns `None` when some column has no usable pivot.
    pub fn inverse_with<K: PartialOrd>(&self, key: impl Fn(&R) -> Option<K>) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let mut best: Option<(usize, K)> = None;
            for row in col..n {
                if let Some(k) = key(a.get(row, col)) {
                    if best.as_ref().is_none_or(|(_, bk)| k < *bk) {
                        best = Some((row, k));
                    }
                }
            }
            let (prow, _) = best?;
            if prow != col {
                for j in 0..n {
                    a.data.swap(prow * n + j, col * n + j);
                    inv.data.swap(prow * n + j, col * n + j);
                }
            }
            let pinv = a.get(col, col).try_inverse()?;
            for j in 0..n {
                let v = a.get(col, j).times(&pinv);
                a.set(col, j, v);
                let w = inv.get(col, j).times(&pinv);
                inv.set(col, j, w);
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = a.get(row, col).clone();
                if factor.is_zero_elem() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(row, j).minus(&factor.times(a.get(col, j)));
                    a.set(row, j, v);
                    let w = inv.get(row, j).minus(&factor.times(inv.get(col, j)));
                    inv.set(row, j, w);
                }
            }
        }
        Some(inv)
    }
}

impl SquareMat<Scalar> {
    pub fn inverse(&self) -> Option<Self> {
        self.inverse_with(|x| if x.is_zero() { None } else { Some(0u8) })
    }

    pub fn to_c64(&self) -> SquareMat<Complex64> {
        self.map(scalar::to_c64)
    }
}

impl SquareMat<Complex64> {
    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| *self.get(i, j))
    }

    pub fn from_nalgebra(m: &nalgebra::DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "matrix must be square");
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }
}
