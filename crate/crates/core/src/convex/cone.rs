use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intlin::rank;
use super::ConvexError;

/// Polyhedral cone with both generator and inequality (`g . w >= 0`) descriptions.
///
/// When `open` is set the cone denotes its relative interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    n: usize,
    generators: Vec<Vec<i64>>,
    inequalities: Vec<Vec<i64>>,
    open: bool,
}

fn dot_i64(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

fn dot_f64(a: &[i64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| *x as f64 * y).sum()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl Cone {
    /// Builds a cone, checking that every generator satisfies every inequality.
    pub fn new(
        n: usize,
        generators: Vec<Vec<i64>>,
        inequalities: Vec<Vec<i64>>,
        open: bool,
    ) -> Result<Self, ConvexError> {
        if generators.iter().chain(&inequalities).any(|v| v.len() != n) {
            return Err(ConvexError::InconsistentCone);
        }
        for g in &generators {
            if inequalities.iter().any(|h| dot_i64(h, g) < 0) {
                return Err(ConvexError::InconsistentCone);
            }
        }
        Ok(Self {
            n,
            generators,
            inequalities,
            open,
        })
    }

    /// All of `R^n` (open or closed, which coincide as sets).
    pub fn whole_space(n: usize, open: bool) -> Self {
        let mut generators = Vec::new();
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            generators.push(e.clone());
            e[k] = -1;
            generators.push(e);
        }
        Self {
            n,
            generators,
            inequalities: Vec::new(),
            open,
        }
    }

    /// The half-space `{w : normal . w >= 0}`.
    pub fn half_space(normal: Vec<i64>, open: bool) -> Self {
        let n = normal.len();
        // Lineality: integer basis of normal^perp, plus the normal itself.
        let ns = super::intlin::nullspace(&[normal.iter().map(|&x| x as i128).collect()], n);
        let mut generators = vec![normal.clone()];
        for v in ns {
            let v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
            generators.push(v.iter().map(|x| -x).collect());
            generators.push(v);
        }
        Self {
            n,
            generators,
            inequalities: vec![normal],
            open,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn interior(&self) -> Self {
        Self {
            open: true,
            ..self.clone()
        }
    }

    pub fn closure(&self) -> Self {
        Self {
            open: false,
            ..self.clone()
        }
    }

    pub fn negated(&self) -> Self {
        let neg = |vs: &[Vec<i64>]| vs.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        Self {
            n: self.n,
            generators: neg(&self.generators),
            inequalities: neg(&self.inequalities),
            open: self.open,
        }
    }

    pub fn dimension(&self) -> usize {
        let rows: Vec<Vec<i128>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        rank(&rows, self.n)
    }

    /// Inequalities vanishing on every generator: they cut out the linear span.
    fn is_implicit_equality(&self, h: &[i64]) -> bool {
        self.generators.iter().all(|g| dot_i64(h, g) == 0)
    }

    /// Membership of a rational point (relative interior when open).
    pub fn contains(&self, w: &[BigRational]) -> bool {
        let value = |h: &[i64]| {
            h.iter().zip(w).fold(BigRational::zero(), |acc, (a, b)| {
                acc + b * BigInt::from(*a)
            })
        };
        self.inequalities.iter().all(|h| {
            let v = value(h);
            if !self.open {
                !v.is_negative()
            } else if self.is_implicit_equality(h) {
                v.is_zero()
            } else {
                v.is_positive()
            }
        })
    }

    pub fn contains_f64(&self, w: &[f64]) -> bool {
        self.inequalities.iter().all(|h| {
            let v = dot_f64(h, w);
            if self.open {
                if self.is_implicit_equality(h) {
                    v == 0.0
                } else {
                    v > 0.0
                }
            } else {
                v >= 0.0
            }
        })
    }

    /// Euclidean distance from `w` to the boundary when `w` lies in the interior of a
    /// full-dimensional cone, else 0.
    pub fn depth(&self, w: &[f64]) -> f64 {
        if self.dimension() < self.n {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for h in &self.inequalities {
            let hn: Vec<f64> = h.iter().map(|&x| x as f64).collect();
            let d = dot_f64(h, w) / norm(&hn);
            if d <= 0.0 {
                return 0.0;
            }
            best = best.min(d);
        }
        best
    }

    /// Euclidean distance from `w` to the closed cone, by projecting onto the spans of
    /// linearly independent generator subsets and keeping nonnegative combinations.
    pub fn distance(&self, w: &[f64]) -> f64 {
        if self.closure().contains_f64(w) {
            return 0.0;
        }
        let gens: Vec<Vec<f64>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&x| x as f64).collect())
            .collect();
        let m = gens.len();
        let mut best = norm(w);
        let max_k = m.min(self.n);
        for mask in 1usize..(1 << m) {
            let k = mask.count_ones() as usize;
            if k > max_k {
                continue;
            }
            let sel: Vec<&Vec<f64>> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &gens[i])
                .collect();
            let Some(coef) = least_squares(&sel, w) else {
                continue;
            };
            if coef.iter().any(|c| *c < -1e-12) {
                continue;
            }
            let mut proj = vec![0.0; self.n];
            for (c, g) in coef.iter().zip(&sel) {
                for (p, x) in proj.iter_mut().zip(g.iter()) {
                    *p += c * x;
                }
            }
            let d: Vec<f64> = w.iter().zip(&proj).map(|(a, b)| a - b).collect();
            best = best.min(norm(&d));
        }
        best
    }
}

/// Solves the normal equations for `min |sum c_i g_i - w|`; `None` if the `g_i` are dependent.
fn least_squares(gens: &[&Vec<f64>], w: &[f64]) -> Option<Vec<f64>> {
    let k = gens.len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = gens[i].iter().zip(gens[j].iter()).map(|(x, y)| x * y).sum();
        }
        a[i][k] = gens[i].iter().zip(w).map(|(x, y)| x * y).sum();
    }
    let scale: f64 = (0..k).map(|i| a[i][i]).fold(0.0, f64::max);
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale.max(1.0) {
            return None;
        }
        a.swap(col, piv);
        for r in 0..k {
            if r != col {
                let f = a[r][col] / a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r][col..=k].iter_mut().zip(&pivot_row[col..=k]) {
                    *x -= f * p;
                }
            }
        }
    }
    Some((0..k).map(|i| a[i][k] / a[i][i]).collect())
}
