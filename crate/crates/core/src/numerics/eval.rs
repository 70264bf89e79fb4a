use num_complex::Complex64;

use super::CMatrix;
use crate::glpoly::RegularFunction;
use crate::scalar;

/// Floating-point compilation of a [`RegularFunction`] with analytic gradients.
#[derive(Clone, Debug)]
pub struct NumericFunction {
    n: usize,
    det_power: i32,
    terms: Vec<(Complex64, Vec<(usize, u32)>)>,
}

impl NumericFunction {
    pub fn new(f: &RegularFunction) -> Self {
        Self {
            n: f.n(),
            det_power: i32::try_from(f.det_power()).expect("det power fits in 32 bits"),
            terms: f
                .terms()
                .map(|(m, c)| (scalar::to_c64(c), m.pairs().collect()))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn entry(&self, a: &CMatrix, v: usize) -> Complex64 {
        a[(v / self.n, v % self.n)]
    }

    fn poly(&self, a: &CMatrix) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, m)| {
                m.iter()
                    .fold(*c, |acc, &(v, e)| acc * self.entry(a, v).powu(e))
            })
            .sum()
    }

    pub fn value(&self, a: &CMatrix) -> Complex64 {
        let p = self.poly(a);
        if self.det_power == 0 {
            p
        } else {
            p * a.determinant().powi(self.det_power)
        }
    }

    /// Value and the matrix of partial derivatives `d f / d a_ij`.
    pub fn value_and_gradient(&self, a: &CMatrix) -> (Complex64, CMatrix) {
        let n = self.n;
        let mut p = Complex64::new(0.0, 0.0);
        let mut grad = CMatrix::zeros(n, n);
        for (c, m) in &self.terms {
            let vals: Vec<Complex64> = m.iter().map(|&(v, e)| self.entry(a, v).powu(e)).collect();
            p += vals.iter().fold(*c, |acc, x| acc * x);
            for (k, &(v, e)) in m.iter().enumerate() {
                let others = vals
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .fold(*c, |acc, (_, x)| acc * x);
                let d = others * self.entry(a, v).powu(e - 1) * e as f64;
                grad[(v / n, v % n)] += d;
            }
        }
        if self.det_power == 0 {
            return (p, grad);
        }
        // d(det^N p) = det^N (dp + N p A^{-T}), using d det = det A^{-T}.
        let det = a.determinant();
        let dn = det.powi(self.det_power);
        let inv_t = a
            .clone()
            .try_inverse()
            .map(|m| m.transpose())
            .unwrap_or_else(|| CMatrix::from_element(n, n, Complex64::new(f64::NAN, f64::NAN)));
        let g = (grad + inv_t * (p * self.det_power as f64)) * dn;
        (p * dn, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glpoly::parse;

    #[test]
    fn gradient_matches_complex_differences() {
        // Holomorphic, so a real-direction central difference recovers the complex derivative.
        let f = parse("(1+2i)*a11^2*a22 + 3/4*det^-2 - a12*a21", 2).unwrap();
        let nf = NumericFunction::new(&f);
        let a = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.7, 0.2),
                Complex64::new(-0.3, 0.5),
                Complex64::new(0.1, -0.4),
                Complex64::new(1.1, 0.3),
            ],
        );
        let (v, g) = nf.value_and_gradient(&a);
        assert!((v - nf.value(&a)).norm() < 1e-12);
        let h = 1e-6;
        for i in 0..2 {
            for j in 0..2 {
                let mut ap = a.clone();
                let mut am = a.clone();
                ap[(i, j)] += h;
                am[(i, j)] -= h;
                let fd = (nf.value(&ap) - nf.value(&am)) / (2.0 * h);
                assert!(
                    (fd - g[(i, j)]).norm() < 1e-6 * (1.0 + fd.norm()),
                    "({i},{j})"
                );
            }
        }
    }
}
