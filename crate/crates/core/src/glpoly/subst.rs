use std::collections::HashMap;

use num_complex::Complex64;

use super::{GlPolyError, LaurentPoly, RegularFunction};
use crate::algebra::{Ring, SquareMat};
use crate::scalar::Scalar;

/// `z -> f(A diag(z) B^-1)` with `B^-1` supplied by the caller.
///
/// Returns `None` when `f` has a negative det power and `det(A) det(B^-1)` is not invertible.
pub fn substitute_ring<R: Ring>(
    f: &RegularFunction,
    a: &SquareMat<R>,
    b_inv: &SquareMat<R>,
) -> Option<LaurentPoly<R>> {
    let n = f.n();
    assert_eq!(a.n(), n, "matrix size mismatch");
    assert_eq!(b_inv.n(), n, "matrix size mismatch");

    // Entry (i,j) of A diag(z) B^-1 is sum_k A_ik (B^-1)_kj z_k.
    let entry = |v: usize| -> LaurentPoly<R> {
        let (i, j) = (v / n, v % n);
        let mut p = LaurentPoly::zero(n);
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            p = p.add(&LaurentPoly::monomial(
                e,
                a.get(i, k).times(b_inv.get(k, j)),
            ));
        }
        p
    };

    let mut powers: HashMap<usize, Vec<LaurentPoly<R>>> = HashMap::new();
    let mut result = LaurentPoly::zero(n);
    for (m, c) in f.terms() {
        let mut term = LaurentPoly::constant(n, R::from_scalar(c));
        for (v, e) in m.pairs() {
            let cache = powers
                .entry(v)
                .or_insert_with(|| vec![LaurentPoly::constant(n, R::one_elem())]);
            while cache.len() <= e as usize {
                let next = cache.last().expect("nonempty").mul(&entry(v));
                cache.push(next);
            }
            term = term.mul(&cache[e as usize]);
        }
        result = result.add(&term);
    }

    let k = f.det_power();
    if k != 0 && !result.is_zero() {
        let d = a.det().times(&b_inv.det());
        let base = if k < 0 { d.try_inverse()? } else { d };
        let mut factor = R::one_elem();
        for _ in 0..k.unsigned_abs() {
            factor = factor.times(&base);
        }
        result = result.scale(&factor).shift(&vec![k; n]);
    }
    Some(result)
}

/// Exact substitution with Gaussian-rational `A`, `B`.
pub fn substitute(
    f: &RegularFunction,
    a: &SquareMat<Scalar>,
    b: &SquareMat<Scalar>,
) -> Result<LaurentPoly<Scalar>, GlPolyError> {
    check_dims(f, a.n(), b.n())?;
    let b_inv = b.inverse().ok_or(GlPolyError::Singular)?;
    if a.inverse().is_none() {
        return Err(GlPolyError::Singular);
    }
    substitute_ring(f, a, &b_inv).ok_or(GlPolyError::Singular)
}

/// Floating-point substitution.
pub fn substitute_c64(
    f: &RegularFunction,
    a: &SquareMat<Complex64>,
    b: &SquareMat<Complex64>,
) -> Result<LaurentPoly<Complex64>, GlPolyError> {
    check_dims(f, a.n(), b.n())?;
    let b_inv = b.to_nalgebra().try_inverse().ok_or(GlPolyError::Singular)?;
    if a.det().norm() == 0.0 {
        return Err(GlPolyError::Singular);
    }
    substitute_ring(f, a, &SquareMat::from_nalgebra(&b_inv)).ok_or(GlPolyError::Singular)
}

fn check_dims(f: &RegularFunction, na: usize, nb: usize) -> Result<(), GlPolyError> {
    if na != f.n() {
        return Err(GlPolyError::DimensionMismatch(f.n(), na));
    }
    if nb != f.n() {
        return Err(GlPolyError::DimensionMismatch(f.n(), nb));
    }
    Ok(())
}
