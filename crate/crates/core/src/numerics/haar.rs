use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::CMatrix;
use crate::rng::rng_for;

/// Haar-distributed unitary from the QR factorization of a complex Ginibre matrix, with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    unitary_from_qr(z)
}

pub fn haar_unitary(n: usize, seed: u64) -> CMatrix {
    haar_unitary_with(n, &mut rng_for(seed, 0))
}

/// `Q * diag(r_ii / |r_ii|)`; also used to re-unitarize drifting iterates.
pub(crate) fn unitary_from_qr(m: CMatrix) -> CMatrix {
    let n = m.nrows();
    let qr = m.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `||U^* U - I||` in the Frobenius norm.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    (u.adjoint() * u - CMatrix::identity(n, n)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_and_reproducible() {
        for n in 1..=4 {
            let u = haar_unitary(n, 42);
            assert!(unitarity_defect(&u) < 1e-12);
            assert_eq!(u, haar_unitary(n, 42));
        }
        assert_ne!(haar_unitary(3, 1), haar_unitary(3, 2));
    }
}
