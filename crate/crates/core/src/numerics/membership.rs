//! Amoeba membership by minimizing `|f(U diag(e^x) V^*)|` over `U(n) x U(n)`.
//!
//! Each restart runs a quasi-Newton descent on `|f|^2` in the Lie algebra coordinates
//! `U <- exp(i s H_U) U`, `V <- exp(i s H_V) V`, preconditioned by damped Gauss-Newton on the
//! two real residuals `Re f`, `Im f`, with an Armijo line search. The minimum over restarts is compared against thresholds relative to
//! the median `|f|` over random pairs at the same `x`.

use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eval::NumericFunction;
use super::haar::{haar_unitary_with, unitary_from_qr};
use super::slog::SLogPoint;
use super::{bi_unitary, CMatrix, NumericsError};
use crate::glpoly::RegularFunction;
use crate::rng::rng_for;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MembershipOptions {
    pub restarts: usize,
    pub scale_samples: usize,
    /// `|f| <= member_rel * scale` certifies membership.
    pub member_rel: f64,
    /// `|f| >= nonmember_rel * scale` after all restarts converge certifies non-membership.
    pub nonmember_rel: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        Self {
            restarts: 8,
            scale_samples: 64,
            member_rel: 1e-8,
            nonmember_rel: 1e-4,
            max_iter: 500,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub x: SLogPoint,
    pub verdict: Verdict,
    pub min_abs: f64,
    pub scale: f64,
    pub restarts_run: usize,
    pub all_converged: bool,
    /// Best `(U, V)` found.
    #[serde(skip)]
    pub argmin: Option<(CMatrix, CMatrix)>,
}

struct RestartResult {
    best: f64,
    u: CMatrix,
    v: CMatrix,
    converged: bool,
}

fn herm(k: &CMatrix) -> CMatrix {
    (k + k.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `a * x + b * y` for real `x`, `y`.
fn lin(a: &CMatrix, x: f64, b: &CMatrix, y: f64) -> CMatrix {
    a.map(|z| z * x) + b.map(|z| z * y)
}

fn inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Precomputed spectral decomposition of a Hermitian `H` so that `exp(i s H)` is cheap for
/// many step sizes.
struct ExpI {
    w: CMatrix,
    lambda: Vec<f64>,
}

impl ExpI {
    fn new(h: &CMatrix) -> Self {
        let eig = SymmetricEigen::new(h.clone());
        Self {
            w: eig.eigenvectors,
            lambda: eig.eigenvalues.iter().cloned().collect(),
        }
    }

    fn apply(&self, s: f64, m: &CMatrix) -> CMatrix {
        let mut wd = self.w.clone();
        for (j, l) in self.lambda.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, s * l);
            for i in 0..wd.nrows() {
                wd[(i, j)] *= phase;
            }
        }
        wd * self.w.adjoint() * m
    }
}

/// A tangent vector `(H_U, H_V)` of Hermitian generators.
#[derive(Clone)]
struct Tangent(CMatrix, CMatrix);

impl Tangent {
    fn dot(&self, o: &Tangent) -> f64 {
        inner(&self.0, &o.0) + inner(&self.1, &o.1)
    }

    fn axpy(&self, a: f64, o: &Tangent) -> Tangent {
        Tangent(lin(&self.0, 1.0, &o.0, a), lin(&self.1, 1.0, &o.1, a))
    }

    fn scaled(&self, a: f64) -> Tangent {
        Tangent(self.0.map(|z| z * a), self.1.map(|z| z * a))
    }
}

/// Secant pairs kept by the quasi-Newton correction.
const MEMORY: usize = 8;

/// Minimizes `phi = |f(U diag(d) V^*)|^2` from `(u, v)`.
///
/// The residual `(Re f, Im f)` has Jacobian rows `r1`, `r2`, so `2 J^T J` is the Gauss-Newton
/// Hessian of `phi`. Its Levenberg-Marquardt regularization is the initial inverse Hessian of an
/// L-BFGS recursion: with no history the step is the damped Gauss-Newton step, which converges
/// fast onto zeros of `f`, and the secant pairs add the curvature of `f` itself, which dominates
/// near minima where `|f|` stays large.
fn minimize(
    func: &NumericFunction,
    d: &[f64],
    mut u: CMatrix,
    mut v: CMatrix,
    target: f64,
    max_iter: usize,
) -> RestartResult {
    let i = Complex64::new(0.0, 1.0);
    let mut lambda = 1e-3;
    let mut history: Vec<f64> = Vec::new();
    let mut pairs: Vec<(Tangent, Tangent, f64)> = Vec::new();
    let mut last: Option<(Tangent, Tangent)> = None;
    let mut converged = false;
    let mut fval = func.value(&bi_unitary(&u, d, &v));
    for iter in 0..max_iter {
        if !fval.norm().is_finite() {
            break;
        }
        if fval.norm() <= target {
            converged = true;
            break;
        }
        if iter > 0 && iter % 50 == 0 {
            u = unitary_from_qr(u);
            v = unitary_from_qr(v);
        }
        let a = bi_unitary(&u, d, &v);
        let (f, g) = func.value_and_gradient(&a);
        fval = f;
        let phi = f.norm_sqr();
        let gt = g.transpose();
        let ku = (&a * &gt) * i;
        let kv = (&gt * &a) * (-i);
        let r1 = Tangent(herm(&ku), herm(&kv));
        let r2 = Tangent(herm(&(&ku * (-i))), herm(&(&kv * (-i))));
        let a11 = r1.dot(&r1);
        let a12 = r1.dot(&r2);
        let a22 = r2.dot(&r2);
        let trace = a11 + a22;
        if !(trace > 0.0) || !trace.is_finite() {
            converged = trace == 0.0;
            break;
        }
        // Gradient of phi; stationary when negligible against |f| |J|.
        let grad = r1.scaled(2.0 * f.re).axpy(2.0 * f.im, &r2);
        let gnorm = grad.dot(&grad).sqrt();
        if gnorm <= 2e-7 * f.norm() * trace.sqrt() {
            converged = true;
            break;
        }

        if let Some((step, old_grad)) = last.take() {
            let y = grad.axpy(-1.0, &old_grad);
            let sy = step.dot(&y);
            if sy > 1e-12 * step.dot(&step).sqrt() * y.dot(&y).sqrt() {
                if pairs.len() == MEMORY {
                    pairs.remove(0);
                }
                pairs.push((step, y, 1.0 / sy));
            }
        }

        // Two-loop recursion around H0 = (2 (J^T J + mu I))^-1, applied by Woodbury.
        let mu = lambda * trace;
        let h0 = |q: &Tangent| -> Tangent {
            let (j1, j2) = (r1.dot(q), r2.dot(q));
            let (m11, m22) = (a11 + mu, a22 + mu);
            let det = m11 * m22 - a12 * a12;
            let c1 = (m22 * j1 - a12 * j2) / det;
            let c2 = (m11 * j2 - a12 * j1) / det;
            q.axpy(-c1, &r1).axpy(-c2, &r2).scaled(0.5 / mu)
        };
        let mut q = grad.clone();
        let mut alphas = Vec::with_capacity(pairs.len());
        for (sk, yk, rho) in pairs.iter().rev() {
            let al = rho * sk.dot(&q);
            q = q.axpy(-al, yk);
            alphas.push(al);
        }
        let mut dir = h0(&q);
        for ((sk, yk, rho), al) in pairs.iter().zip(alphas.iter().rev()) {
            let be = rho * yk.dot(&dir);
            dir = dir.axpy(al - be, sk);
        }
        let mut h = dir.scaled(-1.0);
        let mut slope = grad.dot(&h);
        if !(slope < 0.0) {
            // Not a descent direction: drop the history and use the plain damped step.
            pairs.clear();
            h = h0(&grad).scaled(-1.0);
            slope = grad.dot(&h);
        }

        let (eu, ev) = (ExpI::new(&h.0), ExpI::new(&h.1));
        let trial = |s: f64| {
            let (un, vn) = (eu.apply(s, &u), ev.apply(s, &v));
            let fnew = func.value(&bi_unitary(&un, d, &vn));
            (un, vn, fnew)
        };
        let mut s = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let t = trial(s);
            if t.2.norm_sqr() <= phi + 1e-4 * s * slope {
                accepted = Some(t);
                break;
            }
            s *= 0.5;
        }
        let Some(mut best_trial) = accepted else {
            converged = true;
            break;
        };
        if s == 1.0 && pairs.is_empty() {
            // Without curvature information the Gauss-Newton step can be far too short when
            // the minimum of |f| is not zero. Extrapolate while the objective keeps falling,
            // then refine with a parabola through the last three points.
            let mut prev = (0.0, phi);
            let mut cur = (1.0, best_trial.2.norm_sqr());
            while cur.0 < 1e12 {
                let t = trial(2.0 * cur.0);
                let next = (2.0 * cur.0, t.2.norm_sqr());
                if next.1 >= cur.1 {
                    let (x0, x1, x2) = (prev.0, cur.0, next.0);
                    let (y0, y1, y2) = (prev.1, cur.1, next.1);
                    let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
                    let den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
                    if den != 0.0 {
                        let xv = x1 - 0.5 * num / den;
                        if xv > x0 && xv < x2 {
                            let tv = trial(xv);
                            if tv.2.norm_sqr() < cur.1 {
                                best_trial = tv;
                                s = xv;
                            }
                        }
                    }
                    break;
                }
                prev = cur;
                cur = next;
                best_trial = t;
                s = cur.0;
            }
        }
        let (un, vn, fnew) = best_trial;
        u = un;
        v = vn;
        fval = fnew;
        last = Some((h.scaled(s), grad));
        lambda = if s >= 1.0 {
            (lambda / 3.0).max(1e-12)
        } else {
            (lambda * 3.0).min(1e3)
        };
        history.push(fval.norm());
        if history.len() > 20 {
            let old = history[history.len() - 21];
            if old - fval.norm() <= 1e-10 * old {
                converged = true;
                break;
            }
        }
    }
    RestartResult {
        best: fval.norm(),
        u,
        v,
        converged,
    }
}

/// Decides whether `x` lies in the amoeba of `f` (the image of `{f = 0}` under `slog`).
pub fn membership(
    f: &RegularFunction,
    x: &[f64],
    opts: &MembershipOptions,
) -> Result<MembershipVerdict, NumericsError> {
    let n = f.n();
    if x.len() != n {
        return Err(NumericsError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(NumericsError::NonFinite);
    }
    let func = NumericFunction::new(f);
    let d: Vec<f64> = x.iter().map(|v| v.exp()).collect();
    let point = SLogPoint::new(x.to_vec());

    let mut rng = rng_for(opts.seed, 0);
    let mut samples: Vec<f64> = (0..opts.scale_samples.max(1))
        .map(|_| {
            let u = haar_unitary_with(n, &mut rng);
            let v = haar_unitary_with(n, &mut rng);
            func.value(&bi_unitary(&u, &d, &v)).norm()
        })
        .collect();
    if samples.iter().any(|s| !s.is_finite()) {
        return Err(NumericsError::Overflow);
    }
    samples.sort_by(f64::total_cmp);
    let scale = samples[samples.len() / 2];
    if scale == 0.0 {
        return Ok(MembershipVerdict {
            x: point,
            verdict: Verdict::Member,
            min_abs: 0.0,
            scale,
            restarts_run: 0,
            all_converged: true,
            argmin: None,
        });
    }
    let member_thr = opts.member_rel * scale;
    let nonmember_thr = opts.nonmember_rel * scale;

    let mut best: Option<RestartResult> = None;
    let mut all_converged = true;
    let mut run = 0;
    for r in 0..opts.restarts.max(1) {
        let mut rng = rng_for(opts.seed, 1 + r as u64);
        let u0 = haar_unitary_with(n, &mut rng);
        let v0 = haar_unitary_with(n, &mut rng);
        let res = minimize(&func, &d, u0, v0, member_thr, opts.max_iter);
        run += 1;
        all_converged &= res.converged;
        let done = res.best <= member_thr;
        if best.as_ref().is_none_or(|b| res.best < b.best) {
            best = Some(res);
        }
        if done {
            break;
        }
    }
    let best = best.expect("at least one restart");
    let verdict = if best.best <= member_thr {
        Verdict::Member
    } else if best.best >= nonmember_thr && all_converged {
        Verdict::NonMember
    } else {
        Verdict::Inconclusive
    };
    Ok(MembershipVerdict {
        x: point,
        verdict,
        min_abs: best.best,
        scale,
        restarts_run: run,
        all_converged,
        argmin: Some((best.u, best.v)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glpoly::parse;
    use crate::numerics::unitarity_defect;

    #[test]
    fn entry_minus_one_on_the_diagonal() {
        // |a11| ranges over [0, e^{max x}], so the amoeba is {max x >= 0}.
        let f = parse("a11 - 1", 2).unwrap();
        let opts = MembershipOptions {
            seed: 3,
            ..Default::default()
        };
        let m = membership(&f, &[-0.5, 0.5], &opts).unwrap();
        assert_eq!(m.verdict, Verdict::Member);
        let (u, v) = m.argmin.unwrap();
        assert!(unitarity_defect(&u) < 1e-9 && unitarity_defect(&v) < 1e-9);
        let nm = membership(&f, &[-2.0, -1.0], &opts).unwrap();
        assert_eq!(nm.verdict, Verdict::NonMember);
    }

    #[test]
    fn constants_are_never_members() {
        let f = parse("5", 2).unwrap();
        let m = membership(&f, &[0.0, 0.0], &MembershipOptions::default()).unwrap();
        assert_eq!(m.verdict, Verdict::NonMember);
    }
}
