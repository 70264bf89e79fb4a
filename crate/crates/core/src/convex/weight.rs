//! Weight polytopes `C(lambda)` (hulls of permutation orbits) and the dominance order.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ConvexError, LatticePolytope};

/// Distinct permutations of `v`.
pub fn permutation_orbit(v: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = v.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    // Lexicographic successor enumeration visits each distinct arrangement once.
    loop {
        let n = cur.len();
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// `C(lambda)`: hull of the permutation orbit of `lambda`.
pub fn weight_polytope(lambda: &[i64]) -> Result<LatticePolytope, ConvexError> {
    LatticePolytope::hull(&permutation_orbit(lambda))
}

/// Whether `y` lies in `C(lambda)`, via sorted partial sums: the `k` largest coordinates of `y`
/// sum to at most the `k` largest of `lambda`, with equality of the totals.
pub fn majorization_contains(lambda: &[i64], y: &[BigRational]) -> bool {
    if lambda.len() != y.len() {
        return false;
    }
    let mut l: Vec<BigRational> = lambda
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    let mut ys = y.to_vec();
    l.sort_by(|a, b| b.cmp(a));
    ys.sort_by(|a, b| b.cmp(a));
    let mut sl = BigRational::from_integer(BigInt::from(0));
    let mut sy = sl.clone();
    for (a, b) in l.iter().zip(&ys) {
        sl += a;
        sy += b;
        if sy > sl {
            return false;
        }
    }
    sy == sl
}

/// `y <= x` in the dominance order, i.e. `C(y)` is contained in `C(x)`.
///
/// `C(x)` is permutation-stable, so it suffices to test every vertex of `C(y)`.
pub fn dominates(x: &[i64], y: &[i64]) -> bool {
    permutation_orbit(y).iter().all(|v| {
        let v: Vec<BigRational> = v
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        majorization_contains(x, &v)
    })
}

/// `lambda` is weakly increasing.
pub fn is_dominant(lambda: &[i64]) -> bool {
    lambda.windows(2).all(|w| w[0] <= w[1])
}
