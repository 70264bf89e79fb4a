mod common;

use common::{build, invertible, nonzero_scalars, raw_terms, regular_function};
use proptest::prelude::*;
use samoeba::algebra::SquareMat;
use samoeba::glpoly::{parse, RegularFunction};
use samoeba::scalar::{from_int, powi};
use samoeba::support::{qm, snewt, support, Confidence};

const TRIALS: usize = 3;

fn points(f: &RegularFunction, seed: u64) -> Vec<Vec<i64>> {
    support(f, TRIALS, seed).unwrap().points
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn row_and_column_permutations_keep_the_support(
        terms in raw_terms(3, 3, 2),
        k in -1i64..=1,
        rows in Just([0usize, 1, 2]).prop_shuffle(),
        cols in Just([0usize, 1, 2]).prop_shuffle(),
        seed in any::<u64>(),
    ) {
        let f = build(3, k, &terms, |v| v);
        prop_assume!(!f.is_zero());
        let g = build(3, k, &terms, |v| rows[v / 3] * 3 + cols[v % 3]);
        let transposed = build(3, k, &terms, |v| (v % 3) * 3 + v / 3);
        let base = points(&f, seed);
        prop_assert_eq!(&points(&g, seed ^ 1), &base);
        prop_assert_eq!(&points(&transposed, seed ^ 2), &base);
    }

    #[test]
    fn coefficients_scale_under_the_torus(f in regular_function(2, 3, 2), seed in any::<u64>()) {
        let (a, b) = (invertible(2, seed, 0), invertible(2, seed, 1));
        let w = nonzero_scalars(2, seed);
        let dw = SquareMat::diagonal(&w);
        let aw = a.mul(&dw);
        let bw = b.mul(&dw);
        for m in points(&f, seed) {
            let base = qm(&f, &m, &a, &b).unwrap();
            let wm = w.iter().zip(&m).fold(from_int(1), |acc, (x, e)| {
                acc * powi(x, *e).unwrap()
            });
            prop_assert_eq!(qm(&f, &m, &aw, &b).unwrap(), &base * &wm);
            prop_assert_eq!(qm(&f, &m, &a, &bw).unwrap() * &wm, base);
        }
    }

    #[test]
    fn newton_polytope_of_a_product_is_the_minkowski_sum(
        f in regular_function(2, 3, 2),
        g in regular_function(2, 3, 2),
        seed in any::<u64>(),
    ) {
        let pf = snewt(&f, TRIALS, seed).unwrap();
        let pg = snewt(&g, TRIALS, seed).unwrap();
        prop_assert_eq!(snewt(&f.mul(&g), TRIALS, seed).unwrap(), pf.minkowski(&pg).unwrap());
    }

    #[test]
    fn determinant_factor_translates_the_support(f in regular_function(2, 3, 2), k in -2i64..=2, seed in any::<u64>()) {
        let shifted = f.mul(&RegularFunction::det_pow(2, k));
        let expected: Vec<Vec<i64>> = points(&f, seed).iter().map(|m| m.iter().map(|x| x + k).collect()).collect();
        prop_assert_eq!(points(&shifted, seed), expected);
    }

    #[test]
    fn support_is_independent_of_the_seed(f in regular_function(2, 4, 3), s1 in any::<u64>(), s2 in any::<u64>()) {
        prop_assert_eq!(points(&f, s1), points(&f, s2));
    }
}

#[test]
fn entry_support_is_the_standard_basis() {
    let s = support(&parse("a12", 3).unwrap(), 4, 0).unwrap();
    assert_eq!(s.points, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    assert_eq!(s.confidence, Confidence::Exact);
}

#[test]
fn worked_examples() {
    let diag = |k: i64| vec![k, k];
    assert_eq!(points(&parse("det^-2", 2).unwrap(), 0), vec![diag(-2)]);
    assert_eq!(
        points(&parse("det - 1", 2).unwrap(), 0),
        vec![diag(0), diag(1)]
    );
    let s = points(&parse("1 + a11 + 10*det + a22*det", 2).unwrap(), 0);
    assert_eq!(
        s,
        vec![
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![1, 1],
            vec![1, 2],
            vec![2, 1]
        ]
    );
}

#[test]
fn single_trial_is_reported_as_randomized() {
    let s = support(&parse("a11", 2).unwrap(), 1, 0).unwrap();
    assert_eq!(s.confidence, Confidence::Randomized { trials: 1 });
    assert!(support(&parse("a11", 2).unwrap(), 0, 0).is_err());
    assert!(snewt(&RegularFunction::zero(2), 2, 0).is_err());
}
