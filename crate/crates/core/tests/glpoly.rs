mod common;

use common::{invertible, nonzero_scalars, regular_function};
use num_traits::Zero;
use proptest::prelude::*;
use samoeba::algebra::{Ring, SquareMat};
use samoeba::glpoly::{parse, substitute, RegularFunction};
use samoeba::scalar::{from_int, powi, rational, Scalar};

fn torus_point(a: &SquareMat<Scalar>, z: &[Scalar], b: &SquareMat<Scalar>) -> SquareMat<Scalar> {
    a.mul(&SquareMat::diagonal(z))
        .mul(&b.inverse().expect("invertible"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_agrees_with_direct_evaluation(f in regular_function(2, 4, 3), seed in any::<u64>()) {
        let (a, b) = (invertible(2, seed, 0), invertible(2, seed, 1));
        let z = nonzero_scalars(2, seed);
        let p = substitute(&f, &a, &b).unwrap();
        let direct = f.evaluate_exact(&torus_point(&a, &z, &b)).unwrap();
        prop_assert_eq!(p.eval(&z).unwrap(), direct);
    }

    #[test]
    fn substitution_agrees_in_dimension_three(f in regular_function(3, 3, 2), seed in any::<u64>()) {
        let (a, b) = (invertible(3, seed, 0), invertible(3, seed, 1));
        let z = nonzero_scalars(3, seed);
        let p = substitute(&f, &a, &b).unwrap();
        prop_assert_eq!(p.eval(&z).unwrap(), f.evaluate_exact(&torus_point(&a, &z, &b)).unwrap());
    }

    #[test]
    fn substitution_is_multiplicative(
        f in regular_function(2, 3, 2),
        g in regular_function(2, 3, 2),
        seed in any::<u64>(),
    ) {
        let (a, b) = (invertible(2, seed, 0), invertible(2, seed, 1));
        let fg = substitute(&f.mul(&g), &a, &b).unwrap();
        let prod = substitute(&f, &a, &b).unwrap().mul(&substitute(&g, &a, &b).unwrap());
        prop_assert_eq!(fg, prod);
    }

    #[test]
    fn homogeneous_components_sum_and_scale(f in regular_function(2, 5, 3), seed in any::<u64>(), c in 2i64..5) {
        let comps = f.homogeneous_components();
        let total = comps.values().fold(RegularFunction::zero(2), |acc, g| acc.add(g));
        prop_assert!(total.probably_equal(&f, seed));

        let a = invertible(2, seed, 0);
        let ca = a.map(|x| x * from_int(c));
        for (deg, g) in &comps {
            let lhs = g.evaluate_exact(&ca).unwrap();
            let factor = powi(&from_int(c), *deg).unwrap();
            prop_assert_eq!(lhs, g.evaluate_exact(&a).unwrap() * factor);
        }
    }

    #[test]
    fn display_parses_back(f in regular_function(2, 4, 3), seed in any::<u64>()) {
        let g = parse(&f.to_string(), 2).unwrap();
        prop_assert!(g.probably_equal(&f, seed));
    }
}

#[test]
fn determinant_substitutes_to_a_single_monomial() {
    let (a, b) = (invertible(2, 7, 0), invertible(2, 7, 1));
    let p = substitute(&parse("det", 2).unwrap(), &a, &b).unwrap();
    let expected = a.det() * b.det().inv();
    assert_eq!(p.len(), 1);
    assert_eq!(p.coeff(&[1, 1]), Some(&expected));
}

#[test]
fn entry_substitutes_to_a_linear_form() {
    // a11 of A diag(z) B^-1 is sum_k A_1k (B^-1)_k1 z_k.
    let (a, b) = (invertible(2, 8, 0), invertible(2, 8, 1));
    let b_inv = b.inverse().unwrap();
    let p = substitute(&parse("a11", 2).unwrap(), &a, &b).unwrap();
    for k in 0..2 {
        let mut e = vec![0, 0];
        e[k] = 1;
        let c = a.get(0, k).times(b_inv.get(k, 0));
        assert_eq!(p.coeff(&e).cloned().unwrap_or_else(Scalar::zero), c);
    }
}

#[test]
fn identity_substitution_of_known_functions() {
    let id = SquareMat::<Scalar>::identity(2);
    let p = substitute(&parse("a11 + a22 + det^-1", 2).unwrap(), &id, &id).unwrap();
    assert_eq!(p.coeff(&[1, 0]), Some(&from_int(1)));
    assert_eq!(p.coeff(&[0, 1]), Some(&from_int(1)));
    assert_eq!(p.coeff(&[-1, -1]), Some(&from_int(1)));
    assert_eq!(p.len(), 3);
}

#[test]
fn homogeneous_components_of_a_mixed_function() {
    let f = parse("1 + a12 + 3*a11*a22 + det", 2).unwrap();
    let comps = f.homogeneous_components();
    assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
    assert!(comps[&2].probably_equal(&parse("3*a11*a22 + det", 2).unwrap(), 1));

    let g = parse("(a11 + 1)*det^-1", 2).unwrap();
    assert_eq!(
        g.homogeneous_components()
            .keys()
            .copied()
            .collect::<Vec<_>>(),
        vec![-2, -1]
    );
}

#[test]
fn rational_coefficients_evaluate_exactly() {
    let f = parse("1/2*a11 - 3/4*a22", 2).unwrap();
    let a = SquareMat::diagonal(&[from_int(2), from_int(4)]);
    assert_eq!(
        f.evaluate_exact(&a).unwrap(),
        Scalar::new(rational(-2, 1), rational(0, 1))
    );
}
