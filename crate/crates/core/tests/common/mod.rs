//! Shared generators for the integration suites.

#![allow(dead_code)]

use proptest::prelude::*;
use samoeba::algebra::SquareMat;
use samoeba::glpoly::{Monomial, RegularFunction};
use samoeba::rng::{random_invertible, random_scalar, rng_for};
use samoeba::scalar::{from_int, Scalar};

/// Terms as `(exponents per entry, integer coefficient)`; entries are row-major indices.
pub type RawTerms = Vec<(Vec<(usize, u32)>, i64)>;

pub fn raw_terms(n: usize, max_terms: usize, max_degree: u32) -> impl Strategy<Value = RawTerms> {
    let monomial = prop::collection::vec((0..n * n, 1..=max_degree), 0..=max_degree as usize);
    let coeff = prop_oneof![-5i64..=-1, 1i64..=5];
    prop::collection::vec((monomial, coeff), 1..=max_terms)
}

pub fn build(
    n: usize,
    det_power: i64,
    terms: &RawTerms,
    relabel: impl Fn(usize) -> usize,
) -> RegularFunction {
    RegularFunction::from_terms(
        n,
        det_power,
        terms.iter().map(|(m, c)| {
            (
                Monomial::from_pairs(m.iter().map(|&(v, e)| (relabel(v), e))),
                from_int(*c),
            )
        }),
    )
}

/// A nonzero regular function on `GL_n` with small integer coefficients.
pub fn regular_function(
    n: usize,
    max_terms: usize,
    max_degree: u32,
) -> impl Strategy<Value = RegularFunction> {
    (raw_terms(n, max_terms, max_degree), -1i64..=1)
        .prop_map(move |(t, k)| build(n, k, &t, |v| v))
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// Seeded random invertible Gaussian-rational matrix.
pub fn invertible(n: usize, seed: u64, index: u64) -> SquareMat<Scalar> {
    random_invertible(n, &mut rng_for(seed, index))
}

/// Seeded random nonzero Gaussian rationals.
pub fn nonzero_scalars(n: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = rng_for(seed, 99);
    (0..n)
        .map(|_| loop {
            let s = random_scalar(&mut rng);
            if s != from_int(0) {
                break s;
            }
        })
        .collect()
}
