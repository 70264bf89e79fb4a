mod common;

use common::{build, raw_terms, regular_function};
use num_rational::BigRational;
use proptest::prelude::*;
use samoeba::glpoly::{parse, Monomial, RegularFunction};
use samoeba::puiseux::{smith_sval, Exponent, PuiseuxMatrix, PuiseuxSeries};
use samoeba::scalar::{from_int, rational};
use samoeba::support::snewt;
use samoeba::tropical::{strop_hypersurface, strop_member, TropicalDescription, TropicalKind};

const TRIALS: usize = 3;

fn probe_points(n: usize) -> Vec<Vec<BigRational>> {
    let axis: Vec<BigRational> = (-6..=6).map(|k| rational(k, 2)).collect();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter()
                    .map(move |a| [p.clone(), vec![a.clone()]].concat())
            })
            .collect();
    }
    out
}

fn same_set(a: &TropicalDescription, b: &TropicalDescription) -> bool {
    probe_points(a.n)
        .iter()
        .all(|x| a.contains(x) == b.contains(x))
}

/// `f(A^-1)`, using `(A^-1)_ij = (-1)^(i+j) M_ji / det`.
fn compose_with_inverse(f: &RegularFunction) -> RegularFunction {
    let n = f.n();
    let inv_det = RegularFunction::det_pow(n, -1);
    let inverse_entry = |v: usize| {
        let (i, j) = (v / n, v % n);
        let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        RegularFunction::minor(n, &rows, &cols)
            .scale(&from_int(sign))
            .mul(&inv_det)
    };
    let det_factor = RegularFunction::det_pow(n, -f.det_power());
    let mut out = RegularFunction::zero(n);
    for (m, c) in f.terms() {
        let mut term = RegularFunction::constant(n, c.clone());
        for (v, e) in m.pairs() {
            term = term.mul(&inverse_entry(v).pow(e));
        }
        out = out.add(&term);
    }
    out.mul(&det_factor)
}

/// A point of `V(f)` over Puiseux series for `f = c0 + c1 a11 + c2 a12 + c3 a21 + c4 det`,
/// solving the linear equation for `a22`.
fn witness(c: [i64; 5], entries: [(i64, Exponent); 3]) -> Option<PuiseuxMatrix> {
    let s = |(k, e): (i64, Exponent)| PuiseuxSeries::monomial(from_int(k), e);
    let (a11, a12, a21) = (s(entries[0]), s(entries[1]), s(entries[2]));
    let k = |v: i64| PuiseuxSeries::constant(from_int(v));
    let rest = k(c[0])
        .add(&a11.mul(&k(c[1])))
        .add(&a12.mul(&k(c[2])))
        .add(&a21.mul(&k(c[3])))
        .sub(&a12.mul(&a21).mul(&k(c[4])));
    let a22 = rest.neg().mul(&a11.mul(&k(c[4])).inverse().ok()?);
    let a = PuiseuxMatrix::from_rows(vec![vec![a11, a12], vec![a21, a22]]).ok()?;
    (!a.det().is_exact_zero()).then_some(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn description_is_permutation_invariant(
        terms in raw_terms(2, 3, 2),
        k in -1i64..=1,
        transpose in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let f = build(2, k, &terms, |v| v);
        prop_assume!(!f.is_zero());
        let swap_rows = build(2, k, &terms, |v| (v + 2) % 4);
        let other = if transpose { build(2, k, &terms, |v| (v % 2) * 2 + v / 2) } else { swap_rows };
        let d = strop_hypersurface(&f, TRIALS, seed).unwrap();
        prop_assert_eq!(d, strop_hypersurface(&other, TRIALS, seed ^ 5).unwrap());
    }

    #[test]
    fn description_depends_only_on_the_polytope(
        terms in raw_terms(2, 4, 2),
        k in -1i64..=1,
        scales in prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 4),
        seed in any::<u64>(),
    ) {
        let f = build(2, k, &terms, |v| v);
        prop_assume!(!f.is_zero());
        let rescaled = RegularFunction::from_terms(
            2,
            k,
            f.terms().enumerate().map(|(i, (m, c))| (m.clone(), c * from_int(scales[i % scales.len()]))),
        );
        let (pf, pg) = (snewt(&f, TRIALS, seed).unwrap(), snewt(&rescaled, TRIALS, seed).unwrap());
        let (df, dg) = (strop_hypersurface(&f, TRIALS, seed).unwrap(), strop_hypersurface(&rescaled, TRIALS, seed).unwrap());
        if pf == pg {
            prop_assert_eq!(df, dg);
        }
    }

    #[test]
    fn inversion_reflects_the_description(f in regular_function(2, 3, 2), seed in any::<u64>()) {
        let d = strop_hypersurface(&f, TRIALS, seed).unwrap();
        let g = strop_hypersurface(&compose_with_inverse(&f), TRIALS, seed).unwrap();
        prop_assert!(same_set(&g, &d.negated()));
    }

    #[test]
    fn puiseux_witnesses_land_in_the_limit_set(
        c in prop::array::uniform5(prop_oneof![-3i64..=-1, 1i64..=3]),
        e in prop::array::uniform3((-3i64..=3, 1i64..=2)),
        k in prop::array::uniform3(prop_oneof![-2i64..=-1, 1i64..=2]),
    ) {
        let entries = [0, 1, 2].map(|i| (k[i], Exponent::new(e[i].0, e[i].1)));
        let Some(a) = witness(c, entries) else { return Ok(()) };
        let f = [
            RegularFunction::one(2),
            RegularFunction::entry(2, 0, 0),
            RegularFunction::entry(2, 0, 1),
            RegularFunction::entry(2, 1, 0),
            RegularFunction::det(2),
        ]
        .iter()
        .zip(c)
        .fold(RegularFunction::zero(2), |acc, (g, k)| acc.add(&g.scale(&from_int(k))));
        prop_assert!(f.evaluate_ring(a.entries()).unwrap().is_exact_zero());
        let sval = smith_sval(&a).unwrap();
        prop_assert!(sval.certified);
        let point: Vec<BigRational> = sval
            .factors
            .iter()
            .map(|v| rational(-*v.numer(), *v.denom()))
            .collect();
        let d = strop_hypersurface(&f, TRIALS, 0).unwrap();
        prop_assert!(strop_member(&d, &point), "{} with -sval {:?}", f, point);
    }
}

#[test]
fn special_kinds() {
    let kind = |text: &str| {
        strop_hypersurface(&parse(text, 2).unwrap(), TRIALS, 0)
            .unwrap()
            .kind
    };
    assert_eq!(kind("3*det^2"), TropicalKind::Empty);
    assert_eq!(kind("det^2 - 3*det + 1"), TropicalKind::Hyperplane);
    assert_eq!(kind("a12"), TropicalKind::FullSpace);
    assert_eq!(
        kind("1 + a11 + 10*det + a22*det"),
        TropicalKind::ComplementOfCones
    );
}

#[test]
fn det_minus_one_is_the_trace_zero_line() {
    let d = strop_hypersurface(&parse("det - 1", 2).unwrap(), TRIALS, 0).unwrap();
    for x in probe_points(2) {
        let on_line = &x[0] + &x[1] == rational(0, 1);
        assert_eq!(d.contains(&x), on_line);
    }
}

#[test]
fn mixed_example_removes_the_open_negative_quadrant() {
    let d =
        strop_hypersurface(&parse("1 + a11 + 10*det + a22*det", 2).unwrap(), TRIALS, 0).unwrap();
    for x in probe_points(2) {
        let zero = rational(0, 1);
        assert_eq!(d.contains(&x), !(x[0] < zero && x[1] < zero), "{x:?}");
    }
}

#[test]
fn monomials_in_entries_build_descriptions() {
    // A single entry vanishes somewhere on every torus orbit, so nothing is removed.
    let f = RegularFunction::from_terms(2, 0, [(Monomial::var(1), from_int(1))]);
    let d = strop_hypersurface(&f, TRIALS, 0).unwrap();
    assert!(d.removed.is_empty());
}

#[test]
fn hexagon_removes_the_negated_vertex_cones() {
    let hexagon = [[-1, -1], [1, -2], [-2, 1], [4, 0], [0, 4], [4, 4]].map(|v| v.to_vec());
    let p = samoeba::convex::LatticePolytope::hull(&hexagon).unwrap();
    assert_eq!(p.vertices().len(), 6);
    let ex = p.diag_extremes();
    assert_eq!((ex.n_minus, ex.n_plus), (Some(-1), Some(4)));
    let q = |v: [i64; 2]| vec![rational(v[0], 1), rational(v[1], 1)];
    let c_minus = ex.c_minus.unwrap();
    assert!(c_minus.contains(&q([3, 2])) && !c_minus.contains(&q([2, 1])));
    let c_plus = ex.c_plus.unwrap();
    assert!(c_plus.contains(&q([-1, -3])) && !c_plus.contains(&q([0, -1])));

    let d = TropicalDescription::from_polytope(&p);
    assert_eq!(d.kind, TropicalKind::ComplementOfCones);
    for x in probe_points(2) {
        let in_minus = c_minus.contains(&x.iter().map(|v| -v).collect::<Vec<_>>());
        let in_plus = c_plus.contains(&x.iter().map(|v| -v).collect::<Vec<_>>());
        assert_eq!(d.contains(&x), !(in_minus || in_plus), "{x:?}");
    }
}
