use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;
use samoeba::convex::{
    dominates, majorization_contains, permutation_orbit, weight_polytope, Face, LatticePolytope,
};
use samoeba::scalar::rational;

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; strictly convex vertices only.
fn chain_hull(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let p: Vec<Vec<i64>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if p.len() <= 2 {
        return p;
    }
    let half = |pts: &mut dyn Iterator<Item = &Vec<i64>>| {
        let mut h: Vec<Vec<i64>> = Vec::new();
        for q in pts {
            while h.len() >= 2 && cross(&h[h.len() - 2], &h[h.len() - 1], q) <= 0 {
                h.pop();
            }
            h.push(q.clone());
        }
        h.pop();
        h
    };
    let mut hull = half(&mut p.iter());
    hull.extend(half(&mut p.iter().rev()));
    hull
}

fn in_chain_hull(hull: &[Vec<i64>], x: &[i64]) -> bool {
    match hull.len() {
        1 => hull[0] == x,
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            cross(a, b, x) == 0 && (0..2).all(|k| a[k].min(b[k]) <= x[k] && x[k] <= a[k].max(b[k]))
        }
        _ => (0..hull.len()).all(|i| cross(&hull[i], &hull[(i + 1) % hull.len()], x) >= 0),
    }
}

fn points(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), 1..=max)
}

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|x| rational(*x, 1)).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn planar_hull_matches_monotone_chain(pts in points(2, 12)) {
        let p = LatticePolytope::hull(&pts).unwrap();
        let oracle = chain_hull(&pts);
        let got: BTreeSet<Vec<i64>> = p.vertices().iter().cloned().collect();
        prop_assert_eq!(got, oracle.iter().cloned().collect::<BTreeSet<_>>());
        for x in -5..=5 {
            for y in -5..=5 {
                prop_assert_eq!(p.contains(&[x, y]), in_chain_hull(&oracle, &[x, y]), "point ({}, {})", x, y);
            }
        }
    }

    #[test]
    fn minimizing_face_owns_the_direction(pts in points(3, 10), w in prop::collection::vec(-3i64..=3, 3)) {
        let p = LatticePolytope::hull(&pts).unwrap();
        let best = p.vertices().iter().map(|v| dot(v, &w)).min().unwrap();
        let minimizers: Vec<Vec<i64>> = p.vertices().iter().filter(|v| dot(v, &w) == best).cloned().collect();
        let face = Face { dim: samoeba::convex::affine_dim(&minimizers), vertices: minimizers.clone() };
        let wq = q(&w);
        let cone = p.normal_cone(&face).unwrap();
        prop_assert!(cone.contains(&wq));
        prop_assert!(cone.interior().contains(&wq));
        for v in p.vertices() {
            let vc = p.normal_cone(&Face { vertices: vec![v.clone()], dim: 0 }).unwrap();
            prop_assert_eq!(vc.contains(&wq), minimizers.contains(v));
            prop_assert_eq!(vc.interior().contains(&wq), minimizers == vec![v.clone()]);
        }
    }

    #[test]
    fn minkowski_adds_support_functions(a in points(3, 6), b in points(3, 6), w in prop::collection::vec(-3i64..=3, 3)) {
        let (pa, pb) = (LatticePolytope::hull(&a).unwrap(), LatticePolytope::hull(&b).unwrap());
        let sum = pa.minkowski(&pb).unwrap();
        let h = |p: &LatticePolytope| p.vertices().iter().map(|v| dot(v, &w)).min().unwrap();
        prop_assert_eq!(h(&sum), h(&pa) + h(&pb));
        for x in pa.vertices() {
            for y in pb.vertices() {
                let s: Vec<i64> = x.iter().zip(y).map(|(u, v)| u + v).collect();
                prop_assert!(sum.contains(&s));
            }
        }
        let doubled = pa.scaled(2).unwrap();
        prop_assert_eq!(doubled, pa.minkowski(&pa).unwrap());
    }

    #[test]
    fn diagonal_extremes_match_a_scan(pts in points(2, 8)) {
        let p = LatticePolytope::hull(&pts).unwrap();
        let diag: Vec<i64> = (-5..=5).filter(|k| p.contains(&[*k, *k])).collect();
        let ex = p.diag_extremes();
        prop_assert_eq!(ex.n_minus, diag.first().copied());
        prop_assert_eq!(ex.n_plus, diag.last().copied());
        if let Some(k) = ex.n_minus {
            prop_assert_eq!(ex.c_minus.is_some(), p.is_vertex(&[k, k]));
        }
        if let Some(k) = ex.n_plus {
            prop_assert_eq!(ex.c_plus.is_some(), p.is_vertex(&[k, k]));
        }
    }

    #[test]
    fn dominance_is_a_partial_order_on_orbits(
        x in prop::collection::vec(-2i64..=2, 3),
        y in prop::collection::vec(-2i64..=2, 3),
        z in prop::collection::vec(-2i64..=2, 3),
    ) {
        let sorted = |v: &[i64]| { let mut s = v.to_vec(); s.sort(); s };
        prop_assert!(dominates(&x, &x));
        if dominates(&x, &y) && dominates(&y, &x) {
            prop_assert_eq!(sorted(&x), sorted(&y));
        }
        if dominates(&x, &y) && dominates(&y, &z) {
            prop_assert!(dominates(&x, &z));
        }
        let cx = weight_polytope(&x).unwrap();
        let hull_oracle = permutation_orbit(&y).iter().all(|v| cx.contains(v));
        prop_assert_eq!(dominates(&x, &y), hull_oracle);
    }

    #[test]
    fn weight_polytope_is_linear_in_the_weight(
        x in prop::collection::vec(-2i64..=2, 3),
        y in prop::collection::vec(-2i64..=2, 3),
        k in 1i64..=3,
    ) {
        let (mut x, mut y) = (x, y);
        x.sort();
        y.sort();
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let cx = weight_polytope(&x).unwrap();
        let cy = weight_polytope(&y).unwrap();
        prop_assert_eq!(weight_polytope(&sum).unwrap(), cx.minkowski(&cy).unwrap());
        let kx: Vec<i64> = x.iter().map(|a| k * a).collect();
        prop_assert_eq!(weight_polytope(&kx).unwrap(), cx.scaled(k).unwrap());
    }

    #[test]
    fn majorization_matches_rational_hull_membership(
        lambda in prop::collection::vec(-3i64..=3, 3),
        num in prop::collection::vec(-9i64..=9, 3),
        den in 1i64..=3,
    ) {
        let y: Vec<BigRational> = num.iter().map(|v| rational(*v, den)).collect();
        let c = weight_polytope(&lambda).unwrap();
        prop_assert_eq!(majorization_contains(&lambda, &y), c.contains_rational(&y));
    }
}

#[test]
fn hexagon_normal_cones() {
    // C(0, 1, 2) is a hexagon in the plane x1 + x2 + x3 = 3.
    let p = weight_polytope(&[0, 1, 2]).unwrap();
    assert_eq!(p.vertices().len(), 6);
    assert_eq!(p.dim(), 2);
    let v = Face {
        vertices: vec![vec![0, 1, 2]],
        dim: 0,
    };
    let cone = p.normal_cone(&v).unwrap().interior();
    // (0,1,2) minimizes w exactly when w is strictly decreasing, up to the line R(1,1,1).
    assert!(cone.contains(&q(&[1, 0, -1])));
    assert!(cone.contains(&q(&[9, 5, 4])));
    assert!(!cone.contains(&q(&[1, 0, 0])));
    assert!(!cone.contains(&q(&[-1, 0, 1])));
}

#[test]
fn segment_diagonal_extremes() {
    let p = LatticePolytope::hull(&[vec![0, 0], vec![1, 1], vec![2, 1]]).unwrap();
    let ex = p.diag_extremes();
    assert_eq!((ex.n_minus, ex.n_plus), (Some(0), Some(1)));
    assert!(ex.c_minus.is_some() && ex.c_plus.is_some());
}
