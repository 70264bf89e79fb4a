//! Fraction-free integer row reduction on `i128` with gcd normalization.
//!
//! Coordinates in this crate are small, so `i128` is ample; overflow is checked and treated as a
//! bug rather than silently wrapped.

use num_integer::Integer;

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("integer overflow in exact polytope arithmetic")
}

fn sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b)
        .expect("integer overflow in exact polytope arithmetic")
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).fold(0i128, |acc, (x, y)| {
        acc.checked_add(mul(*x, *y))
            .expect("integer overflow in exact polytope arithmetic")
    })
}

/// Divides by the gcd of the entries and makes the first nonzero entry positive.
pub fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Divides by the gcd of the entries, keeping signs.
pub fn reduce(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Reduced row echelon form up to row scaling. Zero rows are removed; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<i128>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        primitive(&mut rows[r]);
        let p = rows[r][col];
        for i in 0..rows.len() {
            if i == r || rows[i][col] == 0 {
                continue;
            }
            let f = rows[i][col];
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = sub(mul(*x, p), mul(*y, f));
            }
            reduce(&mut rows[i]);
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<i128>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Integer basis of `{x : rows * x = 0}`, each vector primitive.
pub fn nullspace(rows: &[Vec<i128>], ncols: usize) -> Vec<Vec<i128>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let lcm = pivots
        .iter()
        .enumerate()
        .fold(1i128, |l, (r, &c)| l.lcm(&m[r][c]));
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0i128; ncols];
        v[free] = lcm;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -mul(m[r][free], lcm / m[r][c]);
        }
        primitive(&mut v);
        basis.push(v);
    }
    basis
}
