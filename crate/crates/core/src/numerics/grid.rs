use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::membership::{membership, MembershipOptions, Verdict};
use super::NumericsError;
use crate::glpoly::RegularFunction;
use crate::rng::derive_seed;
use crate::scalar::rational_from_f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSample {
    pub x: Vec<f64>,
    pub verdict: Verdict,
    pub min_abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmoebaGrid {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    pub resolution: usize,
    /// All `resolution^n` points in row-major order (last coordinate fastest).
    pub samples: Vec<GridSample>,
    pub members: usize,
    pub non_members: usize,
    pub inconclusive: usize,
}

/// Grid coordinates `lo + (hi - lo) k / (res - 1)`, exactly and as the nearest `f64`.
pub fn grid_axis(
    lo: f64,
    hi: f64,
    resolution: usize,
) -> Result<Vec<(BigRational, f64)>, NumericsError> {
    if resolution < 2 {
        return Err(NumericsError::Resolution(resolution));
    }
    let (lo, hi) = match (rational_from_f64(lo), rational_from_f64(hi)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(NumericsError::NonFinite),
    };
    let steps = BigRational::from_integer((resolution as i64 - 1).into());
    Ok((0..resolution)
        .map(|k| {
            let t = BigRational::from_integer((k as i64).into()) / &steps;
            let c = &lo + (&hi - &lo) * t;
            let f = c.to_f64().unwrap_or(f64::NAN);
            (c, f)
        })
        .collect())
}

/// Nondecreasing index tuples: one representative per `S_n` orbit of grid points.
pub(crate) fn sorted_tuples(n: usize, resolution: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, res: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..res {
            cur.push(k);
            rec(n, res, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, resolution, 0, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn linear_index(idx: &[usize], resolution: usize) -> usize {
    idx.iter().fold(0, |acc, k| acc * resolution + k)
}

/// Membership verdicts over a uniform grid on `[lo, hi]^n`.
///
/// The amoeba is `S_n`-invariant, so each orbit is decided once at its sorted representative
/// (seeded by that point's grid index) and copied to the other grid points.
pub fn amoeba_grid(
    f: &RegularFunction,
    lo: f64,
    hi: f64,
    resolution: usize,
    opts: &MembershipOptions,
) -> Result<AmoebaGrid, NumericsError> {
    let n = f.n();
    let axis = grid_axis(lo, hi, resolution)?;
    let reps = sorted_tuples(n, resolution);
    let decided: Vec<(usize, GridSample)> = reps
        .par_iter()
        .map(|idx| {
            let x: Vec<f64> = idx.iter().map(|k| axis[*k].1).collect();
            let key = linear_index(idx, resolution);
            let o = MembershipOptions {
                seed: derive_seed(opts.seed, key as u64),
                ..opts.clone()
            };
            membership(f, &x, &o).map(|m| {
                (
                    key,
                    GridSample {
                        x,
                        verdict: m.verdict,
                        min_abs: m.min_abs,
                    },
                )
            })
        })
        .collect::<Result<_, _>>()?;
    let by_key: HashMap<usize, &GridSample> = decided.iter().map(|(k, s)| (*k, s)).collect();

    let total = resolution.pow(n as u32);
    let mut samples = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for lin in 0..total {
        let mut rem = lin;
        for slot in idx.iter_mut().rev() {
            *slot = rem % resolution;
            rem /= resolution;
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        let rep = by_key[&linear_index(&sorted, resolution)];
        samples.push(GridSample {
            x: idx.iter().map(|k| axis[*k].1).collect(),
            verdict: rep.verdict,
            min_abs: rep.min_abs,
        });
    }
    let count = |v: Verdict| samples.iter().filter(|s| s.verdict == v).count();
    Ok(AmoebaGrid {
        n,
        lo,
        hi,
        resolution,
        members: count(Verdict::Member),
        non_members: count(Verdict::NonMember),
        inconclusive: count(Verdict::Inconclusive),
        samples,
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Member => "member",
        Verdict::NonMember => "non-member",
        Verdict::Inconclusive => "inconclusive",
    }
}

impl AmoebaGrid {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for k in 1..=self.n {
            let _ = write!(out, "x{k},");
        }
        out.push_str("verdict,min_abs\n");
        for s in &self.samples {
            for v in &s.x {
                let _ = write!(out, "{v},");
            }
            let _ = writeln!(out, "{},{}", verdict_name(s.verdict), s.min_abs);
        }
        out
    }

    /// Plot of a two-dimensional grid: members dark, non-members light, inconclusive red.
    /// Returns `None` unless `n == 2`.
    pub fn to_svg(&self) -> Option<String> {
        if self.n != 2 {
            return None;
        }
        let cell = 8usize;
        let size = cell * self.resolution;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
        );
        for (lin, s) in self.samples.iter().enumerate() {
            let (i, j) = (lin / self.resolution, lin % self.resolution);
            // x1 to the right, x2 upward.
            let (px, py) = (i * cell, (self.resolution - 1 - j) * cell);
            let fill = match s.verdict {
                Verdict::Member => "#1f3b73",
                Verdict::NonMember => "#e8eef7",
                Verdict::Inconclusive => "#d62728",
            };
            let _ = writeln!(
                out,
                "<rect x=\"{px}\" y=\"{py}\" width=\"{cell}\" height=\"{cell}\" fill=\"{fill}\"/>"
            );
        }
        out.push_str("</svg>\n");
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_and_axis() {
        assert_eq!(sorted_tuples(2, 3).len(), 6);
        assert_eq!(sorted_tuples(3, 4).len(), 20);
        let axis = grid_axis(-1.0, 1.0, 5).unwrap();
        let xs: Vec<f64> = axis.iter().map(|a| a.1).collect();
        assert_eq!(xs, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(grid_axis(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn grid_is_symmetric() {
        let f = crate::glpoly::parse("a11 - 1", 2).unwrap();
        let opts = MembershipOptions {
            restarts: 3,
            ..Default::default()
        };
        let g = amoeba_grid(&f, -1.0, 1.0, 5, &opts).unwrap();
        assert_eq!(g.samples.len(), 25);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(g.samples[i * 5 + j].verdict, g.samples[j * 5 + i].verdict);
            }
        }
        assert!(g.to_svg().unwrap().starts_with("<svg"));
        assert_eq!(g.to_csv().lines().count(), 26);
    }
}
