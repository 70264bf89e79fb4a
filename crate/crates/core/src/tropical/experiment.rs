//! Scaling experiment: membership verdicts on a grid of unscaled points `x`, compared with the
//! description at the scaled points `rho * x`.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{TropicalDescription, TropicalError, TropicalKind};
use crate::glpoly::RegularFunction;
use crate::numerics::{amoeba_grid, grid_axis, AmoebaGrid, MembershipOptions, Verdict};
use crate::scalar::rational_from_f64;
use crate::support::snewt;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitOptions {
    /// Positive and strictly decreasing.
    pub rhos: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
    pub resolution: usize,
    /// Margin in scaled coordinates.
    pub epsilon: f64,
    pub support_trials: usize,
    pub membership: MembershipOptions,
}

impl Default for LimitOptions {
    fn default() -> Self {
        Self {
            rhos: vec![0.2, 0.1, 0.05],
            lo: -8.0,
            hi: 8.0,
            resolution: 41,
            epsilon: 0.2,
            support_trials: 4,
            membership: MembershipOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoReport {
    pub rho: f64,
    /// Members whose scaled point lies deeper than `epsilon` inside a removed cone.
    pub violations: usize,
    /// The part of `violations` inside `-C^-`.
    pub violations_minus: usize,
    /// The part of `violations` inside `-C^+`.
    pub violations_plus: usize,
    /// Largest depth of a scaled member inside a removed cone (0 if none).
    pub max_margin: f64,
    /// Grid points whose scaled point lies more than `epsilon` inside the description.
    pub coverage_points: usize,
    /// Those of `coverage_points` with no member within `epsilon / rho` (unscaled).
    pub coverage_misses: usize,
    /// Decided grid points where the verdict differs from exact membership of `rho * x`.
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub description: TropicalDescription,
    pub epsilon: f64,
    pub members: usize,
    pub non_members: usize,
    /// Undecided grid points; never counted as violations or as members.
    pub inconclusive: usize,
    pub per_rho: Vec<RhoReport>,
    pub grid: AmoebaGrid,
}

fn check_options(o: &LimitOptions) -> Result<(), TropicalError> {
    if o.rhos.is_empty() || o.rhos.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(TropicalError::InvalidParameter(
            "rho values must be positive".into(),
        ));
    }
    if o.rhos.windows(2).any(|w| w[1] >= w[0]) {
        return Err(TropicalError::InvalidParameter(
            "rho values must be strictly decreasing".into(),
        ));
    }
    if !(o.epsilon > 0.0) || !(o.lo < o.hi) {
        return Err(TropicalError::InvalidParameter(
            "need epsilon > 0 and lo < hi".into(),
        ));
    }
    Ok(())
}

fn rho_report(
    d: &TropicalDescription,
    grid: &AmoebaGrid,
    exact: &[Vec<BigRational>],
    rho: f64,
    eps: f64,
) -> RhoReport {
    let rho_q = rational_from_f64(rho).expect("finite rho");
    let scaled = |x: &[f64]| -> Vec<f64> { x.iter().map(|v| rho * v).collect() };
    let members: Vec<&[f64]> = grid
        .samples
        .iter()
        .filter(|s| s.verdict == Verdict::Member)
        .map(|s| s.x.as_slice())
        .collect();

    let mut r = RhoReport {
        rho,
        violations: 0,
        violations_minus: 0,
        violations_plus: 0,
        max_margin: 0.0,
        coverage_points: 0,
        coverage_misses: 0,
        mismatches: 0,
    };
    for (s, xq) in grid.samples.iter().zip(exact) {
        let y = scaled(&s.x);
        if s.verdict != Verdict::Inconclusive {
            let yq: Vec<BigRational> = xq.iter().map(|v| v * &rho_q).collect();
            if (s.verdict == Verdict::Member) != d.contains(&yq) {
                r.mismatches += 1;
            }
        }
        if s.verdict == Verdict::Member {
            let (depth, cone) = d.removal_depth(&y);
            r.max_margin = r.max_margin.max(depth);
            if depth > eps {
                r.violations += 1;
                match cone.and_then(|k| d.removed_side[k]) {
                    Some(false) => r.violations_minus += 1,
                    Some(true) => r.violations_plus += 1,
                    None => {}
                }
            }
        }
        let inside = match d.kind {
            TropicalKind::Hyperplane => {
                let yq: Vec<BigRational> = xq.iter().map(|v| v * &rho_q).collect();
                d.contains(&yq)
            }
            _ => d.interior_margin(&y) > eps,
        };
        if inside {
            r.coverage_points += 1;
            let radius = eps / rho;
            let covered = members.iter().any(|m| {
                m.iter()
                    .zip(&s.x)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
                    <= radius
            });
            if !covered {
                r.coverage_misses += 1;
            }
        }
    }
    r
}

/// Runs membership once on the unscaled grid and scores it against the description for every
/// `rho`.
pub fn limit_experiment(
    f: &RegularFunction,
    opts: &LimitOptions,
) -> Result<LimitReport, TropicalError> {
    check_options(opts)?;
    let polytope = snewt(f, opts.support_trials, opts.membership.seed)?;
    let description = TropicalDescription::from_polytope(&polytope);
    let grid = amoeba_grid(f, opts.lo, opts.hi, opts.resolution, &opts.membership)?;
    let axis = grid_axis(opts.lo, opts.hi, opts.resolution)?;
    let n = f.n();
    let exact: Vec<Vec<BigRational>> = (0..grid.samples.len())
        .map(|lin| {
            let mut rem = lin;
            let mut x = vec![axis[0].0.clone(); n];
            for slot in x.iter_mut().rev() {
                *slot = axis[rem % opts.resolution].0.clone();
                rem /= opts.resolution;
            }
            x
        })
        .collect();
    let per_rho = opts
        .rhos
        .iter()
        .map(|&rho| rho_report(&description, &grid, &exact, rho, opts.epsilon))
        .collect();
    Ok(LimitReport {
        description,
        epsilon: opts.epsilon,
        members: grid.members,
        non_members: grid.non_members,
        inconclusive: grid.inconclusive,
        per_rho,
        grid,
    })
}

impl LimitReport {
    /// For `n = 2`: scaled members at the given `rho` over the removed cones (shaded).
    pub fn to_svg(&self, rho_index: usize) -> Option<String> {
        let d = &self.description;
        if d.n != 2 {
            return None;
        }
        let rho = self.per_rho.get(rho_index)?.rho;
        let half = (self.grid.lo.abs().max(self.grid.hi.abs()) * rho).max(1e-9);
        let size = 400.0;
        let to_px = |v: f64| (v + half) / (2.0 * half) * size;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
        );
        // Shade the removed region cell by cell.
        let cells = 80;
        let step = 2.0 * half / cells as f64;
        for i in 0..cells {
            for j in 0..cells {
                let y = [
                    -half + (i as f64 + 0.5) * step,
                    -half + (j as f64 + 0.5) * step,
                ];
                if d.removal_depth(&y).0 > 0.0 {
                    let _ = writeln!(
                        out,
                        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#f4c7c3\"/>",
                        to_px(y[0] - step / 2.0),
                        size - to_px(y[1] + step / 2.0),
                        size / cells as f64,
                        size / cells as f64
                    );
                }
            }
        }
        for s in &self.grid.samples {
            let fill = match s.verdict {
                Verdict::Member => "#1f3b73",
                Verdict::NonMember => continue,
                Verdict::Inconclusive => "#d62728",
            };
            let _ = writeln!(
                out,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"{fill}\"/>",
                to_px(rho * s.x[0]),
                size - to_px(rho * s.x[1])
            );
        }
        out.push_str("</svg>\n");
        Some(out)
    }
}
