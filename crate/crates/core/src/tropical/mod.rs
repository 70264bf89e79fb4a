//! The limit set `lim_{rho -> 0} rho * sA(f)` of rescaled amoebas of a hypersurface, in closed
//! form from the spherical Newton polytope, and a grid experiment comparing it with numerically
//! computed amoebas.
//!
//! Orientation: every [`TropicalDescription`] is the limit set itself, which is `-strop(V(f))`.
//! It is `R^n` minus the open cones `-C^-` and `-C^+`, where `C^±` are the (minimizing) normal
//! cones of `sNewt(f)` at its extreme diagonal lattice points `N^± (1, ..., 1)`, when those are
//! vertices. `strop` itself is obtained with [`TropicalDescription::negated`].

mod experiment;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex::{Cone, ConvexError, LatticePolytope};
use crate::glpoly::RegularFunction;
use crate::numerics::NumericsError;
use crate::scalar::rational_from_f64;
use crate::support::{snewt, SupportError};

pub use experiment::{limit_experiment, LimitOptions, LimitReport, RhoReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TropicalError {
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Convex(#[from] ConvexError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TropicalKind {
    /// Neither extreme diagonal point is a vertex: nothing is removed.
    FullSpace,
    /// `f` is a monomial in `det`, a unit with empty zero set.
    Empty,
    /// `f = P(det)` with `P` not a monomial: the hyperplane `x_1 + ... + x_n = 0`.
    Hyperplane,
    ComplementOfCones,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TropicalDescription {
    pub n: usize,
    pub kind: TropicalKind,
    /// Open cones whose union is removed from `R^n`.
    pub removed: Vec<Cone>,
    /// Whether each removed cone comes from `N^-` (`Some(false)`), `N^+` (`Some(true)`) or from
    /// a special case (`None`).
    pub removed_side: Vec<Option<bool>>,
    pub polytope: LatticePolytope,
    pub n_minus: Option<i64>,
    pub n_plus: Option<i64>,
}

impl TropicalDescription {
    /// The description determined by a spherical Newton polytope.
    pub fn from_polytope(polytope: &LatticePolytope) -> Self {
        let n = polytope.n();
        let diagonal = polytope
            .vertices()
            .iter()
            .all(|v| v.iter().all(|x| *x == v[0]));
        let ex = polytope.diag_extremes();
        let base = |kind, removed: Vec<Cone>, removed_side| Self {
            n,
            kind,
            removed,
            removed_side,
            polytope: polytope.clone(),
            n_minus: ex.n_minus,
            n_plus: ex.n_plus,
        };
        if diagonal {
            if polytope.vertices().len() == 1 {
                return base(
                    TropicalKind::Empty,
                    vec![Cone::whole_space(n, true)],
                    vec![None],
                );
            }
            let ones = vec![1; n];
            let minus_ones = vec![-1; n];
            return base(
                TropicalKind::Hyperplane,
                vec![
                    Cone::half_space(ones, true),
                    Cone::half_space(minus_ones, true),
                ],
                vec![None, None],
            );
        }
        let mut removed = Vec::new();
        let mut sides = Vec::new();
        for (cone, side) in [(&ex.c_minus, false), (&ex.c_plus, true)] {
            if let Some(c) = cone {
                removed.push(c.negated().interior());
                sides.push(Some(side));
            }
        }
        let kind = if removed.is_empty() {
            TropicalKind::FullSpace
        } else {
            TropicalKind::ComplementOfCones
        };
        base(kind, removed, sides)
    }

    /// The same set reflected through the origin, i.e. `strop(V(f))`.
    pub fn negated(&self) -> Self {
        Self {
            removed: self.removed.iter().map(Cone::negated).collect(),
            ..self.clone()
        }
    }

    /// Exact membership: `x` lies in no removed open cone.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.n && !self.removed.iter().any(|c| c.contains(x))
    }

    /// Membership of a float point, converted exactly to rationals.
    pub fn contains_f64(&self, x: &[f64]) -> bool {
        match x
            .iter()
            .map(|v| rational_from_f64(*v))
            .collect::<Option<Vec<_>>>()
        {
            Some(r) => self.contains(&r),
            None => false,
        }
    }

    /// Depth of `x` inside the removed cones: the distance to the set, 0 for members. Also
    /// returns which cone attains it.
    pub fn removal_depth(&self, x: &[f64]) -> (f64, Option<usize>) {
        let mut best = (0.0, None);
        for (k, c) in self.removed.iter().enumerate() {
            let d = c.depth(x);
            if d > best.0 {
                best = (d, Some(k));
            }
        }
        best
    }

    /// Distance from `x` to the union of the closed removed cones, i.e. how far inside the set
    /// a member is. Infinite when nothing is removed. For the hyperplane kind the set has no
    /// interior and this is reported as infinite on the hyperplane itself.
    pub fn interior_margin(&self, x: &[f64]) -> f64 {
        match self.kind {
            TropicalKind::FullSpace => f64::INFINITY,
            TropicalKind::Empty => 0.0,
            TropicalKind::Hyperplane => {
                if self.contains_f64(x) {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            TropicalKind::ComplementOfCones => self
                .removed
                .iter()
                .map(|c| c.closure().distance(x))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// `-strop(V(f))`, the limit of `rho * sA(f)` as `rho -> 0`.
pub fn strop_hypersurface(
    f: &RegularFunction,
    trials: usize,
    seed: u64,
) -> Result<TropicalDescription, TropicalError> {
    let p = snewt(f, trials, seed)?;
    Ok(TropicalDescription::from_polytope(&p))
}

pub fn strop_member(d: &TropicalDescription, x: &[BigRational]) -> bool {
    d.contains(x)
}
