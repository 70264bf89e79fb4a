use std::collections::BTreeSet;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::intlin::{dot, nullspace, primitive, rank};
use super::{Cone, ConvexError};

/// Half-space `normal . x <= offset` (or a hyperplane when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, x: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(x)
            .map(|(a, b)| *a as i128 * *b as i128)
            .sum()
    }

    pub fn value_rational(&self, x: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(x)
            .fold(BigRational::zero(), |acc, (a, b)| {
                acc + b * BigInt::from(*a)
            })
    }
}

/// Lattice polytope in `Z^n` with vertex and facet descriptions.
///
/// Facets are taken inside the affine hull: each normal is orthogonal to every equality normal,
/// so the description is unique for lower-dimensional polytopes too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    n: usize,
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    equalities: Vec<Facet>,
}

/// A face, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
}

fn to_i128(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

fn to_i64(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("coordinate exceeds 64 bits"))
        .collect()
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i128> {
    a.iter()
        .zip(b)
        .map(|(x, y)| *x as i128 - *y as i128)
        .collect()
}

/// Affine dimension of a point set.
pub fn affine_dim(points: &[Vec<i64>]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let diffs: Vec<Vec<i128>> = points.iter().map(|p| diff(p, p0)).collect();
    rank(&diffs, p0.len())
}

/// Calls `f` on every `k`-subset of `0..m` in lexicographic order.
fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl LatticePolytope {
    /// Convex hull of a nonempty finite point set.
    pub fn hull(points: &[Vec<i64>]) -> Result<Self, ConvexError> {
        let first = points.first().ok_or(ConvexError::Empty)?;
        let n = first.len();
        if let Some(bad) = points.iter().find(|p| p.len() != n) {
            return Err(ConvexError::DimensionMismatch(n, bad.len()));
        }
        let pts: Vec<Vec<i64>> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let p0 = &pts[0];

        let mut basis: Vec<Vec<i128>> = pts.iter().map(|p| diff(p, p0)).collect();
        super::intlin::rref(&mut basis, n);
        let dim = basis.len();

        let equalities: Vec<Facet> = nullspace(&basis, n)
            .into_iter()
            .map(|e| {
                let normal = to_i64(&e);
                let offset = i64::try_from(dot(&e, &to_i128(p0))).expect("offset exceeds 64 bits");
                Facet { normal, offset }
            })
            .collect();

        if dim == 0 {
            return Ok(Self {
                n,
                dim,
                vertices: vec![p0.clone()],
                facets: Vec::new(),
                equalities,
            });
        }

        // A facet is spanned by `dim` affinely independent points; its normal lies in the
        // direction space, orthogonal to the differences among those points.
        let mut facets: BTreeSet<Facet> = BTreeSet::new();
        let pts128: Vec<Vec<i128>> = pts.iter().map(|p| to_i128(p)).collect();
        for_each_subset(pts.len(), dim, |subset| {
            let s0 = &pts[subset[0]];
            let constraints: Vec<Vec<i128>> = subset[1..]
                .iter()
                .map(|&i| {
                    let d = diff(&pts[i], s0);
                    basis.iter().map(|b| dot(b, &d)).collect()
                })
                .collect();
            let ns = nullspace(&constraints, dim);
            if ns.len() != 1 {
                return;
            }
            let mut w = vec![0i128; n];
            for (c, b) in ns[0].iter().zip(&basis) {
                for (wk, bk) in w.iter_mut().zip(b) {
                    *wk += c * bk;
                }
            }
            primitive(&mut w);
            let base = dot(&w, &to_i128(s0));
            let (mut le, mut ge) = (true, true);
            for p in &pts128 {
                let v = dot(&w, p);
                le &= v <= base;
                ge &= v >= base;
                if !le && !ge {
                    return;
                }
            }
            let (normal, offset) = if le {
                (w, base)
            } else {
                (w.iter().map(|x| -x).collect(), -base)
            };
            facets.insert(Facet {
                normal: to_i64(&normal),
                offset: i64::try_from(offset).expect("offset exceeds 64 bits"),
            });
        });
        let facets: Vec<Facet> = facets.into_iter().collect();

        let vertices: Vec<Vec<i64>> = pts
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<i128>> = facets
                    .iter()
                    .filter(|f| f.value(p) == f.offset as i128)
                    .map(|f| to_i128(&f.normal))
                    .collect();
                rank(&tight, n) == dim
            })
            .cloned()
            .collect();

        Ok(Self {
            n,
            dim,
            vertices,
            facets,
            equalities,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equalities(&self) -> &[Facet] {
        &self.equalities
    }

    pub fn is_vertex(&self, p: &[i64]) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n
            && self
                .equalities
                .iter()
                .all(|e| e.value(x) == e.offset as i128)
            && self.facets.iter().all(|f| f.value(x) <= f.offset as i128)
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        let off = |f: &Facet| BigRational::from_integer(BigInt::from(f.offset));
        x.len() == self.n
            && self
                .equalities
                .iter()
                .all(|e| e.value_rational(x) == off(e))
            && self.facets.iter().all(|f| f.value_rational(x) <= off(f))
    }

    /// Integer points, enumerated over the bounding box. Fails when the box exceeds `limit` points.
    pub fn lattice_points(&self, limit: usize) -> Result<Vec<Vec<i64>>, ConvexError> {
        let lo: Vec<i64> = (0..self.n)
            .map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap_or(0))
            .collect();
        let hi: Vec<i64> = (0..self.n)
            .map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap_or(0))
            .collect();
        let size = lo
            .iter()
            .zip(&hi)
            .try_fold(1usize, |acc, (l, h)| acc.checked_mul((h - l + 1) as usize));
        if size.is_none_or(|s| s > limit) {
            return Err(ConvexError::TooLarge);
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == self.n {
                    return Ok(out);
                }
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo[k];
                k += 1;
            }
        }
    }

    fn tight_facets(&self, x: &[i64]) -> Vec<&Facet> {
        self.facets
            .iter()
            .filter(|f| f.value(x) == f.offset as i128)
            .collect()
    }

    fn face_from_tight(&self, tight: &[&Facet]) -> Face {
        let vertices: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .filter(|v| tight.iter().all(|f| f.value(v) == f.offset as i128))
            .cloned()
            .collect();
        let dim = affine_dim(&vertices);
        Face { vertices, dim }
    }

    /// The face whose relative interior contains `m`.
    pub fn smallest_face(&self, m: &[i64]) -> Result<Face, ConvexError> {
        if !self.contains(m) {
            return Err(ConvexError::NotInPolytope);
        }
        Ok(self.face_from_tight(&self.tight_facets(m)))
    }

    pub fn whole_face(&self) -> Face {
        Face {
            vertices: self.vertices.clone(),
            dim: self.dim,
        }
    }

    fn facets_containing(&self, face: &Face) -> Vec<&Facet> {
        self.facets
            .iter()
            .filter(|f| face.vertices.iter().all(|v| f.value(v) == f.offset as i128))
            .collect()
    }

    /// Closed normal cone `{w : w.x <= w.y for all x in F, y in P}` of a face.
    pub fn normal_cone(&self, face: &Face) -> Result<Cone, ConvexError> {
        if face.vertices.is_empty() || face.vertices.iter().any(|v| !self.is_vertex(v)) {
            return Err(ConvexError::InvalidFace);
        }
        let containing = self.facets_containing(face);
        let closure = self.face_from_tight(&containing);
        let as_set = |vs: &[Vec<i64>]| vs.iter().cloned().collect::<BTreeSet<_>>();
        if as_set(&closure.vertices) != as_set(&face.vertices) {
            return Err(ConvexError::InvalidFace);
        }

        let mut generators: Vec<Vec<i64>> = containing
            .iter()
            .map(|f| f.normal.iter().map(|x| -x).collect())
            .collect();
        for e in &self.equalities {
            generators.push(e.normal.clone());
            generators.push(e.normal.iter().map(|x| -x).collect());
        }

        let mut inequalities: BTreeSet<Vec<i64>> = BTreeSet::new();
        for x in &face.vertices {
            for y in &self.vertices {
                let mut d = diff(y, x);
                if d.iter().all(|v| *v == 0) {
                    continue;
                }
                super::intlin::reduce(&mut d);
                inequalities.insert(to_i64(&d));
            }
        }
        Cone::new(
            self.n,
            generators,
            inequalities.into_iter().collect(),
            false,
        )
    }

    /// Minkowski sum.
    pub fn minkowski(&self, other: &Self) -> Result<Self, ConvexError> {
        if self.n != other.n {
            return Err(ConvexError::DimensionMismatch(self.n, other.n));
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::hull(&sums)
    }

    pub fn scaled(&self, k: i64) -> Result<Self, ConvexError> {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        Self::hull(&pts)
    }

    /// Range `[lo, hi]` of `s` with `s*(1,...,1)` in the polytope, if nonempty.
    pub fn diagonal_range(&self) -> Option<(BigRational, BigRational)> {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        let mut tighten = |bound: BigRational, upper: bool| {
            let slot = if upper { &mut hi } else { &mut lo };
            let better = match slot {
                None => true,
                Some(cur) => (upper && bound < *cur) || (!upper && bound > *cur),
            };
            if better {
                *slot = Some(bound);
            }
        };
        for e in &self.equalities {
            let s: i64 = e.normal.iter().sum();
            if s == 0 {
                if e.offset != 0 {
                    return None;
                }
            } else {
                let v = BigRational::new(BigInt::from(e.offset), BigInt::from(s));
                tighten(v.clone(), true);
                tighten(v, false);
            }
        }
        for f in &self.facets {
            let s: i64 = f.normal.iter().sum();
            let bound = || BigRational::new(BigInt::from(f.offset), BigInt::from(s));
            match s.signum() {
                0 if f.offset < 0 => return None,
                0 => {}
                1 => tighten(bound(), true),
                _ => tighten(bound(), false),
            }
        }
        let (lo, hi) = (lo?, hi?);
        (lo <= hi).then_some((lo, hi))
    }

    /// Extreme diagonal lattice points `N^-`, `N^+` and the interiors of their normal cones when
    /// they are vertices.
    pub fn diag_extremes(&self) -> DiagExtremes {
        let empty = DiagExtremes {
            n_minus: None,
            n_plus: None,
            c_minus: None,
            c_plus: None,
        };
        let Some((lo, hi)) = self.diagonal_range() else {
            return empty;
        };
        let n_minus = lo.ceil().to_integer();
        let n_plus = hi.floor().to_integer();
        if n_minus > n_plus {
            return empty;
        }
        let to_i64 = |b: &BigInt| i64::try_from(b).expect("diagonal index exceeds 64 bits");
        let (n_minus, n_plus) = (to_i64(&n_minus), to_i64(&n_plus));
        let cone_at = |k: i64| -> Option<Cone> {
            let p = vec![k; self.n];
            if !self.is_vertex(&p) {
                return None;
            }
            let face = Face {
                vertices: vec![p],
                dim: 0,
            };
            Some(
                self.normal_cone(&face)
                    .expect("vertex is a face")
                    .interior(),
            )
        };
        DiagExtremes {
            n_minus: Some(n_minus),
            n_plus: Some(n_plus),
            c_minus: cone_at(n_minus),
            c_plus: cone_at(n_plus),
        }
    }
}

/// Output of [`LatticePolytope::diag_extremes`]; cones are open and follow the
/// `w.x <= w.y` normal-cone convention of [`LatticePolytope::normal_cone`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagExtremes {
    pub n_minus: Option<i64>,
    pub n_plus: Option<i64>,
    pub c_minus: Option<Cone>,
    pub c_plus: Option<Cone>,
}
