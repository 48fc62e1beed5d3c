//! Polytopes with exact rational vertices and primitive facet normals.
//!
//! A [`Polytope`] keeps both descriptions: its vertices and an irredundant
//! list of [`HalfSpace`]s. Lower-dimensional polytopes additionally carry the
//! equations of their affine hull; their facet inequalities are relative to
//! that hull.

mod hull;
mod iso;

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use hull::Chart;
pub use iso::{lattice_isomorphic, UnimodularAffineMap};

use crate::error::{Error, Result};
use crate::lattice::{gcd_all, primitive_part, rank_int, Int, MVector, NVector, Rat};

/// The inequality `⟨x, normal⟩ ≥ level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: NVector,
    pub level: Rat,
}

impl HalfSpace {
    pub fn new(normal: NVector, level: Rat) -> Self {
        HalfSpace { normal, level }
    }

    /// Slack `⟨x, ν⟩ - r`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &MVector) -> Rat {
        x.pair(&self.normal) - &self.level
    }

    pub fn contains(&self, x: &MVector) -> bool {
        !self.slack(x).is_negative()
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<MVector>,
    facets: Vec<HalfSpace>,
    equations: Vec<HalfSpace>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// Convex hull of a nonempty point set; the ambient rank is taken from the
/// points.
pub fn convex_hull(points: &[MVector]) -> Polytope {
    let dim = points.first().map_or(3, |p| p.dim());
    hull::hull(dim, points)
}

/// Lattice length of the segment `[s, t]`: the `l` with `s - t = l · primitive`.
pub fn edge_lattice_length(s: &MVector, t: &MVector) -> Result<Int> {
    let d = s.sub(t).to_integers().ok_or(Error::NonIntegral)?;
    Ok(gcd_all(&d))
}

impl Polytope {
    pub(crate) fn from_parts(
        dim: usize,
        mut vertices: Vec<MVector>,
        mut facets: Vec<HalfSpace>,
        equations: Vec<HalfSpace>,
    ) -> Self {
        vertices.sort();
        facets.sort();
        Polytope { dim, vertices, facets, equations }
    }

    pub fn empty(dim: usize) -> Self {
        Polytope { dim, vertices: Vec::new(), facets: Vec::new(), equations: Vec::new() }
    }

    pub fn from_halfspaces(dim: usize, halfspaces: &[HalfSpace]) -> Self {
        hull::from_halfspaces(dim, halfspaces)
    }

    pub fn from_vertices<const D: usize>(vs: &[[i64; D]]) -> Self {
        let pts: Vec<MVector> = vs.iter().map(|&v| MVector::from(v)).collect();
        convex_hull(&pts)
    }

    /// Rank of the ambient lattice.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[MVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn equations(&self) -> &[HalfSpace] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull, `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        (!self.is_empty()).then(|| self.dim - self.equations.len())
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim)
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(MVector::is_integral)
    }

    /// `min ⟨x, ν⟩` over the polytope.
    pub fn ord(&self, nu: &NVector) -> Rat {
        self.vertices
            .iter()
            .map(|v| v.pair(nu))
            .min()
            .expect("ord of an empty polytope")
    }

    /// Lexicographically least vertex minimizing `⟨·, ν⟩`.
    pub fn argmin(&self, nu: &NVector) -> &MVector {
        let m = self.ord(nu);
        self.vertices.iter().find(|v| v.pair(nu) == m).expect("nonempty")
    }

    pub fn contains(&self, x: &MVector) -> bool {
        self.equations.iter().all(|e| e.slack(x).is_zero()) && self.facets.iter().all(|f| f.contains(x))
    }

    pub fn contains_in_relative_interior(&self, x: &MVector) -> bool {
        self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    fn bounding_box(&self) -> Vec<(Int, Int)> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v.coords()[i].ceil().to_integer()).min().unwrap();
                let hi = self.vertices.iter().map(|v| v.coords()[i].floor().to_integer()).max().unwrap();
                (lo, hi)
            })
            .collect()
    }

    fn scan(&self, keep: impl Fn(&MVector) -> bool) -> Vec<MVector> {
        if self.is_empty() {
            return Vec::new();
        }
        let bbox = self.bounding_box();
        if bbox.iter().any(|(lo, hi)| lo > hi) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur: Vec<Int> = bbox.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            let p = MVector::from_ints(&cur);
            if keep(&p) {
                out.push(p);
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if cur[i] < bbox[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = bbox[i].0.clone();
            }
        }
    }

    /// All lattice points, sorted.
    pub fn lattice_points(&self) -> Vec<MVector> {
        self.scan(|p| self.contains(p))
    }

    /// Lattice points in the relative interior, sorted.
    pub fn interior_lattice_points(&self) -> Vec<MVector> {
        self.scan(|p| self.contains_in_relative_interior(p))
    }

    /// `l(P) = |P ∩ M|`.
    pub fn num_lattice_points(&self) -> usize {
        self.lattice_points().len()
    }

    /// `l*(P)`, counted in the relative interior.
    pub fn num_interior_lattice_points(&self) -> usize {
        self.interior_lattice_points().len()
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.add(b));
            }
        }
        hull::hull(self.dim, &pts)
    }

    /// The dilate `n · P`.
    pub fn dilate(&self, n: i64) -> Result<Polytope> {
        if n <= 0 {
            return Err(Error::NonPositiveFactor);
        }
        Ok(self.scale(&Rat::from_integer(Int::from(n))))
    }

    pub(crate) fn scale(&self, k: &Rat) -> Polytope {
        let map_h = |h: &HalfSpace| HalfSpace::new(h.normal.clone(), &h.level * k);
        Polytope::from_parts(
            self.dim,
            self.vertices.iter().map(|v| v.scale(k)).collect(),
            self.facets.iter().map(map_h).collect(),
            self.equations.iter().map(map_h).collect(),
        )
    }

    pub fn translate(&self, t: &MVector) -> Polytope {
        let map_h = |h: &HalfSpace| HalfSpace::new(h.normal.clone(), &h.level + t.pair(&h.normal));
        Polytope::from_parts(
            self.dim,
            self.vertices.iter().map(|v| v.add(t)).collect(),
            self.facets.iter().map(map_h).collect(),
            self.equations.iter().map(map_h).collect(),
        )
    }

    /// Least `m ≥ 1` with `m · P` a lattice polytope.
    pub fn denominator_index(&self) -> Int {
        self.vertices.iter().fold(Int::one(), |acc, v| acc.lcm(&v.denominator()))
    }

    /// The face on which `⟨·, ν⟩` is minimal.
    pub fn face(&self, nu: &NVector) -> Polytope {
        let m = self.ord(nu);
        let pts: Vec<MVector> = self.vertices.iter().filter(|v| v.pair(nu) == m).cloned().collect();
        hull::hull(self.dim, &pts)
    }

    /// The face dual to the cone spanned by `normals`: the face of the sum of
    /// the normals, which is the common minimizing face whenever one exists.
    pub fn minimizing_face(&self, normals: &[NVector]) -> Polytope {
        let mut s = NVector::zero(self.dim);
        for n in normals {
            s = s.add(n);
        }
        self.face(&s)
    }

    pub fn facet_polytopes(&self) -> Vec<(HalfSpace, Polytope)> {
        self.facets.iter().map(|h| (h.clone(), self.face(&h.normal))).collect()
    }

    /// The saturated affine chart of the affine hull.
    pub fn chart(&self) -> Option<Chart> {
        Chart::of_points(&self.vertices)
    }

    /// This polytope in the coordinates of its own chart, where it is
    /// full-dimensional.
    pub fn local(&self) -> Option<(Chart, Polytope)> {
        let chart = self.chart()?;
        let pts: Vec<MVector> = self.vertices.iter().map(|v| MVector::new(chart.to_local(v))).collect();
        let local = hull::hull(chart.rank(), &pts);
        Some((chart, local))
    }

    /// Volume relative to the saturated lattice of the affine hull.
    pub fn relative_volume(&self) -> Rat {
        let Some((_, local)) = self.local() else {
            return Rat::zero();
        };
        local.full_volume()
    }

    fn full_volume(&self) -> Rat {
        let k = self.dim;
        if k == 0 {
            return Rat::one();
        }
        let v0 = &self.vertices[0];
        let mut total = Rat::zero();
        for (h, face) in self.facet_polytopes() {
            let height = h.slack(v0);
            if height.is_zero() {
                continue;
            }
            total += height * face.relative_volume();
        }
        total / Rat::from_integer(Int::from(k as i64))
    }

    /// Euclidean volume of a full-dimensional polytope.
    pub fn volume(&self) -> Result<Rat> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Ok(self.full_volume())
    }

    /// The unique interior lattice point, if there is exactly one.
    pub fn interior_point(&self) -> Option<MVector> {
        let pts = self.interior_lattice_points();
        (pts.len() == 1).then(|| pts[0].clone())
    }

    /// Reflexive: one interior lattice point and every facet at lattice
    /// distance 1 from it. Lower-dimensional lattice polytopes are tested in
    /// their own lattice.
    pub fn is_reflexive(&self) -> bool {
        if self.is_empty() || !self.is_lattice() {
            return false;
        }
        if !self.is_full_dimensional() {
            return self.local().is_some_and(|(_, l)| l.affine_dim() != Some(0) && l.is_reflexive());
        }
        let Some(x0) = self.interior_point() else {
            return false;
        };
        self.facets.iter().all(|h| h.slack(&x0).is_one())
    }

    /// Canonical Fano: one interior lattice point and primitive vertices
    /// relative to it.
    pub fn is_canonical_fano(&self) -> bool {
        if !self.is_full_dimensional() || !self.is_lattice() {
            return false;
        }
        let Some(x0) = self.interior_point() else {
            return false;
        };
        self.vertices.iter().all(|v| {
            let d = v.sub(&x0).to_integers().expect("lattice");
            primitive_part(&d).is_ok_and(|(_, g)| g.is_one())
        })
    }

    /// Lattice distance of each facet from `x`.
    pub fn facet_distances(&self, x: &MVector) -> Vec<Rat> {
        self.facets.iter().map(|h| h.slack(x)).collect()
    }

    /// Edges as pairs of vertex indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let tight: Vec<BTreeSet<usize>> = self
            .vertices
            .iter()
            .map(|v| (0..self.facets.len()).filter(|&i| self.facets[i].slack(v).is_zero()).collect())
            .collect();
        let mut out = Vec::new();
        let need = self.affine_dim().unwrap_or(0).saturating_sub(1);
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let common: Vec<Vec<Int>> = tight[i]
                    .intersection(&tight[j])
                    .map(|&f| self.facets[f].normal.coords().to_vec())
                    .collect();
                if rank_int(&common) == need {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Image of the polytope under `x ↦ (x_0, …, c·x_i, …)`.
    pub fn scale_coordinate(&self, i: usize, c: &Rat) -> Polytope {
        let pts: Vec<MVector> = self
            .vertices
            .iter()
            .map(|v| {
                let mut x = v.coords().to_vec();
                x[i] = &x[i] * c;
                MVector::new(x)
            })
            .collect();
        convex_hull(&pts)
    }
}
