use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{HalfSpace, Polytope};
use crate::lattice::{
    combinations, coords_in_basis, cross, det, dot, hnf_rows, integer_kernel, lift_functional,
    primitive_part, rank_int, rat_int, saturate, Int, MVector, NVector, Rat,
};

/// Saturated affine chart of a point set: `x = origin + Σ λ_i b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub origin: MVector,
    pub basis: Vec<Vec<Int>>,
}

impl Chart {
    pub fn of_points(points: &[MVector]) -> Option<Chart> {
        let origin = points.first()?.clone();
        let n = origin.dim();
        let diffs: Vec<Vec<Int>> = points[1..].iter().map(|p| integral_direction(&p.sub(&origin))).collect();
        let basis = if diffs.is_empty() { Vec::new() } else { saturate(&diffs, n) };
        Some(Chart { origin, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn to_local(&self, p: &MVector) -> Vec<Rat> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        coords_in_basis(&self.basis, p.sub(&self.origin).coords()).expect("point in affine hull")
    }

    pub fn to_ambient(&self, local: &[Rat]) -> MVector {
        let n = self.origin.dim();
        let mut out = self.origin.coords().to_vec();
        for (b, l) in self.basis.iter().zip(local) {
            for i in 0..n {
                out[i] += rat_int(&b[i]) * l;
            }
        }
        MVector::new(out)
    }
}

/// Scales a rational vector to an integral one with the same direction.
fn integral_direction(v: &MVector) -> Vec<Int> {
    let d = v.denominator();
    v.coords().iter().map(|x| (x * rat_int(&d)).to_integer()).collect()
}

fn common_denominator<'a>(xs: impl Iterator<Item = &'a Rat>) -> Int {
    xs.fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

/// Convex hull of rational points in an ambient lattice of rank `dim`.
pub(crate) fn hull(dim: usize, points: &[MVector]) -> Polytope {
    let pts: Vec<MVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let Some(chart) = Chart::of_points(&pts) else {
        return Polytope::empty(dim);
    };
    let k = chart.rank();
    let equations: Vec<HalfSpace> = if k == dim {
        Vec::new()
    } else {
        let kernel = integer_kernel(&chart.basis, dim);
        hnf_rows(&kernel)
            .into_iter()
            .map(|e| {
                let e = NVector::new(e);
                let level = chart.origin.pair(&e);
                HalfSpace::new(e, level)
            })
            .collect()
    };
    if k == 0 {
        return Polytope::from_parts(dim, vec![chart.origin], Vec::new(), equations);
    }
    let local: Vec<Vec<Rat>> = if k == dim {
        pts.iter().map(|p| p.coords().to_vec()).collect()
    } else {
        pts.iter().map(|p| chart.to_local(p)).collect()
    };
    let (vidx, local_facets) = full_hull(&local, k);
    let vertices: Vec<MVector> = vidx.into_iter().map(|i| pts[i].clone()).collect();
    let facets: Vec<HalfSpace> = local_facets
        .into_iter()
        .map(|(u, c)| {
            if k == dim {
                HalfSpace::new(NVector::new(u), c)
            } else {
                let nu = NVector::new(lift_functional(&chart.basis, &u, dim).expect("saturated chart"));
                let level = c + chart.origin.pair(&nu);
                HalfSpace::new(nu, level)
            }
        })
        .collect();
    Polytope::from_parts(dim, vertices, facets, equations)
}

/// Hull of a full-dimensional point set in Q^k: returns indices of the
/// extreme points and the facet inequalities `⟨x, u⟩ ≥ c`.
fn full_hull(points: &[Vec<Rat>], k: usize) -> (Vec<usize>, Vec<(Vec<Int>, Rat)>) {
    let d = common_denominator(points.iter().flatten());
    let dq = rat_int(&d);
    let ip: Vec<Vec<Int>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    let mut facets: BTreeMap<Vec<Int>, Int> = BTreeMap::new();
    let mut on_facet: Vec<Vec<bool>> = Vec::new();
    if k == 1 {
        let lo = ip.iter().map(|p| p[0].clone()).min().unwrap();
        let hi = ip.iter().map(|p| p[0].clone()).max().unwrap();
        facets.insert(vec![Int::one()], lo);
        facets.insert(vec![-Int::one()], -hi);
    } else {
        for subset in combinations(ip.len(), k) {
            if on_facet.iter().any(|f| subset.iter().all(|&i| f[i])) {
                continue;
            }
            let base = &ip[subset[0]];
            let vs: Vec<Vec<Int>> = subset[1..]
                .iter()
                .map(|&i| ip[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let c = cross(&vs, k);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let (c, _) = primitive_part(&c).expect("nonzero");
            let level = dot(&c, base);
            let mut pos = false;
            let mut neg = false;
            let mut tight = vec![false; ip.len()];
            for (j, p) in ip.iter().enumerate() {
                let s = dot(&c, p) - &level;
                if s.is_positive() {
                    pos = true;
                } else if s.is_negative() {
                    neg = true;
                } else {
                    tight[j] = true;
                }
                if pos && neg {
                    break;
                }
            }
            if pos && neg {
                continue;
            }
            let (c, level) = if neg { (c.iter().map(|x| -x).collect(), -level) } else { (c, level) };
            facets.insert(c, level);
            on_facet.push(tight);
        }
    }
    let facet_list: Vec<(Vec<Int>, Int)> = facets.into_iter().collect();
    let vidx: Vec<usize> = (0..ip.len())
        .filter(|&i| {
            let tight: Vec<Vec<Int>> = facet_list
                .iter()
                .filter(|(c, l)| &dot(c, &ip[i]) == l)
                .map(|(c, _)| c.clone())
                .collect();
            rank_int(&tight) == k
        })
        .collect();
    let facets = facet_list
        .into_iter()
        .map(|(c, l)| (c, Rat::new(l, d.clone())))
        .collect();
    (vidx, facets)
}

/// Vertices of the bounded polyhedron `{x : ⟨x, ν_i⟩ ≥ r_i}`, then its hull.
pub(crate) fn from_halfspaces(dim: usize, hs: &[HalfSpace]) -> Polytope {
    let mut best: BTreeMap<NVector, Rat> = BTreeMap::new();
    for h in hs {
        let e = best.entry(h.normal.clone()).or_insert_with(|| h.level.clone());
        if h.level > *e {
            *e = h.level.clone();
        }
    }
    let l = common_denominator(best.values());
    let lq = rat_int(&l);
    let rows: Vec<(Vec<Int>, Int)> = best
        .into_iter()
        .map(|(n, r)| (n.into_coords(), (r * &lq).to_integer()))
        .collect();
    let mut found: BTreeSet<MVector> = BTreeSet::new();
    for subset in combinations(rows.len(), dim) {
        let a: Vec<Vec<Int>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let mut dt = det(&a);
        if dt.is_zero() {
            continue;
        }
        let s: Vec<Int> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        // Cramer's rule: x = x_num / (det · L)
        let mut x_num: Vec<Int> = (0..dim)
            .map(|c| {
                let m: Vec<Vec<Int>> = a
                    .iter()
                    .zip(&s)
                    .map(|(row, si)| {
                        let mut r = row.clone();
                        r[c] = si.clone();
                        r
                    })
                    .collect();
                det(&m)
            })
            .collect();
        if dt.is_negative() {
            dt = -dt;
            x_num.iter_mut().for_each(|x| *x = -&*x);
        }
        let feasible = rows.iter().all(|(nu, sj)| dot(nu, &x_num) >= sj * &dt);
        if feasible {
            let den = &dt * &l;
            found.insert(MVector::new(x_num.into_iter().map(|x| Rat::new(x, den.clone())).collect()));
        }
    }
    let pts: Vec<MVector> = found.into_iter().collect();
    hull(dim, &pts)
}
