//! Complete fans of rational polyhedral cones: normal fans, common
//! refinements, crepant simplicial refinements and torus-invariant divisors.

mod divisor;
mod triangulate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Zero};

pub use divisor::{
    cartier_data, cone_is_canonical, cone_is_terminal, crepancy_check, divisor_from_ord,
    is_basepointfree, is_q_cartier, reid_witness, self_intersection_top, ReidWitness, TorusDivisor,
};

use crate::error::{Error, Result};
use crate::lattice::{cone_inequalities, rat_int, solve_linear, ConeInequalities, Int, NVector, Rat};
use crate::polytope::{HalfSpace, Polytope};

/// A fan stored by its maximal cones; rays are sorted and cones are sorted
/// lists of ray indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<NVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds a fan from cones given by their generators.
    pub fn from_cones(dim: usize, cones: Vec<Vec<NVector>>) -> Fan {
        let rays: Vec<NVector> = cones.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<&NVector, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut max_cones: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut ix: Vec<usize> = c.iter().map(|r| index[r]).collect();
                ix.sort();
                ix.dedup();
                ix
            })
            .collect();
        max_cones.sort();
        max_cones.dedup();
        Fan { dim, rays, max_cones }
    }

    pub fn new(dim: usize, rays: Vec<NVector>, max_cones: Vec<Vec<usize>>) -> Fan {
        let cones = max_cones.iter().map(|c| c.iter().map(|&i| rays[i].clone()).collect()).collect();
        Fan::from_cones(dim, cones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[NVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_rays(&self, i: usize) -> Vec<NVector> {
        self.max_cones[i].iter().map(|&r| self.rays[r].clone()).collect()
    }

    pub fn ray_index(&self, r: &NVector) -> Option<usize> {
        self.rays.binary_search(r).ok()
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| c.len() == self.dim)
    }

    pub fn cone_inequalities(&self, i: usize) -> Result<ConeInequalities> {
        cone_inequalities(&self.cone_rays(i))
    }

    /// Indices of maximal cones containing `v`.
    pub fn cones_containing(&self, v: &NVector) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.max_cones.len() {
            if self.cone_inequalities(i)?.contains(v) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The two-dimensional cones, as sorted pairs of ray indices.
    pub fn two_cones(&self) -> Result<Vec<(usize, usize)>> {
        let mut out = BTreeSet::new();
        for (i, cone) in self.max_cones.iter().enumerate() {
            if self.dim == 2 {
                if cone.len() == 2 {
                    out.insert((cone[0], cone[1]));
                }
                continue;
            }
            let ineq = self.cone_inequalities(i)?;
            for f in &ineq.facets {
                let on: Vec<usize> = cone
                    .iter()
                    .cloned()
                    .filter(|&r| crate::lattice::dot(f.coords(), self.rays[r].coords()).is_zero())
                    .collect();
                if on.len() == 2 {
                    out.insert((on[0], on[1]));
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Graphviz rendering of the adjacency of maximal cones.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph fan {\n");
        for (i, c) in self.max_cones.iter().enumerate() {
            let label: Vec<String> = c.iter().map(|&r| self.rays[r].to_string()).collect();
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", label.join(" "));
        }
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                let shared = self.max_cones[i].iter().filter(|r| self.max_cones[j].contains(r)).count();
                if shared + 1 >= self.dim {
                    let _ = writeln!(s, "  c{i} -- c{j};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Normal cones at the vertices of a full-dimensional polytope.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let cones = p
        .vertices()
        .iter()
        .map(|v| {
            p.facets()
                .iter()
                .filter(|h| h.slack(v).is_zero())
                .map(|h| h.normal.clone())
                .collect()
        })
        .collect();
    Ok(Fan::from_cones(p.dim(), cones))
}

/// Coarsest common refinement of two complete fans.
pub fn common_refinement(a: &Fan, b: &Fan) -> Result<Fan> {
    let dim = a.dim();
    let mut cones = Vec::new();
    for i in 0..a.max_cones().len() {
        let ia = a.cone_inequalities(i)?;
        let mut s = NVector::zero(dim);
        for f in &ia.facets {
            s = s.add(f);
        }
        for j in 0..b.max_cones().len() {
            let ib = b.cone_inequalities(j)?;
            let mut hs: Vec<HalfSpace> = ia
                .facets
                .iter()
                .chain(&ib.facets)
                .map(|f| HalfSpace::new(f.clone(), Rat::zero()))
                .collect();
            hs.push(HalfSpace::new(s.clone(), Rat::one()));
            hs.push(HalfSpace::new(s.neg(), -Rat::one()));
            let slice = Polytope::from_halfspaces(dim, &hs);
            if slice.affine_dim() != Some(dim - 1) {
                continue;
            }
            let rays: Vec<NVector> = slice
                .vertices()
                .iter()
                .map(|v| {
                    let d = v.denominator();
                    let iv: Vec<Int> = v.coords().iter().map(|x| (x * rat_int(&d)).to_integer()).collect();
                    NVector::new(iv).primitive().expect("nonzero ray")
                })
                .collect();
            cones.push(rays);
        }
    }
    Ok(Fan::from_cones(dim, cones))
}

/// Solves `⟨w, r⟩ = 1` on the given rays.
pub(crate) fn level_functional(rays: &[NVector]) -> Option<Vec<Rat>> {
    let a: Vec<Vec<Rat>> = rays.iter().map(|r| r.to_rational()).collect();
    let b = vec![Rat::one(); rays.len()];
    solve_linear(&a, &b)
}

fn pair_q(w: &[Rat], v: &NVector) -> Rat {
    w.iter().zip(v.coords()).map(|(a, b)| a * rat_int(b)).sum()
}

/// Simplicial refinement of `coarse` whose rays are exactly `rays`: each
/// maximal cone is triangulated on the affine plane through its rays, using
/// every given ray inside it.
pub fn crepant_simplicial_refinement(coarse: &Fan, rays: &[NVector]) -> Result<Fan> {
    let dim = coarse.dim();
    let set: BTreeSet<&NVector> = rays.iter().collect();
    for r in coarse.rays() {
        if !set.contains(r) {
            return Err(Error::SupportIncomplete(r.to_string()));
        }
    }
    let mut cones: Vec<Vec<NVector>> = Vec::new();
    for i in 0..coarse.max_cones().len() {
        let ineq = coarse.cone_inequalities(i)?;
        let gens = coarse.cone_rays(i);
        let w = level_functional(&gens).ok_or(Error::DegenerateCone)?;
        let inside: Vec<NVector> = rays.iter().filter(|r| ineq.contains(r)).cloned().collect();
        if inside.iter().any(|r| !pair_q(&w, r).is_one()) {
            return Err(Error::DegenerateCone);
        }
        match dim {
            2 => {
                for [a, b] in triangulate::subdivide_segment(&inside) {
                    cones.push(vec![inside[a].clone(), inside[b].clone()]);
                }
            }
            3 => {
                for [a, b, c] in triangulate::place_triangulate(&inside) {
                    cones.push(vec![inside[a].clone(), inside[b].clone(), inside[c].clone()]);
                }
            }
            _ => return Err(Error::DimensionMismatch { expected: 3, got: dim }),
        }
    }
    let mut fan = Fan::from_cones(dim, cones);
    // rays are exactly the given support, even if unused by any cone
    for r in rays {
        if fan.ray_index(r).is_none() {
            return Err(Error::SupportIncomplete(r.to_string()));
        }
    }
    fan.rays.shrink_to_fit();
    Ok(fan)
}
