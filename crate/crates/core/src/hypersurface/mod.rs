//! Invariants and singularities of a nondegenerate surface `Z_Δ` with Newton
//! polytope `Δ`.
//!
//! Singularities are found on the exceptional curves of the resolution
//! `Z_Σ → Z_Φ`, where `Σ` is the crepant simplicial refinement with rays
//! `S_F(Δ)` and `Φ` is either `Σ_Δ̃` (ambient model) or `Σ_F(Δ)` (canonical
//! model). A second, independent route reads the same data off 2-cone
//! multiplicities; both are exposed so they can be compared.

mod ade;

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

pub use ade::{classify_tree, Ade, AdeMultiset};

use crate::error::{Error, Result};
use crate::fan::{common_refinement, crepant_simplicial_refinement, is_q_cartier, normal_fan, Fan, TorusDivisor};
use crate::fine::FineData;
use crate::lattice::{cone2_multiplicity, cone_inequalities, MVector, NVector};
use crate::polytope::{HalfSpace, Polytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceInvariants {
    pub p_g: usize,
    pub q: usize,
    pub kappa: i64,
    /// `K²` of the minimal model, absent without an adjoint facet.
    pub k2: Option<i64>,
    /// Least `m` with `m · F(Δ)` a lattice polytope; absent for empty `F`.
    pub index_m: Option<u64>,
    /// `|n F(Δ) ∩ M|` for `n = 1, 2, 3`.
    pub sections: Vec<usize>,
    pub chi: i64,
}

impl HypersurfaceInvariants {
    /// `P_n = χ + n(n−1)/2 · K²` for `n ≥ 2`.
    pub fn plurigenus(&self, n: i64) -> Option<i64> {
        match n {
            1 => Some(self.p_g as i64),
            n if n >= 2 => self.k2.map(|k2| self.chi + n * (n - 1) / 2 * k2),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p_g": self.p_g,
            "q": self.q,
            "kappa": self.kappa,
            "K2": self.k2,
            "index_m": self.index_m,
            "sections": self.sections,
            "chi": self.chi,
        })
    }
}

/// The facet at lattice distance 2 from the unique interior point, all
/// other facets being at distance 1.
pub fn adjoint_facet(delta: &Polytope) -> Option<(HalfSpace, Polytope)> {
    let x0 = delta.interior_point()?;
    let two = crate::lattice::rat(2, 1);
    let mut found = None;
    for (h, face) in delta.facet_polytopes() {
        let d = h.slack(&x0);
        if d == two && found.is_none() {
            found = Some((h, face));
        } else if !d.is_one() {
            return None;
        }
    }
    found
}

/// Invariants of the minimal model; `K²` is read off the adjoint facet of the
/// canonical closure, which need not be a facet of `Δ` itself.
pub fn invariants(delta: &Polytope) -> Result<HypersurfaceInvariants> {
    let fine = crate::fine::fine_interior(delta)?;
    if fine.is_empty() {
        return Ok(invariants_with(delta, delta, &fine.polytope));
    }
    let data = FineData::new(delta)?;
    Ok(invariants_with(delta, &data.closure, &data.fine.polytope))
}

fn invariants_with(delta: &Polytope, closure: &Polytope, fine: &Polytope) -> HypersurfaceInvariants {
    let p_g = delta.num_interior_lattice_points();
    let k2 = adjoint_facet(closure).map(|(_, f)| f.num_interior_lattice_points() as i64 - 1);
    let (kappa, index_m, sections) = if fine.is_empty() {
        (-1, None, vec![0; 3])
    } else {
        let kappa = fine.affine_dim().map_or(-1, |d| d.min(2) as i64);
        let sections = (1..=3).map(|n| fine.dilate(n).expect("positive").num_lattice_points()).collect();
        (kappa, fine.denominator_index().to_u64(), sections)
    };
    HypersurfaceInvariants { p_g, q: 0, kappa, k2, index_m, sections, chi: 1 + p_g as i64 }
}

/// An exceptional curve: the `root`-th component of `Z ∩ D_ρ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurveNode {
    pub ray: NVector,
    pub root: usize,
}

/// Intersection graph of exceptional curves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DynkinGraph {
    pub nodes: Vec<CurveNode>,
    pub edges: Vec<(usize, usize)>,
    /// Two curves meeting in more than one point.
    pub multi_edge: bool,
    /// Rays whose curve has positive genus (not a rational double point).
    pub non_rdp: Vec<NVector>,
}

impl DynkinGraph {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// The induced subgraph on `keep`.
    pub fn restrict(&self, keep: impl Fn(&CurveNode) -> bool) -> DynkinGraph {
        let mut map = vec![None; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, nd) in self.nodes.iter().enumerate() {
            if keep(nd) {
                map[i] = Some(nodes.len());
                nodes.push(nd.clone());
            }
        }
        let edges = self.edges.iter().filter_map(|&(a, b)| Some((map[a]?, map[b]?))).collect();
        DynkinGraph { nodes, edges, multi_edge: self.multi_edge, non_rdp: self.non_rdp.clone() }
    }

    /// One ADE label per connected component.
    pub fn classify(&self) -> Result<AdeMultiset> {
        if self.multi_edge || !self.non_rdp.is_empty() {
            return Err(Error::Parse("exceptional curves do not form an ADE configuration".into()));
        }
        let mut out = AdeMultiset::new();
        for comp in self.components() {
            let index: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .filter(|(a, _)| index.contains_key(a))
                .map(|(a, b)| (index[a], index[b]))
                .collect();
            let t = classify_tree(comp.len(), &edges)
                .ok_or_else(|| Error::Parse("exceptional curves do not form an ADE diagram".into()))?;
            out.add(t, 1);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|n| json!({"ray": n.ray.coords().iter().map(|x| x.to_i64()).collect::<Vec<_>>(), "root": n.root})).collect::<Vec<_>>(),
            "edges": self.edges,
            "multi_edge": self.multi_edge,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub ambient: AdeMultiset,
    pub fixed_point: AdeMultiset,
    /// Absent unless `F(Δ)` is full-dimensional.
    pub canonical_rdp: Option<AdeMultiset>,
    pub picard_generic: Option<u32>,
}

impl SingularityReport {
    pub fn to_json(&self, invariants: &HypersurfaceInvariants) -> Value {
        json!({
            "invariants": invariants.to_json(),
            "ambient": self.ambient.entries().iter().map(|(t, c)| json!([t.to_string(), c])).collect::<Vec<_>>(),
            "fixed_point": self.fixed_point.to_string(),
            "canonical_rdp": self.canonical_rdp.as_ref().map(|c| c.labels().iter().map(|t| t.to_string()).collect::<Vec<_>>()),
            "picard_generic": self.picard_generic,
        })
    }
}

/// Everything derived from `Δ` through its Fine interior: the closure used as
/// Newton polytope, the fans `Σ_Δ̃`, `Σ_F` and the crepant refinement `Σ`.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub delta: Polytope,
    pub data: FineData,
    pub tilde_fan: Fan,
    pub fine_fan: Option<Fan>,
    pub refinement: Fan,
}

fn points_on_edge(e: &Polytope) -> usize {
    e.num_lattice_points().saturating_sub(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CurveKind {
    Edge,
    Facet,
}

impl Analysis {
    pub fn new(delta: &Polytope) -> Result<Analysis> {
        let data = FineData::new(delta)?;
        let f = &data.fine.polytope;
        let fine_fan = if f.is_full_dimensional() { Some(normal_fan(f)?) } else { None };
        let closure_fan = normal_fan(&data.closure)?;
        let tilde_fan = match &fine_fan {
            Some(ff) => common_refinement(&closure_fan, ff)?,
            None => normal_fan(&data.closure.minkowski_sum(f))?,
        };
        let refinement = crepant_simplicial_refinement(&tilde_fan, &data.support)?;
        Ok(Analysis { delta: delta.clone(), data, tilde_fan, fine_fan, refinement })
    }

    /// The Newton polytope used for the surface: `C(Δ)`.
    pub fn newton(&self) -> &Polytope {
        &self.data.closure
    }

    pub fn invariants(&self) -> HypersurfaceInvariants {
        invariants_with(&self.delta, &self.data.closure, &self.data.fine.polytope)
    }

    /// Lattice length of the face of the Newton polytope dual to the cone
    /// spanned by `gens` when that face is an edge, else 0.
    pub fn orbit_intersection_count(&self, gens: &[NVector]) -> usize {
        let e = self.newton().minimizing_face(gens);
        if e.affine_dim() == Some(1) {
            points_on_edge(&e)
        } else {
            0
        }
    }

    /// Exceptional curves of `Z_Σ → Z_Φ` and their intersections.
    pub fn curve_graph(&self, phi: &Fan) -> Result<DynkinGraph> {
        let sigma = &self.refinement;
        let newton = self.newton();
        let mut g = DynkinGraph::default();
        let mut curves: BTreeMap<usize, (CurveKind, Vec<usize>)> = BTreeMap::new();
        for (i, r) in sigma.rays().iter().enumerate() {
            if phi.ray_index(r).is_some() {
                continue;
            }
            let face = newton.face(r);
            let (kind, count) = match face.affine_dim() {
                Some(1) => (CurveKind::Edge, points_on_edge(&face)),
                Some(2) => {
                    if face.num_interior_lattice_points() > 0 {
                        g.non_rdp.push(r.clone());
                    }
                    (CurveKind::Facet, 1)
                }
                _ => continue,
            };
            let ids = (0..count)
                .map(|root| {
                    g.nodes.push(CurveNode { ray: r.clone(), root });
                    g.nodes.len() - 1
                })
                .collect();
            curves.insert(i, (kind, ids));
        }
        for (a, b) in sigma.two_cones()? {
            let (Some((ka, na)), Some((kb, nb))) = (curves.get(&a), curves.get(&b)) else {
                continue;
            };
            let l = self.orbit_intersection_count(&[sigma.rays()[a].clone(), sigma.rays()[b].clone()]);
            if l == 0 {
                continue;
            }
            match (ka, kb) {
                (CurveKind::Edge, CurveKind::Edge) => {
                    if na.len() != l || nb.len() != l {
                        return Err(Error::DegenerateCone);
                    }
                    g.edges.extend(na.iter().zip(nb).map(|(&x, &y)| (x, y)));
                }
                (CurveKind::Edge, CurveKind::Facet) => g.edges.extend(na.iter().map(|&x| (x, nb[0]))),
                (CurveKind::Facet, CurveKind::Edge) => g.edges.extend(nb.iter().map(|&y| (na[0], y))),
                (CurveKind::Facet, CurveKind::Facet) => {
                    g.edges.push((na[0], nb[0]));
                    if l > 1 {
                        g.multi_edge = true;
                    }
                }
            }
        }
        g.edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        g.edges.sort();
        Ok(g)
    }

    /// RDPs of `Z_Δ̃` from the exceptional curves over `Σ_Δ̃`.
    pub fn ambient_singularities(&self) -> Result<AdeMultiset> {
        self.curve_graph(&self.tilde_fan)?.classify()
    }

    /// `l` points of type `A_{m−1}` for each 2-cone of multiplicity `m > 1`
    /// whose dual face of the Newton polytope is an edge of length `l`.
    pub fn two_cone_singularities(&self, fan: &Fan) -> Result<AdeMultiset> {
        two_cone_singularities(self.newton(), fan)
    }

    pub fn ambient_singularities_by_cones(&self) -> Result<AdeMultiset> {
        self.two_cone_singularities(&self.tilde_fan)
    }

    /// Generators of the normal cone of `F(Δ)` at the vertex 0, if 0 is a vertex.
    pub fn fixed_point_cone(&self) -> Option<Vec<NVector>> {
        let f = &self.data.fine.polytope;
        let origin = MVector::zero(f.dim());
        if !f.is_full_dimensional() || !f.vertices().contains(&origin) {
            return None;
        }
        Some(f.facets().iter().filter(|h| h.slack(&origin).is_zero()).map(|h| h.normal.clone()).collect())
    }

    /// Exceptional curves over support rays strictly inside the cone at the
    /// vertex 0 of `F(Δ)`.
    pub fn fixed_point_dynkin(&self) -> Result<DynkinGraph> {
        let (Some(cone), Some(ff)) = (self.fixed_point_cone(), &self.fine_fan) else {
            return Ok(DynkinGraph::default());
        };
        let ineq = cone_inequalities(&cone)?;
        Ok(self.curve_graph(ff)?.restrict(|n| ineq.contains_in_relative_interior(&n.ray)))
    }

    /// RDPs of the canonical model `Z_F(Δ)`.
    pub fn canonical_model_singularities(&self) -> Result<AdeMultiset> {
        let ff = self.fine_fan.as_ref().ok_or(Error::NotFullDimensional)?;
        self.curve_graph(ff)?.classify()
    }

    /// Residual 2-cone contributions of `Σ_F` plus the fixed-point diagram.
    pub fn canonical_model_singularities_by_cones(&self) -> Result<AdeMultiset> {
        let ff = self.fine_fan.as_ref().ok_or(Error::NotFullDimensional)?;
        let mut out = self.two_cone_singularities(ff)?;
        out.extend(&self.fixed_point_dynkin()?.classify()?);
        Ok(out)
    }

    pub fn generic_picard(&self) -> Result<u32> {
        Ok(1 + self.canonical_model_singularities()?.total_rank())
    }

    pub fn report(&self) -> Result<SingularityReport> {
        let canonical_rdp = match self.fine_fan {
            Some(_) => Some(self.canonical_model_singularities()?),
            None => None,
        };
        Ok(SingularityReport {
            ambient: self.ambient_singularities()?,
            fixed_point: self.fixed_point_dynkin()?.classify()?,
            picard_generic: canonical_rdp.as_ref().map(|c| 1 + c.total_rank()),
            canonical_rdp,
        })
    }
}

/// `l` points of type `A_{m−1}` for each 2-cone of `fan` of multiplicity
/// `m > 1` whose dual face of `newton` is an edge of lattice length `l`.
pub fn two_cone_singularities(newton: &Polytope, fan: &Fan) -> Result<AdeMultiset> {
    let mut out = AdeMultiset::new();
    for (a, b) in fan.two_cones()? {
        let (u, v) = (&fan.rays()[a], &fan.rays()[b]);
        let m = cone2_multiplicity(u, v)?.to_u32().ok_or(Error::DegenerateCone)?;
        let e = newton.minimizing_face(&[u.clone(), v.clone()]);
        if m > 1 && e.affine_dim() == Some(1) {
            out.add(Ade::A(m - 1), points_on_edge(&e));
        }
    }
    Ok(out)
}

/// Whether `P_Δ̃ → P_Δ` is an isomorphism: the divisor of the adjoint facet
/// is Q-Cartier on `Σ_Δ`.
pub fn rho_is_isomorphism(delta: &Polytope) -> Result<bool> {
    let (h, _) = adjoint_facet(delta).ok_or(Error::NoAdjointFacet)?;
    let fan = normal_fan(delta)?;
    let i = fan.ray_index(&h.normal).ok_or(Error::NoAdjointFacet)?;
    Ok(is_q_cartier(&TorusDivisor::prime(&fan, i), &fan)?.is_some())
}
