//! Degenerations and lattice changes on atlas polytopes.

use num_traits::{One, Signed, Zero};

use super::{data, AtlasEntry, Class};
use crate::error::{Error, Result};
use crate::fan::{normal_fan, self_intersection_top};
use crate::fine::{fine_interior, FineData};
use crate::hypersurface::{two_cone_singularities, Ade, AdeMultiset};
use crate::lattice::{cone2_multiplicity, cross, integer_kernel, rat, rat_int, Int, MVector, Rat};
use crate::polytope::{convex_hull, Polytope};

/// One half of a degeneration: `Y_i` with Newton polytope `Δ_i = ⟨p, a, x, c⟩`.
#[derive(Clone, Debug)]
pub struct SplitComponent {
    pub polytope: Polytope,
    /// `3! · vol(Δ_i)`.
    pub six_volume: Rat,
    /// Lattice distance from `p` to the facet opposite `p`.
    pub height: Int,
    /// `K = −κ · D` where `D` is the divisor of the facet opposite `p`.
    pub kappa: Rat,
    pub k2: Rat,
    pub singularities: AdeMultiset,
    /// The part of `singularities` lying over the edge `⟨a, c⟩`.
    pub edge_ac: AdeMultiset,
}

#[derive(Clone, Debug)]
pub struct DegenerationSplit {
    pub class: Class,
    pub plane_points: [MVector; 3],
    pub shared: Polytope,
    pub shared_reflexive: bool,
    pub components: [SplitComponent; 2],
}

fn split_point(class: Class, name: &str) -> MVector {
    match class.point(name) {
        Some(p) => p,
        // no named point c: use the midpoint of b and d
        None => class.point("b").unwrap().add(&class.point("d").unwrap()).scale(&rat(1, 2)),
    }
}

fn component(delta: &Polytope, p: &MVector, a: &MVector, c: &MVector) -> Result<SplitComponent> {
    let six_volume = self_intersection_top(delta)?;
    let facets = delta.facets();
    let opposite = facets.iter().position(|h| !h.slack(p).is_zero()).ok_or(Error::NotSeparating)?;
    let height = facets[opposite].slack(p).to_integer();
    // Σ λ_i ν_i = 0 gives D_i ≡ (λ_i / λ_opp) D_opp
    let rows: Vec<Vec<Int>> =
        (0..3).map(|j| facets.iter().map(|h| h.normal.coords()[j].clone()).collect()).collect();
    let ker = integer_kernel(&rows, facets.len());
    if ker.len() != 1 {
        return Err(Error::NotSeparating);
    }
    let lambda = &ker[0];
    let kappa = Rat::new(lambda.iter().sum(), lambda[opposite].clone());
    let h = rat_int(&height);
    let k2 = (&h - &kappa) * (&h - &kappa) * &six_volume / (&h * &h);
    let fan = normal_fan(delta)?;
    let singularities = two_cone_singularities(delta, &fan)?;
    let ac = convex_hull(&[a.clone(), c.clone()]);
    let mut edge_ac = AdeMultiset::new();
    for (i, j) in fan.two_cones()? {
        let gens = [fan.rays()[i].clone(), fan.rays()[j].clone()];
        if delta.minimizing_face(&gens) == ac {
            let m = cone2_multiplicity(&gens[0], &gens[1])?;
            if m > Int::one() {
                let len = ac.num_lattice_points() - 1;
                edge_ac.add(Ade::A(u32::try_from(m - 1u32).map_err(|_| Error::DegenerateCone)?), len);
            }
        }
    }
    Ok(SplitComponent { polytope: delta.clone(), six_volume, height, kappa, k2, singularities, edge_ac })
}

/// Splits the maximal polytope of a class along the plane through `p`, `a`
/// and `c` into `⟨p, a, b, c⟩` and `⟨p, a, c, d⟩`.
pub fn degeneration_split(entry: &AtlasEntry) -> Result<DegenerationSplit> {
    let class = entry.class;
    let [p, a, b, c, d] = ["p", "a", "b", "c", "d"].map(|n| split_point(class, n));
    if !entry.polytope.contains(&p) {
        return Err(Error::WrongClass(format!("{} is not the maximal polytope of its class", entry.id)));
    }
    let to_int = |v: &MVector| v.to_integers().ok_or(Error::NonIntegral);
    let normal = cross(&[to_int(&a.sub(&p))?, to_int(&c.sub(&p))?], 3);
    let side = |x: &MVector| -> Result<Int> {
        Ok(to_int(&x.sub(&p))?.iter().zip(&normal).map(|(u, v)| u * v).sum())
    };
    let (sb, sd) = (side(&b)?, side(&d)?);
    if sb.is_zero() || sd.is_zero() || sb.is_positive() == sd.is_positive() {
        return Err(Error::NotSeparating);
    }
    let d1 = convex_hull(&[p.clone(), a.clone(), b, c.clone()]);
    let d2 = convex_hull(&[p.clone(), a.clone(), c.clone(), d]);
    if d1.volume()? + d2.volume()? != entry.polytope.volume()? {
        return Err(Error::NotSeparating);
    }
    let shared = convex_hull(&[p.clone(), a.clone(), c.clone()]);
    Ok(DegenerationSplit {
        class,
        shared_reflexive: shared.is_reflexive(),
        components: [component(&d1, &p, &a, &c)?, component(&d2, &p, &a, &c)?],
        plane_points: [p, a, c],
        shared,
    })
}

#[derive(Clone, Debug)]
pub struct Coarsening {
    pub polytope: Polytope,
    pub reflexive: bool,
    pub kept_points: usize,
}

/// Drops `dropped` from the lattice points of `Δ` and divides coordinate
/// `axis` by `factor`; every kept point must lie in the sublattice.
pub fn lattice_coarsen(delta: &Polytope, dropped: &[MVector], axis: usize, factor: i64) -> Result<Coarsening> {
    if factor <= 0 || axis >= delta.dim() {
        return Err(Error::NonPositiveFactor);
    }
    let f = Int::from(factor);
    let kept: Vec<MVector> = delta.lattice_points().into_iter().filter(|x| !dropped.contains(x)).collect();
    let offenders: Vec<String> = kept
        .iter()
        .filter(|x| !(x.coords()[axis].to_integer() % &f).is_zero())
        .map(|x| x.to_string())
        .collect();
    if !offenders.is_empty() {
        return Err(Error::OutsideSublattice(offenders.join(" ")));
    }
    let polytope = convex_hull(&kept).scale_coordinate(axis, &Rat::new(Int::one(), f));
    Ok(Coarsening { reflexive: polytope.is_reflexive(), kept_points: kept.len(), polytope })
}

/// The points whose coefficients vanish on the coarsened subfamily.
pub fn coarsening_drop(entry: &AtlasEntry) -> Vec<MVector> {
    match entry.class {
        Class::A => data::COARSEN_DROP_A.iter().map(|p| MVector::from(*p)).collect(),
        Class::B => data::COARSEN_DROP_B.iter().map(|p| MVector::from(*p)).collect(),
        _ => entry
            .polytope
            .lattice_points()
            .into_iter()
            .filter(|x| !(x.coords()[0].to_integer() % Int::from(2)).is_zero())
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct CoverInvariants {
    pub refined: Polytope,
    /// `l*(Δ')`, the geometric genus of the cover.
    pub p_g: usize,
    /// `l*(Δ'_can)` in its own plane.
    pub can_interior_points: usize,
    pub k2: i64,
    /// `2 F_can ∩ M` in the original lattice.
    pub quadric_points: Vec<MVector>,
    /// The points are three, collinear and equally spaced.
    pub quadric_relation: bool,
}

/// Invariants of the double cover given by halving the lattice step in the
/// second coordinate.
pub fn lattice_refine_cover(entry: &AtlasEntry) -> Result<CoverInvariants> {
    if entry.class.is_kanev() {
        return Err(Error::WrongClass(entry.class.to_string()));
    }
    let two = rat(2, 1);
    let refined = entry.polytope.scale_coordinate(1, &two);
    let can = entry.class.delta_can().scale_coordinate(1, &two);
    let p_g = refined.num_interior_lattice_points();
    let can_interior_points = can.num_interior_lattice_points();
    let fine = fine_interior(&entry.polytope)?.polytope;
    let origin = MVector::zero(3);
    let can_normal =
        fine.facets().iter().find(|h| !h.slack(&origin).is_zero()).ok_or(Error::NoAdjointFacet)?.normal.clone();
    let quadric_points = fine.face(&can_normal).dilate(2)?.lattice_points();
    let quadric_relation = match quadric_points.as_slice() {
        [y1, y2, y3] => y2.sub(y1) == y3.sub(y2) && y1 != y2,
        _ => false,
    };
    Ok(CoverInvariants {
        refined,
        p_g,
        can_interior_points,
        k2: can_interior_points as i64 - 1,
        quadric_points,
        quadric_relation,
    })
}

/// `F(C(Δ)) = F(Δ)` and `C(C(Δ)) = C(Δ)`.
pub fn closure_laws_hold(delta: &Polytope) -> Result<bool> {
    let data = FineData::new(delta)?;
    let again = FineData::new(&data.closure)?;
    Ok(again.fine.polytope == data.fine.polytope && again.closure == data.closure)
}
