//! The Fine interior, its support set and the canonical closure.
//!
//! `F(Δ)` is the intersection of the halfspaces `⟨x, ν⟩ ≥ ord_Δ(ν) + 1` over
//! all nonzero `ν ∈ N`. It is computed by a cutting loop that ends with a
//! certificate: on every maximal cone `c` of the normal fan of `F + Δ` the
//! function `ord_F − ord_Δ` is linear, `ν ↦ ⟨w_c, ν⟩`, and is at least 1 on a
//! Hilbert basis of `c`, hence on every nonzero lattice vector of `c`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hilbert_basis, MVector, NVector, Rat};
use crate::polytope::{HalfSpace, Polytope};

/// `ord_P(ν) = min_{x ∈ P} ⟨x, ν⟩`.
pub fn ord(p: &Polytope, nu: &NVector) -> Rat {
    p.ord(nu)
}

/// One linearity cell of `ord_F − ord_Δ` with its certificate data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCell {
    pub rays: Vec<NVector>,
    pub witness: MVector,
    pub hilbert_basis: Vec<NVector>,
}

#[derive(Clone, Debug)]
pub struct FineInterior {
    pub polytope: Polytope,
    pub cuts: Vec<HalfSpace>,
    pub certificate: Vec<CertificateCell>,
}

impl FineInterior {
    pub fn is_empty(&self) -> bool {
        self.polytope.is_empty()
    }

    /// Dimension of `F(Δ)`, `-1` when empty.
    pub fn dimension(&self) -> i64 {
        self.polytope.affine_dim().map_or(-1, |d| d as i64)
    }

    /// `S_F(Δ)`: the primitive `ν` with `ord_F(ν) = ord_Δ(ν) + 1`, sorted.
    pub fn support(&self) -> Result<Vec<NVector>> {
        if self.is_empty() {
            return Err(Error::EmptyFineInterior);
        }
        let mut out = BTreeSet::new();
        for cell in &self.certificate {
            for h in &cell.hilbert_basis {
                if cell.witness.pair(h).is_one() {
                    out.insert(h.clone());
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Re-checks the certificate against `Δ`.
    pub fn verify(&self, delta: &Polytope) -> bool {
        if self.is_empty() {
            return Polytope::from_halfspaces(delta.dim(), &self.cuts).is_empty();
        }
        let one = Rat::one();
        self.certificate.iter().all(|cell| {
            cell.rays.iter().all(|r| {
                self.polytope.ord(r) - delta.ord(r) == cell.witness.pair(r)
            }) && cell.hilbert_basis.iter().all(|h| cell.witness.pair(h) >= one)
        }) && self.cuts.iter().all(|h| delta.ord(&h.normal) + &one == h.level)
    }
}

fn facet_cuts(delta: &Polytope) -> Vec<HalfSpace> {
    delta
        .facets()
        .iter()
        .map(|h| HalfSpace::new(h.normal.clone(), &h.level + Rat::one()))
        .collect()
}

/// Cells of the normal fan of `F' + Δ` together with the witness `w_c`.
fn cells(f: &Polytope, delta: &Polytope) -> Result<Vec<CertificateCell>> {
    let m = f.minkowski_sum(delta);
    let mut out = Vec::with_capacity(m.vertices().len());
    for v in m.vertices() {
        let rays: Vec<NVector> = m
            .facets()
            .iter()
            .filter(|h| h.slack(v).is_zero())
            .map(|h| h.normal.clone())
            .collect();
        let mut s = NVector::zero(m.dim());
        for r in &rays {
            s = s.add(r);
        }
        let witness = f.argmin(&s).sub(delta.argmin(&s));
        let hilbert_basis = hilbert_basis(&rays)?;
        out.push(CertificateCell { rays, witness, hilbert_basis });
    }
    Ok(out)
}

/// Computes `F(Δ)` for a full-dimensional lattice polytope.
pub fn fine_interior(delta: &Polytope) -> Result<FineInterior> {
    if !delta.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let dim = delta.dim();
    let mut cuts = facet_cuts(delta);
    let mut normals: BTreeSet<NVector> = cuts.iter().map(|h| h.normal.clone()).collect();
    loop {
        let f = Polytope::from_halfspaces(dim, &cuts);
        if f.is_empty() {
            return Ok(FineInterior { polytope: f, cuts, certificate: Vec::new() });
        }
        let certificate = cells(&f, delta)?;
        let one = Rat::one();
        let mut violated = false;
        for cell in &certificate {
            for h in &cell.hilbert_basis {
                if cell.witness.pair(h) < one && normals.insert(h.clone()) {
                    cuts.push(HalfSpace::new(h.clone(), delta.ord(h) + &one));
                    violated = true;
                }
            }
        }
        if !violated {
            return Ok(FineInterior { polytope: f, cuts, certificate });
        }
    }
}

pub fn support_set(delta: &Polytope) -> Result<Vec<NVector>> {
    fine_interior(delta)?.support()
}

/// `C(Δ) = {x : ⟨x, ν⟩ ≥ ord_Δ(ν), ν ∈ S_F(Δ)}`.
pub fn closure_from_support(delta: &Polytope, support: &[NVector]) -> Polytope {
    let hs: Vec<HalfSpace> = support.iter().map(|nu| HalfSpace::new(nu.clone(), delta.ord(nu))).collect();
    Polytope::from_halfspaces(delta.dim(), &hs)
}

pub fn canonical_closure(delta: &Polytope) -> Result<Polytope> {
    let support = support_set(delta)?;
    Ok(closure_from_support(delta, &support))
}

pub fn is_canonically_closed(delta: &Polytope) -> Result<bool> {
    Ok(canonical_closure(delta)? == *delta)
}

/// Everything the downstream analysis needs about `Δ` in one pass.
#[derive(Clone, Debug)]
pub struct FineData {
    pub fine: FineInterior,
    pub support: Vec<NVector>,
    pub closure: Polytope,
}

impl FineData {
    pub fn new(delta: &Polytope) -> Result<FineData> {
        let fine = fine_interior(delta)?;
        let support = fine.support()?;
        let closure = closure_from_support(delta, &support);
        Ok(FineData { fine, support, closure })
    }

    pub fn index_m(&self) -> num_bigint::BigInt {
        self.fine.polytope.denominator_index()
    }
}
