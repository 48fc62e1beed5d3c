//! Recomputes every atlas row from its spanning set and compares it with the
//! stored expectations.

use serde_json::{json, Value};

use super::{
    class_structure, classify_fine_interior, coarsening_drop, degeneration_split, entries_of, lattice_coarsen,
    lattice_refine_cover, load_atlas, AtlasEntry, Class, Expected, RHO_ISO_A, RHO_ISO_B,
};
use crate::error::Result;
use crate::fan::{cone_is_terminal, crepancy_check, normal_fan};
use crate::fine::canonical_closure;
use crate::hypersurface::{rho_is_isomorphism, Ade, AdeMultiset, Analysis, HypersurfaceInvariants};
use crate::lattice::Rat;

/// Everything recomputed for one entry.
#[derive(Clone, Debug)]
pub struct Computed {
    pub class: Class,
    pub lattice_points: usize,
    pub ambient: AdeMultiset,
    pub canonical: AdeMultiset,
    pub picard: u32,
    pub ambient_by_cones: AdeMultiset,
    pub canonical_by_cones: AdeMultiset,
    pub closure_id: Option<String>,
    pub invariants: HypersurfaceInvariants,
    /// `S_F ⊇ Σ_Δ̃[1]`.
    pub support_covers_tilde: bool,
    pub refinement_terminal: bool,
    pub crepant: bool,
    /// `Σ_Δ̃[1] = Σ_Δ[1]`; only meaningful for closed entries.
    pub same_rays_as_delta: bool,
    pub closure_idempotent: bool,
    /// `D_can` is Q-Cartier on `Σ_Δ`; computed for closed entries only.
    pub rho_isomorphism: Option<bool>,
}

pub fn compute_entry(e: &AtlasEntry) -> Result<Computed> {
    let an = Analysis::new(&e.polytope)?;
    let report = an.report()?;
    let closure = canonical_closure(&e.polytope)?;
    let closure_id = if closure == e.polytope {
        None
    } else {
        load_atlas().iter().find(|o| o.polytope == closure).map(|o| o.id.clone())
    };
    let tilde_rays = an.tilde_fan.rays();
    let support_covers_tilde = tilde_rays.iter().all(|r| an.data.support.contains(r));
    let mut refinement_terminal = true;
    for i in 0..an.refinement.max_cones().len() {
        refinement_terminal &= cone_is_terminal(&an.refinement.cone_rays(i))?;
    }
    let same_rays_as_delta = normal_fan(&e.polytope)?.rays() == tilde_rays;
    Ok(Computed {
        class: classify_fine_interior(&an.data.fine.polytope)?,
        lattice_points: e.polytope.num_lattice_points(),
        ambient: report.ambient,
        canonical: report.canonical_rdp.unwrap_or_default(),
        picard: report.picard_generic.unwrap_or(0),
        ambient_by_cones: an.ambient_singularities_by_cones()?,
        canonical_by_cones: an.canonical_model_singularities_by_cones()?,
        closure_id,
        invariants: an.invariants(),
        support_covers_tilde,
        refinement_terminal,
        crepant: crepancy_check(&closure)?,
        same_rays_as_delta,
        closure_idempotent: canonical_closure(&closure)? == closure,
        rho_isomorphism: if closure == e.polytope { Some(rho_is_isomorphism(&e.polytope)?) } else { None },
    })
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub id: String,
    pub class: Class,
    pub mismatches: Vec<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "class": self.class.to_string(),
            "passed": self.passed(),
            "mismatches": self.mismatches,
        })
    }
}

fn diff<T: PartialEq + std::fmt::Debug>(out: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        out.push(format!("{what}: expected {want:?}, got {got:?}"));
    }
}

/// Compares a computed row against `expected`, which may differ from the
/// stored one.
pub fn compare(e: &AtlasEntry, expected: &Expected, c: &Computed) -> EntryReport {
    let mut m = Vec::new();
    diff(&mut m, "class", c.class, e.class);
    diff(&mut m, "l(Δ)", c.lattice_points, expected.lattice_points);
    diff(&mut m, "ambient", c.ambient.to_string(), expected.ambient.to_string());
    diff(&mut m, "canonical", c.canonical.to_string(), expected.canonical.to_string());
    diff(&mut m, "picard", c.picard, expected.picard);
    diff(&mut m, "closure", c.closure_id.as_deref(), expected.closure_id.as_deref());
    diff(&mut m, "ambient (2-cones)", c.ambient_by_cones.to_string(), c.ambient.to_string());
    diff(&mut m, "canonical (2-cones)", c.canonical_by_cones.to_string(), c.canonical.to_string());
    let inv = &c.invariants;
    let (k2, index) = if e.class.is_kanev() { (1, 6) } else { (2, 4) };
    diff(&mut m, "(p_g, q, K², m)", (inv.p_g, inv.q, inv.k2, inv.index_m), (1, 0, Some(k2), Some(index)));
    if e.class.is_kanev() {
        diff(&mut m, "sections", inv.sections.as_slice(), &[1, 3, 5]);
    }
    diff(&mut m, "S_F ⊇ Σ_Δ̃[1]", c.support_covers_tilde, true);
    diff(&mut m, "refinement terminal", c.refinement_terminal, true);
    diff(&mut m, "crepant", c.crepant, true);
    diff(&mut m, "C(C(Δ)) = C(Δ)", c.closure_idempotent, true);
    if expected.closure_id.is_none() {
        diff(&mut m, "Σ_Δ̃[1] = Σ_Δ[1]", c.same_rays_as_delta, true);
    }
    let rho_listed = RHO_ISO_A.contains(&e.id.as_str()) || RHO_ISO_B.contains(&e.id.as_str());
    if let (true, Some(rho)) = (e.class.is_kanev(), c.rho_isomorphism) {
        diff(&mut m, "D_can Q-Cartier", rho, rho_listed);
    }
    EntryReport { id: e.id.clone(), class: e.class, mismatches: m }
}

pub fn verify_entry(e: &AtlasEntry) -> EntryReport {
    verify_entry_against(e, &e.expected)
}

pub fn verify_entry_against(e: &AtlasEntry, expected: &Expected) -> EntryReport {
    match compute_entry(e) {
        Ok(c) => compare(e, expected, &c),
        Err(err) => EntryReport { id: e.id.clone(), class: e.class, mismatches: vec![err.to_string()] },
    }
}

/// A named whole-atlas check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Check {
        Check { name: name.to_string(), passed, detail }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Check {
        match r {
            Ok((ok, detail)) => Check::new(name, ok, detail),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"check": self.name, "passed": self.passed, "detail": self.detail})
    }
}

fn class_counts() -> (bool, String) {
    let counts: Vec<usize> = Class::ALL.iter().map(|c| entries_of(*c).count()).collect();
    (counts == [20, 26, 1, 1, 1], format!("{counts:?}"))
}

fn structure() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for c in Class::ALL {
        let s = class_structure(c)?;
        ok &= s.holds();
        parts.push(format!("{c}: max {} min {:?}", s.maximal.join(","), s.minimal_counts));
    }
    Ok((ok, parts.join("; ")))
}

fn splits() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for c in Class::ALL {
        let max = class_structure(c)?.maximal;
        let Some(id) = max.first() else {
            return Ok((false, format!("{c}: no maximal entry")));
        };
        let s = degeneration_split(super::entry(id)?)?;
        let (k2, a1) = if c.is_kanev() { (2, 3) } else { (1, 4) };
        let mut want = AdeMultiset::new();
        want.add(Ade::A(1), a1);
        for comp in &s.components {
            ok &= comp.k2 == Rat::from_integer(k2.into()) && comp.edge_ac == want;
            if c.is_kanev() {
                ok &= comp.six_volume == Rat::from_integer(18.into());
            }
        }
        ok &= !c.is_kanev() || s.shared_reflexive;
        parts.push(format!("{c}: K² {} {}", s.components[0].k2, s.components[0].edge_ac));
    }
    Ok((ok, parts.join("; ")))
}

fn moves() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for c in Class::ALL {
        let id = class_structure(c)?.maximal.first().cloned().unwrap_or_default();
        let e = super::entry(&id)?;
        let co = lattice_coarsen(&e.polytope, &coarsening_drop(e), 0, 2)?;
        ok &= co.reflexive;
        if !c.is_kanev() {
            ok &= co.kept_points == 11;
            let cover = lattice_refine_cover(e)?;
            ok &= (cover.p_g, cover.can_interior_points, cover.k2) == (3, 5, 4) && cover.quadric_relation;
            parts.push(format!("{c}: kept {} l*' {} l*'_can {}", co.kept_points, cover.p_g, cover.can_interior_points));
        } else {
            parts.push(format!("{c}: coarsening reflexive {}", co.reflexive));
        }
    }
    Ok((ok, parts.join("; ")))
}

/// The checks that concern the atlas as a whole rather than single rows.
pub fn global_checks() -> Vec<Check> {
    vec![
        {
            let (ok, d) = class_counts();
            Check::new("class sizes", ok, d)
        },
        Check::from_result("maximal and minimal polytopes", structure()),
        Check::from_result("degeneration splits", splits()),
        Check::from_result("lattice coarsening and refinement", moves()),
    ]
}
