//! The 49 canonical Fano 3-topes with three-dimensional Fine interior,
//! together with their expected table values and the structural checks
//! performed on them.

mod data;
mod moves;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub use moves::{
    closure_laws_hold, coarsening_drop, degeneration_split, lattice_coarsen, lattice_refine_cover, Coarsening,
    CoverInvariants, DegenerationSplit, SplitComponent,
};
pub use verify::{
    compare, compute_entry, global_checks, verify_entry, verify_entry_against, Check, Computed, EntryReport,
};

use crate::error::{Error, Result};
use crate::fine::fine_interior;
use crate::hypersurface::AdeMultiset;
use num_traits::Zero;

use crate::lattice::{rat, MVector};
use crate::polytope::{convex_hull, lattice_isomorphic, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    A,
    B,
    C,
    D,
    E,
}

impl Class {
    pub const ALL: [Class; 5] = [Class::A, Class::B, Class::C, Class::D, Class::E];

    /// Classes with `l*(Δ_can) = 2`.
    pub fn is_kanev(&self) -> bool {
        matches!(self, Class::A | Class::B)
    }

    /// The multiple of `F(Δ)` that the maximal polytope is a translate of.
    pub fn index(&self) -> i64 {
        if self.is_kanev() {
            6
        } else {
            4
        }
    }

    /// Named points of the class.
    pub fn point(&self, name: &str) -> Option<MVector> {
        data::points(*self).iter().find(|(n, _)| *n == name).map(|(_, p)| MVector::from(*p))
    }

    pub fn delta_can(&self) -> Polytope {
        let pts: Vec<MVector> = data::delta_can(*self).iter().map(|n| self.point(n).unwrap()).collect();
        convex_hull(&pts)
    }

    /// The reference Fine interior of the class.
    pub fn fine_interior(&self) -> Polytope {
        let pts: Vec<MVector> = data::fine_interior(*self)
            .iter()
            .map(|v| MVector::new(v.iter().map(|&(n, d)| rat(n, d)).collect()))
            .collect();
        convex_hull(&pts)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Class::A => "a",
            Class::B => "b",
            Class::C => "c",
            Class::D => "d",
            Class::E => "e",
        };
        f.write_str(s)
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_end_matches(')') {
            "a" => Ok(Class::A),
            "b" => Ok(Class::B),
            "c" => Ok(Class::C),
            "d" => Ok(Class::D),
            "e" => Ok(Class::E),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub lattice_points: usize,
    pub ambient: AdeMultiset,
    pub canonical: AdeMultiset,
    pub picard: u32,
    /// Id of the canonical closure when the entry is not canonically closed.
    pub closure_id: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub id: String,
    pub class: Class,
    /// Point names spanning `Δ` together with `Δ_can`.
    pub span: Vec<String>,
    pub polytope: Polytope,
    pub expected: Expected,
}

impl AtlasEntry {
    pub fn is_canonically_closed(&self) -> bool {
        self.expected.closure_id.is_none()
    }

    /// Whether every named point is a lattice point of `Δ`.
    pub fn contains_points(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.class.point(n).is_some_and(|p| self.polytope.contains(&p)))
    }
}

fn build(class: Class, raw: &data::RawEntry) -> AtlasEntry {
    let mut pts: Vec<MVector> = data::delta_can(class).iter().map(|n| class.point(n).unwrap()).collect();
    pts.extend(raw.span.iter().map(|n| class.point(n).unwrap_or_else(|| panic!("unknown point {n}"))));
    AtlasEntry {
        id: raw.id.to_string(),
        class,
        span: raw.span.iter().map(|s| s.to_string()).collect(),
        polytope: convex_hull(&pts),
        expected: Expected {
            lattice_points: raw.points,
            ambient: raw.ambient.parse().expect("table label"),
            canonical: raw.canonical.parse().expect("table label"),
            picard: raw.picard,
            closure_id: raw.closure.map(str::to_string),
        },
    }
}

/// All 49 entries: 20 of class a, 26 of class b and one each of c, d, e.
pub fn load_atlas() -> &'static [AtlasEntry] {
    static ATLAS: OnceLock<Vec<AtlasEntry>> = OnceLock::new();
    ATLAS.get_or_init(|| {
        let tables: [(Class, &[data::RawEntry]); 5] = [
            (Class::A, data::TABLE_A),
            (Class::B, data::TABLE_B),
            (Class::C, data::TABLE_C),
            (Class::D, data::TABLE_D),
            (Class::E, data::TABLE_E),
        ];
        tables.iter().flat_map(|(c, rows)| rows.iter().map(|r| build(*c, r))).collect()
    })
}

pub fn entry(id: &str) -> Result<&'static AtlasEntry> {
    load_atlas().iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

pub fn entries_of(class: Class) -> impl Iterator<Item = &'static AtlasEntry> {
    load_atlas().iter().filter(move |e| e.class == class)
}

/// The class whose reference Fine interior is lattice isomorphic to `F`.
pub fn classify_fine_interior(fine: &Polytope) -> Result<Class> {
    Class::ALL
        .into_iter()
        .find(|c| lattice_isomorphic(fine, &c.fine_interior()).is_some())
        .ok_or(Error::UnknownType)
}

pub fn classify(delta: &Polytope) -> Result<Class> {
    classify_fine_interior(&fine_interior(delta)?.polytope)
}

pub const MINIMAL_A: &[&str] = data::MINIMAL_A;
pub const MINIMAL_B: &[&str] = data::MINIMAL_B;
pub const RHO_ISO_A: &[&str] = data::RHO_ISO_A;
pub const RHO_ISO_B: &[&str] = data::RHO_ISO_B;

/// The points that must lie in `Δ` for `P_Δ̃ → P_Δ` to be an isomorphism.
pub fn rho_condition_points(class: Class) -> Result<&'static [&'static str]> {
    match class {
        Class::A => Ok(&["a1", "b1", "d1"]),
        Class::B => Ok(&["a1", "b1", "c1", "d1"]),
        _ => Err(Error::WrongClass(class.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStructure {
    pub class: Class,
    pub maximal: Vec<String>,
    pub minimal: Vec<String>,
    pub minimal_counts: Vec<usize>,
    /// `Δ_max = k · F + t` for a lattice vector `t`.
    pub maximal_is_dilated_fine: bool,
    /// `2 · F_can ⊆ Δ_can` with the same normal fan in the facet plane.
    pub inscribed: bool,
}

impl ClassStructure {
    pub fn holds(&self) -> bool {
        let expected_min: Vec<String> = match self.class {
            Class::A => MINIMAL_A.iter().map(|s| s.to_string()).collect(),
            Class::B => MINIMAL_B.iter().map(|s| s.to_string()).collect(),
            _ => self.maximal.clone(),
        };
        let mut got = self.minimal.clone();
        let mut want = expected_min;
        got.sort();
        want.sort();
        self.maximal.len() == 1 && got == want && self.maximal_is_dilated_fine && self.inscribed
    }
}

/// `q = p + t` for some lattice vector `t`.
pub fn is_lattice_translate(p: &Polytope, q: &Polytope) -> bool {
    if p.vertices().len() != q.vertices().len() || p.is_empty() {
        return false;
    }
    let t = q.vertices()[0].sub(&p.vertices()[0]);
    t.is_integral() && p.translate(&t) == *q
}

fn same_shape_in_plane(outer: &Polytope, inner: &Polytope) -> bool {
    let Some(chart) = outer.chart() else {
        return false;
    };
    if !outer.contains_polytope(inner) || inner.affine_dim() != outer.affine_dim() {
        return false;
    }
    let local = |p: &Polytope| {
        let pts: Vec<MVector> = p.vertices().iter().map(|v| MVector::new(chart.to_local(v))).collect();
        let l = convex_hull(&pts);
        l.facets().iter().map(|h| h.normal.clone()).collect::<Vec<_>>()
    };
    local(outer) == local(inner)
}

pub fn class_structure(class: Class) -> Result<ClassStructure> {
    let entries: Vec<&AtlasEntry> = entries_of(class).collect();
    let maximal: Vec<&AtlasEntry> = entries
        .iter()
        .filter(|e| entries.iter().all(|o| e.polytope.contains_polytope(&o.polytope)))
        .cloned()
        .collect();
    let minimal: Vec<&AtlasEntry> = entries
        .iter()
        .filter(|e| {
            entries
                .iter()
                .all(|o| o.id == e.id || !e.polytope.contains_polytope(&o.polytope))
        })
        .cloned()
        .collect();
    let fine = fine_interior(&maximal.first().ok_or(Error::UnknownType)?.polytope)?.polytope;
    let dilated = fine.dilate(class.index())?;
    let maximal_is_dilated_fine = maximal.len() == 1 && is_lattice_translate(&dilated, &maximal[0].polytope);
    let dcan = class.delta_can();
    let can_normal = {
        let origin = MVector::zero(3);
        let facet = fine
            .facets()
            .iter()
            .find(|h| !h.slack(&origin).is_zero())
            .ok_or(Error::NoAdjointFacet)?;
        facet.normal.clone()
    };
    let two_f_can = fine.face(&can_normal).dilate(2)?;
    let inscribed = same_shape_in_plane(&dcan, &two_f_can);
    Ok(ClassStructure {
        class,
        maximal: maximal.iter().map(|e| e.id.clone()).collect(),
        minimal_counts: minimal.iter().map(|e| e.polytope.num_lattice_points()).collect(),
        minimal: minimal.iter().map(|e| e.id.clone()).collect(),
        maximal_is_dilated_fine,
        inscribed,
    })
}

/// Per class: the unique maximal entry, the minimal entries and the shape
/// relations between `Δ_max`, `F(Δ)` and `Δ_can`.
pub fn verify_extremal_structure() -> Result<Vec<ClassStructure>> {
    Class::ALL.iter().map(|c| class_structure(*c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_by_class() {
        let counts: Vec<usize> = Class::ALL.iter().map(|c| entries_of(*c).count()).collect();
        assert_eq!(counts, vec![20, 26, 1, 1, 1]);
        assert_eq!(load_atlas().iter().filter(|e| !e.is_canonically_closed()).count(), 20);
    }

    #[test]
    fn lattice_point_counts_match_tables() {
        for e in load_atlas() {
            assert_eq!(e.polytope.num_lattice_points(), e.expected.lattice_points, "{}", e.id);
            assert!(e.polytope.is_canonical_fano(), "{}", e.id);
        }
    }

    #[test]
    fn maximal_entries() {
        let e = entry("547444").unwrap();
        assert_eq!(e.polytope, Polytope::from_vertices(&[[2, 1, -2], [2, 0, 1], [2, 2, 1], [-4, -2, 1]]));
        assert_eq!(entry("545317").unwrap().class, Class::B);
        assert!(entry("999").is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&entry("547444").unwrap().polytope).unwrap(), Class::A);
        assert_eq!(classify(&entry("545317").unwrap().polytope).unwrap(), Class::B);
        assert_eq!(classify(&entry("c").unwrap().polytope).unwrap(), Class::C);
        let s = Polytope::from_vertices(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(classify(&s).is_err());
    }

    #[test]
    fn class_parse() {
        assert_eq!("b)".parse::<Class>().unwrap(), Class::B);
        assert!("f".parse::<Class>().is_err());
    }
}
