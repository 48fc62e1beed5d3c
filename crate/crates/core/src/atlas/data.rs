//! The 49 polytopes: named point dictionaries, spanning sets and
//! the expected table columns.

use super::Class;

pub(super) struct RawEntry {
    pub id: &'static str,
    /// Id of the canonical closure for rows that are not canonically closed.
    pub closure: Option<&'static str>,
    pub span: &'static [&'static str],
    pub points: usize,
    pub ambient: &'static str,
    pub canonical: &'static str,
    pub picard: u32,
}

pub(super) const POINTS_A: &[(&str, [i64; 3])] = &[
    ("p", [-4, -2, 1]),
    ("a2", [-2, -1, 0]),
    ("c2", [-2, -1, 1]),
    ("b1", [-1, -1, 1]),
    ("d1", [-1, 0, 1]),
    ("a1", [0, 0, -1]),
    ("0", [0, 0, 0]),
    ("c1", [0, 0, 1]),
    ("ab", [1, 0, 0]),
    ("bc", [1, 0, 1]),
    ("ad", [1, 1, 0]),
    ("cd", [1, 1, 1]),
    ("b", [2, 0, 1]),
    ("a", [2, 1, -2]),
    ("ac1", [2, 1, -1]),
    ("ac2", [2, 1, 0]),
    ("c", [2, 1, 1]),
    ("d", [2, 2, 1]),
];

pub(super) const POINTS_B: &[(&str, [i64; 3])] = &[
    ("p", [-4, 3, -2]),
    ("c2", [-2, 2, -1]),
    ("a2", [-2, 1, -1]),
    ("b1", [-1, 1, 0]),
    ("d1", [-1, 1, -1]),
    ("0", [0, 0, 0]),
    ("a1", [0, -1, 0]),
    ("c1", [0, 1, 0]),
    ("cd", [1, 0, 0]),
    ("ad", [1, -1, 0]),
    ("ab", [1, -1, 1]),
    ("bc", [1, 0, 1]),
    ("ac2", [2, -1, 1]),
    ("ac1", [2, -2, 1]),
    ("d", [2, -1, 0]),
    ("c", [2, 0, 1]),
    ("a", [2, -3, 1]),
    ("b", [2, -1, 2]),
];

pub(super) const POINTS_C: &[(&str, [i64; 3])] =
    &[("a", [2, 1, 5]), ("p", [-2, -1, -3]), ("b", [2, 0, 1]), ("d", [2, 2, 1])];

pub(super) const POINTS_D: &[(&str, [i64; 3])] =
    &[("a", [2, -1, 3]), ("b", [2, 0, 1]), ("c", [2, -1, -1]), ("d", [2, -2, 1]), ("p", [-2, 1, -1])];

pub(super) const POINTS_E: &[(&str, [i64; 3])] =
    &[("a", [2, 0, 1]), ("b", [2, 1, -1]), ("c", [2, 4, -3]), ("d", [2, 1, 1]), ("p", [-2, -2, 1])];

/// Vertices of the facet `Δ_can`, by name.
pub(super) fn delta_can(class: Class) -> &'static [&'static str] {
    match class {
        Class::A | Class::C => &["a", "b", "d"],
        Class::B | Class::D | Class::E => &["a", "b", "c", "d"],
    }
}

pub(super) fn points(class: Class) -> &'static [(&'static str, [i64; 3])] {
    match class {
        Class::A => POINTS_A,
        Class::B => POINTS_B,
        Class::C => POINTS_C,
        Class::D => POINTS_D,
        Class::E => POINTS_E,
    }
}

/// Fine interiors as `(numerator, denominator)` coordinates.
pub(super) fn fine_interior(class: Class) -> &'static [[(i64, i64); 3]] {
    match class {
        Class::A => &[
            [(0, 1), (0, 1), (0, 1)],
            [(1, 1), (1, 3), (0, 1)],
            [(1, 1), (2, 3), (0, 1)],
            [(1, 1), (1, 2), (-1, 2)],
        ],
        Class::B => &[
            [(0, 1), (0, 1), (0, 1)],
            [(1, 1), (-1, 1), (1, 2)],
            [(1, 1), (-2, 3), (1, 3)],
            [(1, 1), (-1, 2), (1, 2)],
            [(1, 1), (-2, 3), (2, 3)],
        ],
        Class::C => &[
            [(0, 1), (0, 1), (0, 1)],
            [(1, 1), (1, 2), (2, 1)],
            [(1, 1), (1, 4), (1, 1)],
            [(1, 1), (3, 4), (1, 1)],
        ],
        Class::D => &[
            [(0, 1), (0, 1), (0, 1)],
            [(1, 1), (-1, 2), (1, 1)],
            [(1, 1), (-1, 2), (0, 1)],
            [(1, 1), (-3, 4), (1, 2)],
            [(1, 1), (-1, 4), (1, 2)],
        ],
        Class::E => &[
            [(0, 1), (0, 1), (0, 1)],
            [(1, 1), (3, 2), (-1, 1)],
            [(1, 1), (3, 4), (0, 1)],
            [(1, 1), (1, 2), (0, 1)],
            [(1, 1), (3, 4), (-1, 2)],
        ],
    }
}

const fn row(
    id: &'static str,
    closure: Option<&'static str>,
    span: &'static [&'static str],
    points: usize,
    ambient: &'static str,
    canonical: &'static str,
    picard: u32,
) -> RawEntry {
    RawEntry { id, closure, span, points, ambient, canonical, picard }
}

pub(super) const TABLE_A: &[RawEntry] = &[
    row("547444", None, &["p"], 18, "3A2", "3A2", 7),
    row("474457", None, &["a2", "c2", "d1", "b1"], 17, "2A2", "3A2", 7),
    row("545932", Some("474457"), &["a2", "c2"], 15, "2A2", "3A2", 7),
    row("532384", Some("474457"), &["a2", "c2", "d1"], 16, "2A2", "3A2", 7),
    row("532606", Some("474457"), &["a2", "d1", "b1"], 16, "2A2", "3A2", 7),
    row("483109", None, &["d1", "b1", "c2", "a1"], 16, "A2+3A1", "A5+A2", 8),
    row("534669", None, &["c2", "d1", "a1"], 15, "2A2+A1", "A5+A2", 8),
    row("534866", None, &["b1", "a1", "d1"], 15, "3A2+A1", "E6+A2", 9),
    row("534667", None, &["c2", "d1", "b1"], 15, "3A2", "A8", 9),
    row("546062", None, &["b1", "a2"], 15, "2A2+A1", "3A2", 7),
    row("546205", None, &["a1", "c2"], 14, "A3+A2", "A5+A2", 8),
    row("546219", None, &["c1", "a2"], 14, "2A2", "3A2", 7),
    row("547524", Some("546219"), &["a2"], 11, "2A2", "3A2", 7),
    row("546863", Some("546219"), &["a2", "bc"], 12, "2A2", "3A2", 7),
    row("539063", Some("546219"), &["a2", "bc", "cd"], 13, "2A2", "3A2", 7),
    row("536498", None, &["b1", "ad", "c2"], 14, "A3+A2", "A8", 9),
    row("537834", None, &["ab", "ad", "c2"], 13, "A4", "A8", 9),
    row("547525", Some("537834"), &["c2"], 11, "A4", "A8", 9),
    row("546862", Some("537834"), &["ab", "c2"], 12, "A4", "A8", 9),
    row("546663", Some("537834"), &["ad", "c2"], 12, "A4", "A8", 9),
];

pub(super) const TABLE_B: &[RawEntry] = &[
    row("545317", None, &["p"], 18, "3A1", "3A1", 4),
    row("354912", None, &["c2", "a2", "d1", "b1"], 17, "2A1", "A2+2A1", 5),
    row("533513", Some("354912"), &["c2", "a2"], 15, "2A1", "A2+2A1", 5),
    row("481575", Some("354912"), &["c2", "a2", "d1"], 16, "2A1", "A2+2A1", 5),
    row("372528", None, &["d1", "b1", "c2", "a1"], 16, "3A1", "A4+A1", 6),
    row("372973", None, &["b1", "d1", "a2", "c1"], 16, "4A1", "A3+2A1", 6),
    row("490511", Some("372973"), &["b1", "d1", "a2"], 15, "4A1", "A3+2A1", 6),
    row("388701", None, &["a1", "d1", "b1", "c1"], 15, "4A1", "D5+A1", 7),
    row("499287", Some("388701"), &["a1", "d1", "b1"], 14, "4A1", "D5+A1", 7),
    row("490485", None, &["c1", "a2", "d1"], 15, "3A1", "A3+2A1", 6),
    row("490481", None, &["c2", "b1", "d1"], 15, "2A2", "A6", 7),
    row("490478", None, &["d1", "c2", "a1"], 15, "3A1", "A4+A1", 6),
    row("535952", None, &["a2", "c1"], 14, "3A1", "A3+2A1", 6),
    row("536013", None, &["a1", "c2"], 14, "A2+A1", "A4+A1", 6),
    row("495687", None, &["d1", "c2", "ab"], 14, "A2+A1", "A6", 7),
    row("539313", Some("495687"), &["d1", "c2"], 13, "A2+A1", "A6", 7),
    row("499291", None, &["c1", "b1", "d1"], 14, "A3+2A1", "D7", 8),
    row("538356", Some("499291"), &["b1", "d1"], 13, "A3+2A1", "D7", 8),
    row("499470", None, &["a2", "bc", "d1"], 14, "A2+2A1", "A4+2A1", 7),
    row("539304", Some("499470"), &["a2", "d1"], 13, "A2+2A1", "A4+2A1", 7),
    row("501298", None, &["c2", "ab", "ad"], 13, "A2", "A6", 7),
    row("547246", Some("501298"), &["c2"], 11, "A2", "A6", 7),
    row("540602", Some("501298"), &["c2", "ab"], 12, "A2", "A6", 7),
    row("501330", None, &["a2", "bc", "cd"], 13, "2A1", "A4+2A1", 7),
    row("547240", Some("501330"), &["a2"], 11, "2A1", "A4+2A1", 7),
    row("540663", Some("501330"), &["a2", "bc"], 12, "2A1", "A4+2A1", 7),
];

pub(super) const TABLE_C: &[RawEntry] = &[row("c", None, &["p"], 15, "2A3", "2A3", 7)];
pub(super) const TABLE_D: &[RawEntry] = &[row("d", None, &["p"], 15, "4A1", "4A1", 5)];
pub(super) const TABLE_E: &[RawEntry] = &[row("e", None, &["p"], 15, "2A2", "2A2", 5)];

/// Spanning sets of the minimal polytopes of classes a and b.
pub(super) const MINIMAL_A: &[&str] = &["547524", "534866", "547525"];
pub(super) const MINIMAL_B: &[&str] = &["538356", "547246", "547240"];

/// Entries on which `P_Δ̃ → P_Δ` is an isomorphism.
pub(super) const RHO_ISO_A: &[&str] = &["547444", "474457", "483109", "534866"];
pub(super) const RHO_ISO_B: &[&str] = &["545317", "354912", "372528", "372973", "388701"];

/// Points dropped before coarsening the lattice in the first coordinate.
pub(super) const COARSEN_DROP_A: &[[i64; 3]] =
    &[[-1, -1, 1], [-1, 0, 1], [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]];
pub(super) const COARSEN_DROP_B: &[[i64; 3]] =
    &[[-1, 1, 0], [-1, 1, -1], [1, 0, 0], [1, -1, 0], [1, -1, 1], [1, 0, 1]];
