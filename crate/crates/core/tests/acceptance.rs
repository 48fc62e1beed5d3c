//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_fine::atlas::{
    coarsening_drop, degeneration_split, entries_of, entry, lattice_coarsen, lattice_refine_cover,
    load_atlas, rho_condition_points, verify_extremal_structure, Class, RHO_ISO_A, RHO_ISO_B,
};
use toric_fine::fan::{cone_is_terminal, crepancy_check, normal_fan};
use toric_fine::fine::{canonical_closure, fine_interior};
use toric_fine::hypersurface::{invariants, rho_is_isomorphism, AdeMultiset, Analysis};
use toric_fine::lattice::{cone2_multiplicity, cone_inequalities, cross, gcd_all, hilbert_basis, rat, Int, MVector, NVector, Rat};
use toric_fine::polytope::{convex_hull, lattice_isomorphic, Polytope};
use toric_fine::sample::random_canonical_fano;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ade(s: &str) -> AdeMultiset {
    s.parse().unwrap()
}

fn frac_poly(vs: &[[(i64, i64); 3]]) -> Polytope {
    convex_hull(&vs.iter().map(|v| MVector::new(v.iter().map(|&(n, d)| rat(n, d)).collect())).collect::<Vec<_>>())
}

fn fine_interiors_exact() -> Outcome {
    let cases: [(&str, Polytope); 5] = [
        ("547444", frac_poly(&[[(0, 1), (0, 1), (0, 1)], [(1, 1), (1, 3), (0, 1)], [(1, 1), (2, 3), (0, 1)], [(1, 1), (1, 2), (-1, 2)]])),
        (
            "545317",
            frac_poly(&[
                [(0, 1), (0, 1), (0, 1)],
                [(1, 1), (-1, 1), (1, 2)],
                [(1, 1), (-2, 3), (1, 3)],
                [(1, 1), (-1, 2), (1, 2)],
                [(1, 1), (-2, 3), (2, 3)],
            ]),
        ),
        ("c", frac_poly(&[[(0, 1), (0, 1), (0, 1)], [(1, 1), (1, 2), (2, 1)], [(1, 1), (1, 4), (1, 1)], [(1, 1), (3, 4), (1, 1)]])),
        (
            "d",
            frac_poly(&[
                [(0, 1), (0, 1), (0, 1)],
                [(1, 1), (-1, 2), (1, 1)],
                [(1, 1), (-1, 2), (0, 1)],
                [(1, 1), (-3, 4), (1, 2)],
                [(1, 1), (-1, 4), (1, 2)],
            ]),
        ),
        (
            "e",
            frac_poly(&[
                [(0, 1), (0, 1), (0, 1)],
                [(1, 1), (3, 2), (-1, 1)],
                [(1, 1), (3, 4), (0, 1)],
                [(1, 1), (1, 2), (0, 1)],
                [(1, 1), (3, 4), (-1, 2)],
            ]),
        ),
    ];
    for (id, want) in cases {
        let e = entry(id).map_err(|e| e.to_string())?;
        let fi = fine_interior(&e.polytope).map_err(|e| e.to_string())?;
        ensure!(fi.verify(&e.polytope), "{id}: cutting certificate rejected");
        let mut got = fi.polytope.vertices().to_vec();
        let mut exp = want.vertices().to_vec();
        got.sort();
        exp.sort();
        ensure!(got == exp, "{id}: vertices {got:?}, expected {exp:?}");
    }
    Ok(())
}

fn five_types() -> Outcome {
    let atlas = load_atlas();
    let fines: Vec<Polytope> =
        atlas.iter().map(|e| fine_interior(&e.polytope).map(|f| f.polytope)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let n = fines.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(map) = lattice_isomorphic(&fines[i], &fines[j]) {
                ensure!(map.apply_polytope(&fines[i]) == fines[j], "map {} -> {} is not onto", atlas[i].id, atlas[j].id);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                ensure!(atlas[i].class != atlas[j].class, "{} and {} should be isomorphic", atlas[i].id, atlas[j].id);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut sizes: Vec<(Class, usize)> = Vec::new();
    for members in groups.values() {
        let class = atlas[members[0]].class;
        ensure!(members.iter().all(|&m| atlas[m].class == class), "mixed class in one isomorphism type");
        sizes.push((class, members.len()));
    }
    sizes.sort();
    let want = vec![(Class::A, 20), (Class::B, 26), (Class::C, 1), (Class::D, 1), (Class::E, 1)];
    ensure!(sizes == want, "types {sizes:?}");
    Ok(())
}

fn table_reproduction() -> Outcome {
    let spot = [("534866", 15, "3A2+A1", "E6+A2", 9), ("499291", 14, "A3+2A1", "D7", 8)];
    for (id, l, amb, can, rho) in spot {
        let x = &entry(id).unwrap().expected;
        ensure!((x.lattice_points, &x.ambient, &x.canonical, x.picard) == (l, &ade(amb), &ade(can), rho), "{id}: stored row differs");
    }
    let mut checked = 0;
    for e in load_atlas().iter().filter(|e| e.class.is_kanev()) {
        let an = Analysis::new(&e.polytope).map_err(|x| format!("{}: {x}", e.id))?;
        let r = an.report().map_err(|x| format!("{}: {x}", e.id))?;
        let x = &e.expected;
        let l = e.polytope.num_lattice_points();
        let can = r.canonical_rdp.clone().unwrap_or_default();
        let rho = r.picard_generic.unwrap_or(0);
        ensure!(
            (l, &r.ambient, &can, rho) == (x.lattice_points, &x.ambient, &x.canonical, x.picard),
            "{}: got ({l}, {}, {can}, {rho}), table ({}, {}, {}, {})",
            e.id, r.ambient, x.lattice_points, x.ambient, x.canonical, x.picard
        );
        let amb2 = an.ambient_singularities_by_cones().map_err(|x| x.to_string())?;
        let can2 = an.canonical_model_singularities_by_cones().map_err(|x| x.to_string())?;
        ensure!(amb2 == r.ambient && can2 == can, "{}: 2-cone route gives ({amb2}, {can2})", e.id);
        checked += 1;
    }
    ensure!(checked == 46, "{checked} rows");
    Ok(())
}

fn kanev_todorov() -> Outcome {
    for e in load_atlas() {
        let inv = invariants(&e.polytope).map_err(|x| x.to_string())?;
        if e.class.is_kanev() {
            ensure!(
                (inv.p_g, inv.k2, inv.index_m, inv.sections.as_slice()) == (1, Some(1), Some(6), &[1, 3, 5][..]),
                "{}: {inv:?}",
                e.id
            );
        } else {
            ensure!((inv.p_g, inv.q, inv.k2, inv.index_m) == (1, 0, Some(2), Some(4)), "{}: {inv:?}", e.id);
        }
    }
    for (id, rdp, rho) in [("c", "2A3", 7), ("d", "4A1", 5), ("e", "2A2", 5)] {
        let an = Analysis::new(&entry(id).unwrap().polytope).map_err(|x| x.to_string())?;
        let r = an.report().map_err(|x| x.to_string())?;
        ensure!(r.canonical_rdp == Some(ade(rdp)) && r.picard_generic == Some(rho), "{id}: {r:?}");
    }
    Ok(())
}

fn closure_laws(p: &Polytope) -> Result<bool, String> {
    let f = fine_interior(p).map_err(|x| x.to_string())?.polytope;
    let c = canonical_closure(p).map_err(|x| x.to_string())?;
    let fc = fine_interior(&c).map_err(|x| x.to_string())?.polytope;
    let cc = canonical_closure(&c).map_err(|x| x.to_string())?;
    Ok(fc == f && cc == c && c.contains_polytope(p))
}

fn closures() -> Outcome {
    let mut arrows = [0usize; 2];
    for e in load_atlas() {
        ensure!(closure_laws(&e.polytope)?, "{}: closure laws fail", e.id);
        let c = canonical_closure(&e.polytope).map_err(|x| x.to_string())?;
        match &e.expected.closure_id {
            Some(parent) => {
                ensure!(c == entry(parent).unwrap().polytope, "{} should close to {parent}", e.id);
                arrows[if e.class == Class::A { 0 } else { 1 }] += 1;
            }
            None => ensure!(c == e.polytope, "{} should be closed", e.id),
        }
    }
    ensure!(arrows == [9, 11], "arrow rows {arrows:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..100 {
        let additions = rng.gen_range(1..=8);
        let p = random_canonical_fano(&mut rng, 5, additions);
        ensure!(p.is_canonical_fano(), "sample {i} is not canonical Fano");
        ensure!(closure_laws(&p)?, "sample {i}: closure laws fail on {:?}", p.vertices());
    }
    Ok(())
}

fn structure() -> Outcome {
    let report = verify_extremal_structure().map_err(|x| x.to_string())?;
    let maximal = [("547444", Class::A), ("545317", Class::B), ("c", Class::C), ("d", Class::D), ("e", Class::E)];
    for s in &report {
        ensure!(s.holds(), "{}: {s:?}", s.class);
        let want = maximal.iter().find(|m| m.1 == s.class).unwrap().0;
        ensure!(s.maximal == [want], "{}: maximal {:?}", s.class, s.maximal);
        ensure!(s.maximal_is_dilated_fine && s.inscribed, "{}: shape relations", s.class);
    }
    let minimal: [(Class, [(&str, usize); 3]); 2] = [
        (Class::A, [("547524", 11), ("534866", 15), ("547525", 11)]),
        (Class::B, [("538356", 13), ("547246", 11), ("547240", 11)]),
    ];
    for (class, want) in minimal {
        let s = report.iter().find(|s| s.class == class).unwrap();
        let got: HashMap<&str, usize> = s.minimal.iter().map(String::as_str).zip(s.minimal_counts.iter().copied()).collect();
        let want: HashMap<&str, usize> = want.into_iter().collect();
        ensure!(got == want, "{class}: minimal {got:?}");
        let maxp = &entry(&s.maximal[0]).unwrap().polytope;
        let fmax = fine_interior(maxp).unwrap().polytope;
        for e in entries_of(class) {
            ensure!(maxp.contains_polytope(&e.polytope), "{} not inside the maximal polytope", e.id);
            ensure!(fine_interior(&e.polytope).unwrap().polytope == fmax, "{}: Fine interior differs", e.id);
            ensure!(
                want.keys().any(|m| e.polytope.contains_polytope(&entry(m).unwrap().polytope)),
                "{} contains no minimal polytope",
                e.id
            );
        }
    }
    for c in [Class::C, Class::D, Class::E] {
        let s = report.iter().find(|s| s.class == c).unwrap();
        ensure!(s.maximal == s.minimal, "{c}: maximal differs from minimal");
    }
    Ok(())
}

fn crepancy_suite() -> Outcome {
    for e in load_atlas() {
        let an = Analysis::new(&e.polytope).map_err(|x| format!("{}: {x}", e.id))?;
        for r in an.tilde_fan.rays() {
            ensure!(an.data.support.contains(r), "{}: ray {r} of the ambient fan is not in S_F", e.id);
        }
        for i in 0..an.refinement.max_cones().len() {
            let cone = an.refinement.cone_rays(i);
            ensure!(cone_is_terminal(&cone).map_err(|x| x.to_string())?, "{}: cone {cone:?} not terminal", e.id);
        }
        ensure!(crepancy_check(an.newton()).map_err(|x| x.to_string())?, "{}: not crepant", e.id);
        let closed = e.expected.closure_id.is_none();
        if closed {
            let delta_rays = normal_fan(&e.polytope).map_err(|x| x.to_string())?.rays().to_vec();
            ensure!(delta_rays == an.tilde_fan.rays(), "{}: Σ_Δ̃ and Σ_Δ have different rays", e.id);
        }
        if closed && e.class.is_kanev() {
            let q_cartier = rho_is_isomorphism(&e.polytope).map_err(|x| x.to_string())?;
            let listed = RHO_ISO_A.contains(&e.id.as_str()) || RHO_ISO_B.contains(&e.id.as_str());
            let by_points = e.contains_points(rho_condition_points(e.class).unwrap());
            ensure!(q_cartier == listed, "{}: Q-Cartier {q_cartier}, listed {listed}", e.id);
            ensure!(q_cartier == by_points, "{}: Q-Cartier {q_cartier}, point condition {by_points}", e.id);
        }
    }
    ensure!(RHO_ISO_A.len() == 4 && RHO_ISO_B.len() == 5, "list sizes");
    Ok(())
}

fn degenerations() -> Outcome {
    for id in ["547444", "545317", "c", "d", "e"] {
        let e = entry(id).unwrap();
        let s = degeneration_split(e).map_err(|x| format!("{id}: {x}"))?;
        let (k2, edge) = if e.class.is_kanev() { (2, "3A1") } else { (1, "4A1") };
        for c in &s.components {
            ensure!(c.k2 == rat(k2, 1), "{id}: K² {}", c.k2);
            ensure!(c.edge_ac == ade(edge), "{id}: edge singularities {}", c.edge_ac);
            if e.class.is_kanev() {
                ensure!(c.six_volume == rat(18, 1), "{id}: 6 vol {}", c.six_volume);
            }
        }
        if e.class.is_kanev() {
            ensure!(s.shared_reflexive, "{id}: shared facet not reflexive");
        }
    }
    let b = Class::B;
    let (a, c) = (b.point("a").unwrap(), b.point("c").unwrap());
    ensure!(a.sub(&c) == MVector::from([0, -3, 0]), "a - c in class b");
    Ok(())
}

fn lattice_moves() -> Outcome {
    let drops: [(&str, [[i64; 3]; 6]); 2] = [
        ("547444", [[-1, -1, 1], [-1, 0, 1], [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]),
        ("545317", [[-1, 1, 0], [-1, 1, -1], [1, 0, 0], [1, -1, 0], [1, -1, 1], [1, 0, 1]]),
    ];
    for (id, pts) in drops {
        let e = entry(id).unwrap();
        let dropped: Vec<MVector> = pts.iter().map(|p| MVector::from(*p)).collect();
        let co = lattice_coarsen(&e.polytope, &dropped, 0, 2).map_err(|x| format!("{id}: {x}"))?;
        ensure!(co.reflexive, "{id}: coarsening not reflexive");
        ensure!(co.polytope.num_interior_lattice_points() == 1, "{id}: interior points");
    }
    for id in ["c", "d", "e"] {
        let e = entry(id).unwrap();
        let dropped = coarsening_drop(e);
        ensure!(dropped.len() == 4, "{id}: {} dropped points", dropped.len());
        let co = lattice_coarsen(&e.polytope, &dropped, 0, 2).map_err(|x| format!("{id}: {x}"))?;
        ensure!(co.reflexive && co.kept_points == 11, "{id}: reflexive {} kept {}", co.reflexive, co.kept_points);
        let cover = lattice_refine_cover(e).map_err(|x| x.to_string())?;
        ensure!(
            (cover.p_g, cover.can_interior_points, cover.k2) == (3, 5, 4),
            "{id}: cover ({}, {}, {})",
            cover.p_g,
            cover.can_interior_points,
            cover.k2
        );
        let q = &cover.quadric_points;
        ensure!(q.len() == 3 && q[1].sub(&q[0]) == q[2].sub(&q[1]), "{id}: 2F_can points {q:?}");
    }
    Ok(())
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<MVector> {
    (0..n).map(|_| MVector::from([rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)])).collect()
}

fn random_full_polytope(rng: &mut ChaCha8Rng, r: i64) -> Polytope {
    loop {
        let p = convex_hull(&random_points(rng, 6, r));
        if p.is_full_dimensional() {
            return p;
        }
    }
}

fn random_primitive(rng: &mut ChaCha8Rng, r: i64) -> NVector {
    loop {
        let v = NVector::from([rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)]);
        if let Ok(p) = v.primitive() {
            return p;
        }
    }
}

/// Lagrange interpolation through `(x_i, y_i)`, evaluated at `x`.
fn interpolate(pts: &[(i64, Rat)], x: i64) -> Rat {
    let mut total = Rat::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                term *= rat(x - xj, xi - xj);
            }
        }
        total += term;
    }
    total
}

fn decomposes(v: &NVector, hb: &[NVector], cone: &toric_fine::lattice::ConeInequalities, memo: &mut HashMap<NVector, bool>) -> bool {
    if v.is_zero() {
        return true;
    }
    if let Some(&b) = memo.get(v) {
        return b;
    }
    let ok = hb.iter().any(|h| {
        let w = v.sub(h);
        cone.contains(&w) && decomposes(&w, hb, cone, memo)
    });
    memo.insert(v.clone(), ok);
    ok
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..30 {
        let pts = random_points(&mut rng, 8, 3);
        let p = convex_hull(&pts);
        let mut hs = p.facets().to_vec();
        hs.extend(p.equations().iter().cloned());
        ensure!(Polytope::from_halfspaces(3, &hs) == p, "hull/facet round trip on {pts:?}");
        ensure!(pts.iter().all(|x| p.contains(x)), "hull misses an input point");
        ensure!(p.vertices().iter().all(|v| pts.contains(v)), "vertex not among inputs");
    }
    for _ in 0..20 {
        let p = convex_hull(&random_points(&mut rng, 5, 3));
        let q = convex_hull(&random_points(&mut rng, 5, 3));
        let s = p.minkowski_sum(&q);
        for _ in 0..10 {
            let nu = NVector::from([rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
            ensure!(s.ord(&nu) == p.ord(&nu) + q.ord(&nu), "support not additive at {nu}");
        }
    }
    for _ in 0..8 {
        let p = random_full_polytope(&mut rng, 2);
        let samples: Vec<(i64, Rat)> = (0..4)
            .map(|n| {
                let count = if n == 0 { 1 } else { p.dilate(n).unwrap().num_lattice_points() };
                (n, Rat::from_integer(Int::from(count)))
            })
            .collect();
        let predicted = interpolate(&samples, 5);
        let actual = Rat::from_integer(Int::from(p.dilate(5).unwrap().num_lattice_points()));
        ensure!(predicted == actual, "Ehrhart prediction {predicted} vs {actual} for {:?}", p.vertices());
    }
    for _ in 0..15 {
        let gens: Vec<NVector> = (0..3).map(|_| random_primitive(&mut rng, 3)).collect();
        let rows: Vec<Vec<Int>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        if cross(&rows[..2], 3).iter().all(Zero::is_zero) || toric_fine::lattice::det(&rows).is_zero() {
            continue;
        }
        let hb = hilbert_basis(&gens).map_err(|x| x.to_string())?;
        let cone = cone_inequalities(&gens).map_err(|x| x.to_string())?;
        for g in &gens {
            ensure!(hb.contains(g), "generator {g} missing from the Hilbert basis");
        }
        for h in &hb {
            ensure!(cone.contains(h), "{h} outside the cone");
            for g in hb.iter().filter(|g| *g != h) {
                ensure!(!cone.contains(&h.sub(g)), "{h} is reducible by {g}");
            }
        }
        let mut memo = HashMap::new();
        for _ in 0..20 {
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
            let v = gens.iter().zip(&c).fold(NVector::zero(3), |acc, (g, k)| acc.add(&g.scale(&Int::from(*k))));
            let w = v.add(&hb[rng.gen_range(0..hb.len())]);
            ensure!(decomposes(&w, &hb, &cone, &mut memo), "{w} does not decompose");
        }
    }
    let mut pairs = 0;
    while pairs < 200 {
        let u = random_primitive(&mut rng, 6);
        let v = random_primitive(&mut rng, 6);
        let c = cross(&[u.coords().to_vec(), v.coords().to_vec()], 3);
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let m = cone2_multiplicity(&u, &v).map_err(|x| x.to_string())?;
        ensure!(m == gcd_all(&c), "multiplicity of ({u}, {v}): {m} vs {}", gcd_all(&c));
        pairs += 1;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Fine-interior exactness", fine_interiors_exact),
        ("five isomorphism types of Fine interiors", five_types),
        ("table reproduction", table_reproduction),
        ("Kanev and Todorov invariants", kanev_todorov),
        ("closure laws", closures),
        ("maximal and minimal polytopes", structure),
        ("fans and crepancy", crepancy_suite),
        ("degeneration splits", degenerations),
        ("subfamily lattice moves", lattice_moves),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
