use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_fine::atlas::{entries_of, load_atlas, Class};
use toric_fine::fan::{cartier_data, common_refinement, normal_fan, reid_witness, TorusDivisor};
use toric_fine::fine::{canonical_closure, fine_interior, support_set};
use toric_fine::hypersurface::{adjoint_facet, Analysis};
use toric_fine::lattice::{cone2_multiplicity, det, plane_lattice_basis, rat, Int, MVector, NVector, Rat};
use toric_fine::polytope::{convex_hull, lattice_isomorphic, Polytope};
use toric_fine::sample::random_canonical_fano;

fn points3(n: usize, r: i64) -> impl Strategy<Value = Vec<MVector>> {
    prop::collection::vec([-r..=r, -r..=r, -r..=r], n).prop_map(|v| v.into_iter().map(MVector::from).collect())
}

fn full_hull(pts: &[MVector]) -> Option<Polytope> {
    let p = convex_hull(pts);
    p.is_full_dimensional().then_some(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn primitive_part_factors(v in [-30i64..=30, -30i64..=30, -30i64..=30]) {
        let v = NVector::from(v);
        prop_assume!(!v.is_zero());
        let (p, g) = v.primitive_part().unwrap();
        prop_assert!(p.is_primitive());
        prop_assert_eq!(p.scale(&g), v);
    }

    #[test]
    fn multiplicity_is_a_determinant_in_the_plane_basis(u in [-9i64..=9, -9i64..=9, -9i64..=9], v in [-9i64..=9, -9i64..=9, -9i64..=9]) {
        let (u, v) = (NVector::from(u), NVector::from(v));
        prop_assume!(!u.is_zero() && !v.is_zero());
        let (u, v) = (u.primitive().unwrap(), v.primitive().unwrap());
        let Ok((b1, b2)) = plane_lattice_basis(&u, &v) else {
            return Ok(());
        };
        // coordinates of u and v in the basis, by Cramer's rule on the first nonzero minor
        let cols = [b1.coords(), b2.coords()];
        let (i, j) = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .find(|&(i, j)| &cols[0][i] * &cols[1][j] != &cols[0][j] * &cols[1][i])
            .unwrap();
        let minor = |x: &[Int], y: &[Int]| &x[i] * &y[j] - &x[j] * &y[i];
        let d = minor(cols[0], cols[1]);
        let (uc, vc) = (u.coords(), v.coords());
        let coords = |w: &[Int]| (minor(w, cols[1]) / &d, minor(cols[0], w) / &d);
        let (u1, u2) = coords(uc);
        let (v1, v2) = coords(vc);
        let m = (u1 * v2 - u2 * v1).magnitude().clone();
        prop_assert_eq!(Int::from(m), cone2_multiplicity(&u, &v).unwrap());
    }

    #[test]
    fn facets_are_supporting(pts in points3(7, 3)) {
        let p = convex_hull(&pts);
        for h in p.facets() {
            let min = p.vertices().iter().map(|v| v.pair(&h.normal)).min().unwrap();
            prop_assert_eq!(min, h.level.clone());
        }
    }

    #[test]
    fn volume_scales_cubically(pts in points3(6, 3), n in 1i64..4) {
        let Some(p) = full_hull(&pts) else {
            return Ok(());
        };
        let scaled = p.dilate(n).unwrap().volume().unwrap();
        prop_assert_eq!(scaled, p.volume().unwrap() * rat(n * n * n, 1));
    }

    #[test]
    fn polygon_fine_interior_is_hull_of_interior_points(pts in prop::collection::vec([-4i64..=4, -4i64..=4], 5)) {
        let p = convex_hull(&pts.into_iter().map(MVector::from).collect::<Vec<_>>());
        let inner = p.interior_lattice_points();
        prop_assume!(p.is_full_dimensional() && !inner.is_empty());
        prop_assert_eq!(fine_interior(&p).unwrap().polytope, convex_hull(&inner));
    }
}

#[test]
fn atlas_hulls_round_trip_and_isomorphism_is_reflexive() {
    for e in load_atlas() {
        assert_eq!(convex_hull(&e.polytope.lattice_points()), e.polytope, "{}", e.id);
        let m = lattice_isomorphic(&e.polytope, &e.polytope).expect("reflexive");
        assert_eq!(m.apply_polytope(&e.polytope), e.polytope);
    }
    let ids: Vec<&Polytope> = entries_of(Class::B).take(6).map(|e| &e.polytope).collect();
    for p in &ids {
        for q in &ids {
            assert_eq!(lattice_isomorphic(p, q).is_some(), lattice_isomorphic(q, p).is_some());
        }
    }
}

#[test]
fn ehrhart_fit_predicts_the_fifth_dilate_on_the_atlas() {
    for e in load_atlas() {
        let counts: Vec<(i64, Rat)> = (1..=4)
            .map(|n| (n, Rat::from_integer(Int::from(e.polytope.dilate(n).unwrap().num_lattice_points()))))
            .collect();
        let mut predicted = Rat::from_integer(Int::from(0));
        for (i, (xi, yi)) in counts.iter().enumerate() {
            let mut term = yi.clone();
            for (j, (xj, _)) in counts.iter().enumerate() {
                if i != j {
                    term *= rat(5 - xj, xi - xj);
                }
            }
            predicted += term;
        }
        let actual = e.polytope.dilate(5).unwrap().num_lattice_points();
        assert_eq!(predicted, Rat::from_integer(Int::from(actual)), "{}", e.id);
    }
}

#[test]
fn fine_interior_is_monotone_on_nested_entries() {
    for class in [Class::A, Class::B] {
        let es: Vec<_> = entries_of(class).collect();
        for small in &es {
            for big in es.iter().filter(|b| b.polytope.contains_polytope(&small.polytope)) {
                let fs = fine_interior(&small.polytope).unwrap().polytope;
                let fb = fine_interior(&big.polytope).unwrap().polytope;
                assert!(fb.contains_polytope(&fs), "{} ⊆ {}", small.id, big.id);
            }
        }
    }
}

#[test]
fn fine_interior_is_a_point_iff_closure_is_reflexive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut samples: Vec<Polytope> = (0..25)
        .map(|_| {
            let k = rng.gen_range(1..=5);
            random_canonical_fano(&mut rng, 3, k)
        })
        .collect();
    samples.push(Polytope::from_vertices(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]));
    samples.extend(load_atlas().iter().take(5).map(|e| e.polytope.clone()));
    for p in samples {
        let f = fine_interior(&p).unwrap().polytope;
        let point = f.vertices().len() == 1;
        let c = canonical_closure(&p).unwrap();
        if p.is_reflexive() {
            assert!(point);
        }
        assert_eq!(c.is_reflexive(), point, "{:?}", p.vertices());
    }
}

#[test]
fn support_set_is_stable_under_closure() {
    for e in load_atlas() {
        let c = canonical_closure(&e.polytope).unwrap();
        assert_eq!(support_set(&e.polytope).unwrap(), support_set(&c).unwrap(), "{}", e.id);
    }
}

#[test]
fn normal_fan_of_a_sum_is_the_common_refinement() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 100 {
        let mut pick = || -> Vec<MVector> {
            (0..5).map(|_| MVector::from([rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)])).collect()
        };
        let (Some(p), Some(q)) = (full_hull(&pick()), full_hull(&pick())) else {
            continue;
        };
        let lhs = normal_fan(&p.minkowski_sum(&q)).unwrap();
        let rhs = common_refinement(&normal_fan(&p).unwrap(), &normal_fan(&q).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{:?} + {:?}", p.vertices(), q.vertices());
        done += 1;
    }
}

#[test]
fn fan_and_singularity_invariants_on_the_atlas() {
    for e in load_atlas() {
        let an = Analysis::new(&e.polytope).unwrap();
        // 2-cones of Σ over edges of the Newton polytope are smooth
        for (a, b) in an.refinement.two_cones().unwrap() {
            let (u, v) = (&an.refinement.rays()[a], &an.refinement.rays()[b]);
            if an.newton().minimizing_face(&[u.clone(), v.clone()]).affine_dim() == Some(1) {
                assert_eq!(cone2_multiplicity(u, v).unwrap(), Int::from(1), "{}", e.id);
            }
        }
        let ff = an.fine_fan.as_ref().unwrap();
        for fan in [&an.tilde_fan, ff, &an.refinement] {
            let k = cartier_data(&TorusDivisor::canonical(fan), fan).is_some();
            let witnesses = (0..fan.max_cones().len()).all(|i| reid_witness(&fan.cone_rays(i)).unwrap().is_some());
            assert_eq!(k, witnesses, "{}", e.id);
        }
        let fixed = an.fixed_point_dynkin().unwrap();
        assert!(!fixed.multi_edge && fixed.non_rdp.is_empty(), "{}", e.id);
        let fixed_types = fixed.classify().unwrap();
        assert_eq!(fixed_types.total_rank() as usize, fixed.nodes.len());
        let residual = an.two_cone_singularities(ff).unwrap();
        let picard = an.generic_picard().unwrap();
        assert_eq!(picard - 1, fixed.nodes.len() as u32 + residual.total_rank(), "{}", e.id);
        let closure = an.newton();
        let (_, can) = adjoint_facet(closure).unwrap();
        let p_g_k = can.num_interior_lattice_points();
        assert_eq!(p_g_k as i64, an.invariants().k2.unwrap() + 1);
        assert_eq!(p_g_k, if e.class.is_kanev() { 2 } else { 3 });
        if e.expected.closure_id.is_some() {
            let closed = Analysis::new(closure).unwrap();
            assert_eq!(
                an.canonical_model_singularities().unwrap(),
                closed.canonical_model_singularities().unwrap(),
                "{}",
                e.id
            );
        }
    }
}

#[test]
fn determinant_oracle_for_unimodular_cones() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let rows: Vec<Vec<Int>> =
            (0..3).map(|_| (0..3).map(|_| Int::from(rng.gen_range(-4i64..=4))).collect()).collect();
        let d = det(&rows);
        if d == Int::from(1) || d == Int::from(-1) {
            let gens: Vec<NVector> = rows.into_iter().map(NVector::new).collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    assert_eq!(cone2_multiplicity(&gens[i], &gens[j]).unwrap(), Int::from(1));
                }
            }
        }
    }
}
