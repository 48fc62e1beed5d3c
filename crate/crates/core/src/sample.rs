//! Random canonical Fano 3-topes in a box, for property checks.

use rand::Rng;

use crate::lattice::MVector;
use crate::polytope::{convex_hull, Polytope};

/// Grows the simplex `⟨e1, e2, e3, −e1−e2−e3⟩` by random points of
/// `[−r, r]³`, keeping a point only if the hull stays canonical Fano with
/// the origin as its interior point.
pub fn random_canonical_fano<R: Rng>(rng: &mut R, r: i64, additions: usize) -> Polytope {
    let mut pts: Vec<MVector> =
        vec![[1, 0, 0].into(), [0, 1, 0].into(), [0, 0, 1].into(), [-1, -1, -1].into()];
    let mut hull = convex_hull(&pts);
    let mut added = 0;
    for _ in 0..additions * 40 {
        if added == additions {
            break;
        }
        let x = MVector::from([rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)]);
        if hull.contains(&x) {
            continue;
        }
        pts.push(x);
        let next = convex_hull(&pts);
        if next.is_canonical_fano() && next.interior_lattice_points() == [MVector::zero(3)] {
            hull = next;
            pts = hull.vertices().to_vec();
            added += 1;
        } else {
            pts.pop();
        }
    }
    hull
}
