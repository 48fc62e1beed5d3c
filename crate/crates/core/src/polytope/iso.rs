use std::collections::BTreeSet;

use num_traits::{One, Signed};

use super::Polytope;
use crate::lattice::{det, inverse, rank_rat, Int, MVector, Rat};

/// `x ↦ U x + t` with `U` unimodular and `t` a lattice vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularAffineMap {
    pub matrix: Vec<Vec<Int>>,
    pub translation: Vec<Int>,
}

impl UnimodularAffineMap {
    pub fn apply(&self, x: &MVector) -> MVector {
        let n = self.translation.len();
        MVector::new(
            (0..n)
                .map(|i| {
                    let mut acc = Rat::from_integer(self.translation[i].clone());
                    for j in 0..n {
                        acc += Rat::from_integer(self.matrix[i][j].clone()) * &x.coords()[j];
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn apply_polytope(&self, p: &Polytope) -> Polytope {
        let pts: Vec<MVector> = p.vertices().iter().map(|v| self.apply(v)).collect();
        super::convex_hull(&pts)
    }
}

/// Vertex indices forming an affine basis of a full-dimensional polytope.
fn affine_basis(p: &Polytope) -> Vec<usize> {
    let vs = p.vertices();
    let mut chosen = vec![0];
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    for i in 1..vs.len() {
        let d = vs[i].sub(&vs[0]).coords().to_vec();
        let mut trial = dirs.clone();
        trial.push(d.clone());
        if rank_rat(&trial) > dirs.len() {
            dirs = trial;
            chosen.push(i);
        }
        if dirs.len() == p.dim() {
            break;
        }
    }
    chosen
}

/// Searches for a unimodular affine map carrying `p` onto `q`, matching an
/// affine basis of `p` against ordered vertex tuples of `q`.
pub fn lattice_isomorphic(p: &Polytope, q: &Polytope) -> Option<UnimodularAffineMap> {
    let n = p.dim();
    if n != q.dim()
        || !p.is_full_dimensional()
        || !q.is_full_dimensional()
        || p.vertices().len() != q.vertices().len()
        || p.facets().len() != q.facets().len()
    {
        return None;
    }
    let basis = affine_basis(p);
    let pv = p.vertices();
    let qv = q.vertices();
    // columns v_i - v_0
    let vmat: Vec<Vec<Rat>> = (0..n)
        .map(|r| basis[1..].iter().map(|&i| &pv[i].coords()[r] - &pv[basis[0]].coords()[r]).collect())
        .collect();
    let vinv = inverse(&vmat)?;
    let target: BTreeSet<&MVector> = qv.iter().collect();
    let mut tuple = Vec::with_capacity(n + 1);
    search(&mut tuple, n + 1, qv.len(), &mut |idx: &[usize]| {
        let w0 = &qv[idx[0]];
        let wmat: Vec<Vec<Rat>> = (0..n)
            .map(|r| idx[1..].iter().map(|&i| &qv[i].coords()[r] - &w0.coords()[r]).collect())
            .collect();
        let mut u: Vec<Vec<Int>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let x: Rat = (0..n).map(|k| &wmat[r][k] * &vinv[k][c]).sum();
                if !x.is_integer() {
                    return None;
                }
                row.push(x.to_integer());
            }
            u.push(row);
        }
        if !det(&u).abs().is_one() {
            return None;
        }
        let v0 = &pv[basis[0]];
        let mut t = Vec::with_capacity(n);
        for r in 0..n {
            let x: Rat = &w0.coords()[r]
                - (0..n).map(|c| Rat::from_integer(u[r][c].clone()) * &v0.coords()[c]).sum::<Rat>();
            if !x.is_integer() {
                return None;
            }
            t.push(x.to_integer());
        }
        let map = UnimodularAffineMap { matrix: u, translation: t };
        let image: BTreeSet<MVector> = pv.iter().map(|v| map.apply(v)).collect();
        (image.iter().collect::<BTreeSet<_>>() == target).then_some(map)
    })
}

fn search<T>(
    tuple: &mut Vec<usize>,
    len: usize,
    n: usize,
    f: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if tuple.len() == len {
        return f(tuple);
    }
    for i in 0..n {
        if tuple.contains(&i) {
            continue;
        }
        tuple.push(i);
        if let Some(r) = search(tuple, len, n, f) {
            return Some(r);
        }
        tuple.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_isomorphic_to_maximal_a() {
        let p = Polytope::from_vertices(&[[1, 2, 4], [1, 0, 0], [1, 4, 2], [-2, -4, -5]]);
        let q = Polytope::from_vertices(&[[2, 1, -2], [2, 0, 1], [2, 2, 1], [-4, -2, 1]]);
        let m = lattice_isomorphic(&p, &q).expect("isomorphic");
        assert_eq!(m.apply_polytope(&p), q);
        assert!(lattice_isomorphic(&q, &p).is_some());
    }

    #[test]
    fn non_isomorphic_simplices() {
        let p = Polytope::from_vertices(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let q = Polytope::from_vertices(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]]);
        assert!(lattice_isomorphic(&p, &q).is_none());
        assert!(lattice_isomorphic(&p, &p).is_some());
    }
}
