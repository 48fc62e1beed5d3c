use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{One, Signed, Zero};

use super::linalg::{
    coords_in_basis, combine, cross, dot, integer_kernel, inverse, lift_functional,
    primitive_part, rank_int, saturate, to_rat_rows,
};
use super::vector::{Int, NVector, Rat};
use crate::error::{Error, Result};

/// Inequality description of a polyhedral cone inside its ambient lattice:
/// `⟨x, e⟩ = 0` for every equation and `⟨x, f⟩ ≥ 0` for every facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeInequalities {
    pub equations: Vec<NVector>,
    pub facets: Vec<NVector>,
}

impl ConeInequalities {
    pub fn contains(&self, v: &NVector) -> bool {
        self.equations.iter().all(|e| dot(e.coords(), v.coords()).is_zero())
            && self.facets.iter().all(|f| !dot(f.coords(), v.coords()).is_negative())
    }

    pub fn contains_in_relative_interior(&self, v: &NVector) -> bool {
        self.equations.iter().all(|e| dot(e.coords(), v.coords()).is_zero())
            && self.facets.iter().all(|f| dot(f.coords(), v.coords()).is_positive())
    }
}

/// A cone expressed in coordinates of its own saturated lattice.
struct LocalCone {
    basis: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    extremes: Vec<Vec<Int>>,
}

fn localize(gens: &[NVector]) -> Result<LocalCone> {
    let n = gens.first().map_or(0, |g| g.dim());
    let mut prim: Vec<Vec<Int>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let (p, _) = primitive_part(g.coords())?;
        if !prim.contains(&p) {
            prim.push(p);
        }
    }
    let basis = saturate(&prim, n);
    let k = basis.len();
    let local: Vec<Vec<Int>> = prim
        .iter()
        .map(|g| {
            let r: Vec<Rat> = g.iter().map(|x| Rat::from_integer(x.clone())).collect();
            coords_in_basis(&basis, &r)
                .expect("generator lies in its own span")
                .into_iter()
                .map(|x| x.to_integer())
                .collect()
        })
        .collect();
    let facets = full_cone_facets(&local, k)?;
    let extremes = extreme_rays(&local, &facets, k);
    Ok(LocalCone { basis, facets, extremes })
}

/// Facet normals of a full-dimensional cone in Z^k given by generators.
fn full_cone_facets(gens: &[Vec<Int>], k: usize) -> Result<Vec<Vec<Int>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut found: BTreeSet<Vec<Int>> = BTreeSet::new();
    if k == 1 {
        let pos = gens.iter().any(|g| g[0].is_positive());
        let neg = gens.iter().any(|g| g[0].is_negative());
        if pos && neg {
            return Err(Error::NotPointed);
        }
        let s = if pos { Int::one() } else { -Int::one() };
        return Ok(vec![vec![s]]);
    }
    for subset in combinations(gens.len(), k - 1) {
        let vs: Vec<Vec<Int>> = subset.iter().map(|&i| gens[i].clone()).collect();
        let c = cross(&vs, k);
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let (c, _) = primitive_part(&c)?;
        let signs: Vec<Int> = gens.iter().map(|g| dot(g, &c)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            found.insert(c);
        } else if signs.iter().all(|s| !s.is_positive()) {
            found.insert(c.iter().map(|x| -x).collect());
        }
    }
    let facets: Vec<Vec<Int>> = found.into_iter().collect();
    if rank_int(&facets) < k {
        return Err(Error::NotPointed);
    }
    Ok(facets)
}

fn extreme_rays(gens: &[Vec<Int>], facets: &[Vec<Int>], k: usize) -> Vec<Vec<Int>> {
    gens.iter()
        .filter(|g| {
            let tight: Vec<Vec<Int>> = facets
                .iter()
                .filter(|f| dot(f, g).is_zero())
                .cloned()
                .collect();
            k == 1 || rank_int(&tight) == k - 1
        })
        .cloned()
        .collect()
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the
/// columns of `g` (a k×k nonsingular matrix given as its k column vectors).
pub(crate) fn parallelepiped_points(cols: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let k = cols.len();
    let g_rows: Vec<Vec<Int>> = (0..k).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let ginv = inverse(&to_rat_rows(&g_rows)).expect("independent generators");
    let steps: Vec<Vec<Rat>> = (0..k).map(|j| (0..k).map(|i| ginv[i][j].clone()).collect()).collect();
    let zero = vec![Rat::zero(); k];
    let mut seen: HashSet<Vec<Rat>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(lam) = queue.pop_front() {
        for s in &steps {
            let next: Vec<Rat> = lam.iter().zip(s).map(|(a, b)| (a + b).fract()).map(|x| {
                if x.is_negative() {
                    x + Rat::one()
                } else {
                    x
                }
            }).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut pts: Vec<Vec<Int>> = seen
        .into_iter()
        .filter(|l| l.iter().any(|x| !x.is_zero()))
        .map(|l| {
            (0..k)
                .map(|r| {
                    let v: Rat = (0..k).map(|c| Rat::from_integer(cols[c][r].clone()) * &l[c]).sum();
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    pts.sort();
    pts
}

/// Minimal generating set of the monoid `cone(gens) ∩ N`, sorted.
pub fn hilbert_basis(gens: &[NVector]) -> Result<Vec<NVector>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let n = first.dim();
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(Vec::new());
    }
    let cone = localize(gens)?;
    let k = cone.basis.len();
    let mut cands: BTreeSet<Vec<Int>> = cone.extremes.iter().cloned().collect();
    for subset in combinations(cone.extremes.len(), k) {
        let cols: Vec<Vec<Int>> = subset.iter().map(|&i| cone.extremes[i].clone()).collect();
        if rank_int(&cols) < k {
            continue;
        }
        cands.extend(parallelepiped_points(&cols));
    }
    let cands: Vec<Vec<Int>> = cands.into_iter().collect();
    let inside = |v: &[Int]| cone.facets.iter().all(|f| !dot(f, v).is_negative());
    let irreducible: Vec<&Vec<Int>> = cands
        .iter()
        .filter(|h| {
            !cands.iter().any(|o| {
                o != *h && {
                    let d: Vec<Int> = h.iter().zip(o).map(|(a, b)| a - b).collect();
                    inside(&d)
                }
            })
        })
        .collect();
    let mut out: Vec<NVector> = irreducible
        .into_iter()
        .map(|h| NVector::new(combine(&cone.basis, h, n)))
        .collect();
    out.sort();
    Ok(out)
}

/// Equations and facet inequalities of `cone(gens)` in the ambient lattice.
pub fn cone_inequalities(gens: &[NVector]) -> Result<ConeInequalities> {
    let n = gens.first().map_or(0, |g| g.dim());
    let cone = localize(gens)?;
    let equations: Vec<NVector> = integer_kernel(&cone.basis, n).into_iter().map(NVector::new).collect();
    let mut facets = Vec::with_capacity(cone.facets.len());
    for f in &cone.facets {
        facets.push(NVector::new(lift_functional(&cone.basis, f, n)?));
    }
    facets.sort();
    Ok(ConeInequalities { equations, facets })
}

/// Extreme primitive generators of `cone(gens)`, sorted.
pub fn cone_extreme_rays(gens: &[NVector]) -> Result<Vec<NVector>> {
    let n = gens.first().map_or(0, |g| g.dim());
    let cone = localize(gens)?;
    let mut out: Vec<NVector> = cone
        .extremes
        .iter()
        .map(|e| NVector::new(combine(&cone.basis, e, n)))
        .collect();
    out.sort();
    Ok(out)
}

/// Rank of the linear span of the given vectors.
pub fn span_dim(vs: &[NVector]) -> usize {
    let rows: Vec<Vec<Int>> = vs.iter().map(|v| v.coords().to_vec()).collect();
    rank_int(&rows)
}
