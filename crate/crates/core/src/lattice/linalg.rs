use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::vector::{rat_int, Int, Rat};
use crate::error::{Error, Result};

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn primitive_part(v: &[Int]) -> Result<(Vec<Int>, Int)> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok((v.iter().map(|x| x / &g).collect(), g))
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Generalised cross product: the cofactor vector of `n - 1` vectors in Z^n,
/// so that `dot(cross(vs), x) = det(vs ++ [x])`.
pub fn cross(vs: &[Vec<Int>], n: usize) -> Vec<Int> {
    debug_assert_eq!(vs.len() + 1, n);
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Int>> = vs
                .iter()
                .map(|v| (0..n).filter(|&c| c != j).map(|c| v[c].clone()).collect())
                .collect();
            let d = det(&minor);
            if (n - 1 + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Row-reduces `rows` over Q and returns the rank.
pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    echelon(rows.to_vec()).0
}

pub fn rank_int(rows: &[Vec<Int>]) -> usize {
    rank_rat(&to_rat_rows(rows))
}

pub fn to_rat_rows(rows: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| r.iter().map(rat_int).collect()).collect()
}

fn echelon(mut a: Vec<Vec<Rat>>) -> (usize, Vec<Vec<Rat>>, Vec<usize>) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    (r, a, pivots)
}

/// Solves `a · x = b`; returns a particular solution (free variables set to 0)
/// or `None` when the system is inconsistent.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (rank, red, pivots) = echelon(aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &c) in pivots.iter().enumerate().take(rank) {
        x[c] = red[row][n].clone();
    }
    Some(x)
}

/// Solves a square nonsingular system exactly.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    if rank_rat(a) < a.len() {
        return None;
    }
    solve_linear(a, b)
}

pub fn inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rat> = (0..n)
            .map(|i| if i == j { Rat::one() } else { Rat::zero() })
            .collect();
        cols.push(solve_square(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Column-style Hermite reduction: returns `(rank, U)` with `U` unimodular and
/// `rows · U = [H | 0]` where `H` has `rank` columns.
fn column_reduce(rows: &[Vec<Int>], n: usize) -> (usize, Vec<Vec<Int>>) {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let mut u: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let m = a.len();
    let mut c = 0;
    for i in 0..m {
        if c == n {
            break;
        }
        loop {
            let best = (c..n)
                .filter(|&j| !a[i][j].is_zero())
                .min_by(|&x, &y| a[i][x].abs().cmp(&a[i][y].abs()));
            let Some(j) = best else { break };
            swap_cols(&mut a, &mut u, j, c);
            let mut done = true;
            for j in c + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][c]);
                add_col_multiple(&mut a, &mut u, j, c, &q);
                if !a[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[i][c].is_zero() {
            c += 1;
        }
    }
    (c, u)
}

fn swap_cols(a: &mut [Vec<Int>], u: &mut [Vec<Int>], j: usize, k: usize) {
    if j == k {
        return;
    }
    for r in a.iter_mut().chain(u.iter_mut()) {
        r.swap(j, k);
    }
}

/// col_j -= q · col_c
fn add_col_multiple(a: &mut [Vec<Int>], u: &mut [Vec<Int>], j: usize, c: usize, q: &Int) {
    for r in a.iter_mut().chain(u.iter_mut()) {
        let v = &r[c] * q;
        r[j] -= v;
    }
}

/// A basis of the integer kernel `{x ∈ Z^n : rows · x = 0}`; the result is
/// saturated.
pub fn integer_kernel(rows: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let (rank, u) = column_reduce(rows, n);
    (rank..n)
        .map(|j| hnf_sign(u.iter().map(|r| r[j].clone()).collect()))
        .collect()
}

fn hnf_sign(v: Vec<Int>) -> Vec<Int> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// Row Hermite normal form of a full-row-rank integer matrix.
pub fn hnf_rows(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(p) = best else { break };
            a.swap(p, r);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in 0..n {
                    let v = &a[r][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    for j in 0..n {
                        let v = &a[r][j] * &q;
                        a[i][j] -= v;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// A basis of `span(vs) ∩ Z^n` in row Hermite normal form.
pub fn saturate(vs: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let vs: Vec<Vec<Int>> = vs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if vs.is_empty() {
        return Vec::new();
    }
    let perp = integer_kernel(&vs, n);
    let basis = integer_kernel(&perp, n);
    hnf_rows(&basis)
}

/// Finds an integer covector `ν` with `⟨b_i, ν⟩ = u_i` for a saturated basis.
pub fn lift_functional(basis: &[Vec<Int>], u: &[Int], n: usize) -> Result<Vec<Int>> {
    let (rank, umat) = column_reduce(basis, n);
    if rank < basis.len() {
        return Err(Error::DegenerateCone);
    }
    // basis · U = [H | 0], H lower triangular; solve H y = u.
    let h: Vec<Vec<Int>> = basis
        .iter()
        .map(|b| (0..rank).map(|j| dot(b, &umat.iter().map(|r| r[j].clone()).collect::<Vec<_>>())).collect())
        .collect();
    let mut y: Vec<Int> = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut rhs = u[i].clone();
        for (j, yj) in y.iter().enumerate() {
            rhs -= &h[i][j] * yj;
        }
        if !(&rhs % &h[i][i]).is_zero() {
            return Err(Error::NonIntegral);
        }
        y.push(rhs / &h[i][i]);
    }
    Ok((0..n)
        .map(|r| (0..rank).map(|j| &umat[r][j] * &y[j]).sum())
        .collect())
}

/// Coordinates of `v` in the (independent) rows of `basis`, if `v` lies in
/// their span.
pub fn coords_in_basis(basis: &[Vec<Int>], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = v.len();
    let k = basis.len();
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|r| (0..k).map(|c| rat_int(&basis[c][r])).collect())
        .collect();
    solve_linear(&a, v)
}

pub fn combine(basis: &[Vec<Int>], coeffs: &[Int], n: usize) -> Vec<Int> {
    (0..n)
        .map(|r| basis.iter().zip(coeffs).map(|(b, c)| &b[r] * c).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn determinant_small() {
        let m = vec![iv(&[2, 0, 1]), iv(&[1, 3, 2]), iv(&[1, 1, 1])];
        assert_eq!(det(&m), Int::from(2 * (3 - 2) - 0 + (1 - 3)));
        assert_eq!(det(&[iv(&[0, 1]), iv(&[1, 0])]), Int::from(-1));
    }

    #[test]
    fn cross_is_orthogonal() {
        let c = cross(&[iv(&[-1, 3, 1]), iv(&[2, -3, 1])], 3);
        assert_eq!(c, iv(&[6, 3, -3]));
        assert_eq!(cross(&[iv(&[1, 2])], 2), iv(&[-2, 1]));
    }

    #[test]
    fn kernel_and_saturation() {
        let k = integer_kernel(&[iv(&[2, 1, -1])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(v, &iv(&[2, 1, -1])).is_zero());
        }
        let s = saturate(&[iv(&[2, 0, 0]), iv(&[0, 3, 0])], 3);
        assert_eq!(s, vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])]);
        let s = saturate(&[iv(&[-1, 3, 1]), iv(&[2, -3, 1])], 3);
        assert_eq!(s, vec![iv(&[1, 0, 2]), iv(&[0, 1, 1])]);
    }

    #[test]
    fn lifting_functionals() {
        let b = saturate(&[iv(&[-1, 3, 1]), iv(&[2, -3, 1])], 3);
        let nu = lift_functional(&b, &iv(&[5, -7]), 3).unwrap();
        assert_eq!(dot(&b[0], &nu), Int::from(5));
        assert_eq!(dot(&b[1], &nu), Int::from(-7));
    }

    #[test]
    fn inconsistent_system() {
        let a = to_rat_rows(&[iv(&[1, 0]), iv(&[1, 0])]);
        let b = vec![rat_int(&Int::from(1)), rat_int(&Int::from(2))];
        assert!(solve_linear(&a, &b).is_none());
    }
}
