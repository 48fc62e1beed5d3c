//! Exact integer and rational linear algebra over the dual lattices M and N.

mod hilbert;
mod linalg;
mod vector;

pub use hilbert::{
    cone_extreme_rays, cone_inequalities, hilbert_basis, span_dim, ConeInequalities,
};
pub(crate) use hilbert::combinations;
pub use linalg::{
    coords_in_basis, combine, cross, det, dot, gcd_all, hnf_rows, integer_kernel, inverse,
    lift_functional, primitive_part, rank_int, rank_rat, saturate, solve_linear, solve_square,
    to_rat_rows,
};
pub use vector::{fmt_rat, int, parse_rat, rat, rat_int, Int, MVector, NVector, Rat};

use num_traits::Signed;

use crate::error::{Error, Result};

/// Basis of the lattice `N ∩ span(u, v)`, in Hermite normal form.
pub fn plane_lattice_basis(u: &NVector, v: &NVector) -> Result<(NVector, NVector)> {
    let n = u.dim();
    let basis = saturate(&[u.coords().to_vec(), v.coords().to_vec()], n);
    if basis.len() != 2 {
        return Err(Error::DegenerateCone);
    }
    let mut it = basis.into_iter().map(NVector::new);
    Ok((it.next().unwrap(), it.next().unwrap()))
}

/// Index of `Zu + Zv` in `N ∩ span(u, v)`; a 2-cone of multiplicity `m`
/// carries a transversal `A_{m-1}` singularity.
pub fn cone2_multiplicity(u: &NVector, v: &NVector) -> Result<Int> {
    let (b1, b2) = plane_lattice_basis(u, v)?;
    let basis = [b1.into_coords(), b2.into_coords()];
    let cu = coords_in_basis(&basis, &u.to_rational()).ok_or(Error::DegenerateCone)?;
    let cv = coords_in_basis(&basis, &v.to_rational()).ok_or(Error::DegenerateCone)?;
    let d = &cu[0] * &cv[1] - &cu[1] * &cv[0];
    Ok(d.abs().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_parts() {
        let (p, g) = NVector::from([6, 3, -3]).primitive_part().unwrap();
        assert_eq!((p, g), (NVector::from([2, 1, -1]), int(3)));
        let (p, g) = NVector::from([-4, 6, 0]).primitive_part().unwrap();
        assert_eq!((p, g), (NVector::from([-2, 3, 0]), int(2)));
        assert_eq!(NVector::from([0, 0, 0]).primitive_part(), Err(Error::ZeroVector));
    }

    #[test]
    fn multiplicities() {
        let m = |a: [i64; 3], b: [i64; 3]| cone2_multiplicity(&a.into(), &b.into()).unwrap();
        assert_eq!(m([-1, 3, 1], [2, -3, 1]), int(3));
        assert_eq!(m([1, 0, 0], [0, 1, 0]), int(1));
        assert_eq!(m([1, 0, 0], [1, 2, 0]), int(2));
        assert_eq!(
            cone2_multiplicity(&NVector::from([1, 2, 3]), &NVector::from([2, 4, 6])),
            Err(Error::DegenerateCone)
        );
    }

    #[test]
    fn plane_bases() {
        let (a, b) = plane_lattice_basis(&[2, 0, 0].into(), &[0, 3, 0].into()).unwrap();
        assert_eq!((a, b), (NVector::from([1, 0, 0]), NVector::from([0, 1, 0])));
        let (a, b) = plane_lattice_basis(&[-1, 3, 1].into(), &[2, -3, 1].into()).unwrap();
        assert_eq!((a, b), (NVector::from([1, 0, 2]), NVector::from([0, 1, 1])));
    }
}
