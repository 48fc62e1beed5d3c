use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Fan;
use crate::error::{Error, Result};
use crate::fine::FineData;
use crate::lattice::{
    cone_extreme_rays, hilbert_basis, rat_int, saturate, solve_linear, Int, MVector, NVector,
    Rat,
};
use crate::polytope::Polytope;

const INDEX_CAP: u64 = 1_000_000;

/// A torus-invariant divisor `Σ a_i D_i`, coefficients indexed like the
/// rays of the fan it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDivisor {
    pub coeffs: Vec<Rat>,
}

impl TorusDivisor {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        TorusDivisor { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TorusDivisor { coeffs: coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect() }
    }

    /// `K = −Σ D_i`.
    pub fn canonical(fan: &Fan) -> Self {
        TorusDivisor { coeffs: vec![-Rat::one(); fan.rays().len()] }
    }

    /// The prime divisor of ray `i`.
    pub fn prime(fan: &Fan, i: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); fan.rays().len()];
        coeffs[i] = Rat::one();
        TorusDivisor { coeffs }
    }

    pub fn add(&self, other: &TorusDivisor) -> Self {
        TorusDivisor { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        TorusDivisor { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// `P_D = {x : ⟨x, ν_i⟩ ≥ −a_i}`.
    pub fn polytope(&self, fan: &Fan) -> Polytope {
        let hs: Vec<_> = fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(r, a)| crate::polytope::HalfSpace::new(r.clone(), -a))
            .collect();
        Polytope::from_halfspaces(fan.dim(), &hs)
    }
}

/// `Z_Σ = −Σ ord_Δ(ν_i) D_i`.
pub fn divisor_from_ord(delta: &Polytope, fan: &Fan) -> TorusDivisor {
    TorusDivisor { coeffs: fan.rays().iter().map(|r| -delta.ord(r)).collect() }
}

/// The local data `m_σ` with `⟨m_σ, ν_i⟩ = −a_i` on each maximal cone, or
/// `None` if some cone admits no solution.
pub fn cartier_data(d: &TorusDivisor, fan: &Fan) -> Option<Vec<MVector>> {
    fan.max_cones()
        .iter()
        .map(|cone| {
            let a: Vec<Vec<Rat>> = cone.iter().map(|&i| fan.rays()[i].to_rational()).collect();
            let b: Vec<Rat> = cone.iter().map(|&i| -&d.coeffs[i]).collect();
            solve_linear(&a, &b).map(MVector::new)
        })
        .collect()
}

/// The Cartier index of a Q-Cartier divisor, `None` if not Q-Cartier.
pub fn is_q_cartier(d: &TorusDivisor, fan: &Fan) -> Result<Option<u64>> {
    let Some(ms) = cartier_data(d, fan) else {
        return Ok(None);
    };
    let mut index = Int::one();
    for m in &ms {
        index = index.lcm(&m.denominator());
    }
    match index.to_u64() {
        Some(i) if i <= INDEX_CAP => Ok(Some(i)),
        _ => Err(Error::IndexOverflow(INDEX_CAP)),
    }
}

pub fn is_basepointfree(d: &TorusDivisor, fan: &Fan) -> Result<bool> {
    let ms = cartier_data(d, fan).ok_or(Error::NotCartier)?;
    if ms.iter().any(|m| !m.is_integral()) {
        return Err(Error::NotCartier);
    }
    Ok(ms.iter().all(|m| {
        fan.rays().iter().zip(&d.coeffs).all(|(r, a)| m.pair(r) >= -a)
    }))
}

/// A rational functional equal to 1 on every generator, and the least `j`
/// making it integral on the lattice spanned by the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidWitness {
    pub m: Vec<Rat>,
    pub j: Int,
}

fn level(m: &[Rat], v: &NVector) -> Rat {
    m.iter().zip(v.coords()).map(|(a, b)| a * rat_int(b)).sum()
}

pub fn reid_witness(gens: &[NVector]) -> Result<Option<ReidWitness>> {
    let rays = cone_extreme_rays(gens)?;
    let a: Vec<Vec<Rat>> = rays.iter().map(|r| r.to_rational()).collect();
    let Some(m) = solve_linear(&a, &vec![Rat::one(); rays.len()]) else {
        return Ok(None);
    };
    let n = gens[0].dim();
    let basis = saturate(&rays.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(), n);
    let mut j = Int::one();
    for b in basis {
        j = j.lcm(level(&m, &NVector::new(b)).denom());
    }
    Ok(Some(ReidWitness { m, j }))
}

fn reid_levels(gens: &[NVector]) -> Result<Option<(Vec<NVector>, Vec<(NVector, Rat)>)>> {
    let Some(w) = reid_witness(gens)? else {
        return Ok(None);
    };
    let rays = cone_extreme_rays(gens)?;
    let hb = hilbert_basis(gens)?;
    let levels = hb.into_iter().map(|h| {
        let l = level(&w.m, &h);
        (h, l)
    });
    Ok(Some((rays, levels.collect())))
}

/// Reid's canonical test: the level-one functional is at least 1 on every
/// nonzero lattice point of the cone.
pub fn cone_is_canonical(gens: &[NVector]) -> Result<bool> {
    let Some((_, levels)) = reid_levels(gens)? else {
        return Ok(false);
    };
    Ok(levels.iter().all(|(_, l)| *l >= Rat::one()))
}

/// Terminal: canonical, and level 1 is attained only on the generators.
pub fn cone_is_terminal(gens: &[NVector]) -> Result<bool> {
    let Some((rays, levels)) = reid_levels(gens)? else {
        return Ok(false);
    };
    let one = Rat::one();
    Ok(levels.iter().all(|(h, l)| *l > one || (*l == one && rays.contains(h))))
}

/// For a canonically closed `Δ`: `ord_F − ord_Δ` is 1 on the support set
/// and at least 1 on every nonzero lattice vector.
pub fn crepancy_check(delta: &Polytope) -> Result<bool> {
    let data = FineData::new(delta)?;
    if data.closure != *delta {
        return Err(Error::NotCanonicallyClosed);
    }
    let f = &data.fine.polytope;
    let exact = data.support.iter().all(|nu| (f.ord(nu) - delta.ord(nu)).is_one());
    Ok(exact && data.fine.verify(delta))
}

/// `D^n = n! · vol(P_D)` for an ample divisor with polytope `P_D`.
pub fn self_intersection_top(p: &Polytope) -> Result<Rat> {
    let vol = p.volume()?;
    let fact: Int = (1..=p.dim() as u64).map(Int::from).product();
    Ok(vol * rat_int(&fact))
}
