use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// An element of the dual lattice N (facet normals, ray generators).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NVector(Vec<Int>);

/// A point of M ⊗ Q; lattice points are the integral ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MVector(Vec<Rat>);

impl NVector {
    pub fn new(coords: Vec<Int>) -> Self {
        NVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        NVector(vec![Int::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &NVector) -> NVector {
        NVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &NVector) -> NVector {
        NVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> NVector {
        NVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> NVector {
        NVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Splits `self` as `factor · primitive` with `factor ≥ 1`.
    pub fn primitive_part(&self) -> Result<(NVector, Int)> {
        let (p, g) = super::primitive_part(&self.0)?;
        Ok((NVector(p), g))
    }

    pub fn primitive(&self) -> Result<NVector> {
        Ok(self.primitive_part()?.0)
    }

    pub fn is_primitive(&self) -> bool {
        super::gcd_all(&self.0).is_one()
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.0.iter().map(rat_int).collect()
    }
}

impl MVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        MVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        MVector(vec![Rat::zero(); dim])
    }

    pub fn from_ints(coords: &[Int]) -> Self {
        MVector(coords.iter().map(rat_int).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    /// The pairing ⟨m, ν⟩.
    pub fn pair(&self, nu: &NVector) -> Rat {
        debug_assert_eq!(self.dim(), nu.dim());
        let mut acc = Rat::zero();
        for (x, n) in self.0.iter().zip(nu.coords()) {
            if !n.is_zero() {
                acc += x * rat_int(n);
            }
        }
        acc
    }

    pub fn add(&self, other: &MVector) -> MVector {
        MVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MVector) -> MVector {
        MVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> MVector {
        MVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<Int>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> Int {
        self.0
            .iter()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl<const D: usize> From<[i64; D]> for NVector {
    fn from(a: [i64; D]) -> Self {
        NVector(a.iter().map(|&x| Int::from(x)).collect())
    }
}

impl<const D: usize> From<[i64; D]> for MVector {
    fn from(a: [i64; D]) -> Self {
        MVector(a.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }
}

impl From<Vec<Int>> for MVector {
    fn from(v: Vec<Int>) -> Self {
        MVector::from_ints(&v)
    }
}

pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for NVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for MVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}
