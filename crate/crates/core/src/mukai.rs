//! Mukai vectors over the algebraic part of a K3 Mukai lattice.
//!
//! A Mukai vector `(r, D, s)` has rank `r ∈ H⁰`, divisor class `D` in the
//! Picard lattice and `s ∈ H⁴`. The pairing is the intersection form on
//! `H²` and its negative on `H⁰ ⊕ H⁴`:
//! `((r, D, s), (r′, D′, s′)) = D·D′ − r s′ − s r′`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::lattice::IntegralLattice;
use crate::linalg::IntMatrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicMukaiLattice {
    pic: IntegralLattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MukaiVector {
    pub r: BigInt,
    pub d: Vec<BigInt>,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, d: Vec<BigInt>, s: impl Into<BigInt>) -> Self {
        MukaiVector { r: r.into(), d, s: s.into() }
    }

    pub fn from_i64(r: i64, d: &[i64], s: i64) -> Self {
        MukaiVector::new(r, d.iter().map(|&x| BigInt::from(x)).collect(), s)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        MukaiVector { r: &self.r * k, d: self.d.iter().map(|x| x * k).collect(), s: &self.s * k }
    }

    /// Coordinates `(r, s, D₁, …, D_ρ)` in the full lattice of
    /// [`AlgebraicMukaiLattice::full_lattice`].
    pub fn coordinates(&self) -> Vec<BigInt> {
        let mut out = vec![self.r.clone(), self.s.clone()];
        out.extend(self.d.iter().cloned());
        out
    }

    fn add_scaled(&self, k: &BigInt, other: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + k * &other.r,
            d: self.d.iter().zip(&other.d).map(|(x, y)| x + k * y).collect(),
            s: &self.s + k * &other.s,
        }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(ToString::to_string).collect();
        write!(f, "({}, [{}], {})", self.r, d.join(", "), self.s)
    }
}

impl AlgebraicMukaiLattice {
    pub fn new(pic: IntegralLattice) -> Self {
        AlgebraicMukaiLattice { pic }
    }

    pub fn pic(&self) -> &IntegralLattice {
        &self.pic
    }

    /// The Gram matrix `[[0, −1], [−1, 0]] ⊕ pic` in the coordinates of
    /// [`MukaiVector::coordinates`].
    pub fn full_lattice(&self) -> IntegralLattice {
        let h = IntegralLattice::from_i64(&[&[0, -1], &[-1, 0]]).expect("hyperbolic block");
        h.direct_sum(&self.pic)
    }

    fn check(&self, v: &MukaiVector) -> Result<()> {
        self.pic.check_dim(&v.d)
    }
}

pub fn mukai_pairing(m: &AlgebraicMukaiLattice, v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
    m.check(v)?;
    m.check(w)?;
    Ok(m.pic.pairing(&v.d, &w.d)? - &v.r * &w.s - &v.s * &w.r)
}

pub fn is_spherical(m: &AlgebraicMukaiLattice, v: &MukaiVector) -> Result<bool> {
    Ok(mukai_pairing(m, v, v)? == BigInt::from(-2))
}

pub fn is_isotropic(m: &AlgebraicMukaiLattice, v: &MukaiVector) -> Result<bool> {
    Ok(mukai_pairing(m, v, v)?.is_zero())
}

/// Reflection `v ↦ v + (v, σ)·σ` in a spherical class `σ`.
pub fn spherical_twist(m: &AlgebraicMukaiLattice, v: &MukaiVector, sph: &MukaiVector) -> Result<MukaiVector> {
    if !is_spherical(m, sph)? {
        return Err(Error::NotSpherical(sph.to_string()));
    }
    let k = mukai_pairing(m, v, sph)?;
    Ok(v.add_scaled(&k, sph))
}

/// Second Chern class `D²/2 + r − s` of an object with Mukai vector
/// `(r, D, s)`, using `χ = r + s`.
pub fn c2_from_mukai(m: &AlgebraicMukaiLattice, v: &MukaiVector) -> Result<BigInt> {
    m.check(v)?;
    let d2 = m.pic.evaluate(&v.d)?;
    if d2.is_odd() {
        return Err(Error::OddSquare(format!("D² = {d2}")));
    }
    Ok(d2 / 2 + &v.r - &v.s)
}

/// gcd of all intersection numbers `D₁·D₂`, i.e. of the Gram entries.
pub fn decomposable_index(l: &IntegralLattice) -> BigInt {
    l.gram().content()
}

/// `gcd(24, decomposable_index)`, a bound on the index of the surface.
pub fn index_upper_bound(l: &IntegralLattice) -> BigInt {
    decomposable_index(l).gcd(&BigInt::from(24))
}

/// Whether `gcd(n(nrs + r − s), m) = gcd(n, m)`, given `gcd(r, s, m) = 1`.
pub fn index_transfer_check(r: &BigInt, s: &BigInt, n: &BigInt, modulus: &BigInt) -> Result<bool> {
    if !modulus.is_positive() {
        return Err(Error::Precondition(format!("modulus {modulus} must be positive")));
    }
    if !r.gcd(s).gcd(modulus).is_one() {
        return Err(Error::Precondition(format!("gcd({r}, {s}, {modulus}) ≠ 1")));
    }
    let c2 = n * (n * r * s + r - s);
    Ok(c2.gcd(modulus) == n.gcd(modulus))
}

/// Number of Fourier–Mukai partners `2^(τ(n)−1)` of a K3 with Picard
/// lattice `⟨2n⟩`, with the value 1 at `n = 1`.
pub fn fm_partner_count(n: &BigInt) -> Result<BigInt> {
    if n < &BigInt::one() {
        return Err(Error::Precondition(format!("n = {n} must be at least 1")));
    }
    let tau = arith::omega(n);
    Ok(BigInt::one() << tau.saturating_sub(1))
}

/// The least positive `b` with `b·c ≡ 1 (mod n)`.
pub fn pic_inverse_degree(c: &BigInt, n: &BigInt) -> Result<BigInt> {
    if n < &BigInt::from(2) {
        return Err(Error::Precondition(format!("modulus {n} must be at least 2")));
    }
    arith::mod_inverse(c, n).ok_or_else(|| Error::Precondition(format!("gcd({c}, {n}) ≠ 1")))
}

/// The Picard part `⟨f, Σ⟩` of an elliptic K3 with a section: Gram
/// `[[0, 1], [1, −2]]`.
pub fn elliptic_pic() -> IntegralLattice {
    IntegralLattice::with_labels(IntMatrix::from_i64(&[&[0, 1], &[1, -2]]), &["f", "Σ"]).expect("fibre/section lattice")
}

/// Images of `(1, 0, 0)` and `(0, 0, 1)` under the relative Jacobian
/// action of `[[c, a], [d, b]] ∈ SL₂(ℤ)`: `(0, a·f, c)` and
/// `(b, d(f + Σ), 0)`, as vectors over [`elliptic_pic`].
pub fn jacobian_action_images(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Result<(MukaiVector, MukaiVector)> {
    let det = c * b - a * d;
    if !det.is_one() {
        return Err(Error::Precondition(format!("cb − ad = {det}, expected 1")));
    }
    let first = MukaiVector::new(BigInt::zero(), vec![a.clone(), BigInt::zero()], c.clone());
    let second = MukaiVector::new(b.clone(), vec![d.clone(), d.clone()], BigInt::zero());
    Ok((first, second))
}
