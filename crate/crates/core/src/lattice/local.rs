//! Local invariants of rational quadratic forms: Hilbert symbols, Hasse
//! invariants, determinant square classes, and the Hasse–Minkowski isotropy
//! test.
//!
//! Conventions: the Hasse invariant of `⟨d₁,…,dₙ⟩` at a place `v` is
//! `∏_{i<j} (dᵢ,dⱼ)_v`, and `d = ∏ dᵢ` is the determinant. Only primes
//! dividing `2·det` can carry nontrivial data for an integral lattice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntegralLattice;
use crate::arith;
use crate::linalg;
use crate::{Error, Result};

/// A place of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if arith::is_prime(&p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::InvalidPlace(p.to_string()))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Hilbert symbol `(a,b)_v ∈ {±1}` of nonzero integers.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !arith::is_prime(p) {
                return Err(Error::InvalidPlace(p.to_string()));
            }
            Ok(hilbert_at_prime(a, b, p))
        }
    }
}

/// Hilbert symbol of nonzero rationals (`a/b` has the square class of `a·b`).
pub fn hilbert_symbol_rational(a: &BigRational, b: &BigRational, place: &Place) -> Result<i8> {
    hilbert_symbol(&(a.numer() * a.denom()), &(b.numer() * b.denom()), place)
}

fn hilbert_at_prime(a: &BigInt, b: &BigInt, p: &BigInt) -> i8 {
    let (alpha, u) = arith::split_valuation(a, p);
    let (beta, v) = arith::split_valuation(b, p);
    if *p == BigInt::from(2) {
        let eps = |x: &BigInt| ((arith::small_mod(x, 4) - 1) / 2) % 2;
        let omega = |x: &BigInt| {
            let r = arith::small_mod(x, 8);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s: i32 = 1;
        // (-1)^{αβ(p-1)/2}
        if alpha % 2 == 1 && beta % 2 == 1 && arith::small_mod(p, 4) == 3 {
            s = -s;
        }
        if beta % 2 == 1 {
            s *= arith::legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= arith::legendre(&v, p);
        }
        s as i8
    }
}

/// Class of a nonzero rational in `ℚ_p^× / (ℚ_p^×)²`: parity of the
/// valuation plus the unit part (Legendre symbol for odd `p`, residue
/// mod 8 for `p = 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub odd_valuation: bool,
    pub unit: i32,
}

impl SquareClass {
    pub fn of(x: &BigInt, p: &BigInt) -> SquareClass {
        let (v, u) = arith::split_valuation(x, p);
        let unit = if *p == BigInt::from(2) { arith::small_mod(&u, 8) as i32 } else { arith::legendre(&u, p) };
        SquareClass { odd_valuation: v % 2 == 1, unit }
    }

    pub fn is_square(&self) -> bool {
        !self.odd_valuation && self.unit == 1
    }
}

/// Genus fingerprint of a lattice over ℚ and the ℚ_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalInvariants {
    /// `(n₊, n₋)`
    pub signature: (usize, usize),
    pub det_square_class: BTreeMap<BigInt, SquareClass>,
    pub hasse: BTreeMap<BigInt, i8>,
    pub hasse_real: i8,
}

impl LocalInvariants {
    /// Product of the Hasse invariants over every place; `+1` by Hilbert
    /// reciprocity.
    pub fn hasse_product(&self) -> i8 {
        self.hasse.values().fold(self.hasse_real, |acc, h| acc * h)
    }
}

/// Diagonal of the form, each entry replaced by a squarefree integer in its
/// rational square class.
fn diagonal_classes(l: &IntegralLattice) -> Vec<BigInt> {
    linalg::diagonalize_symmetric(l.gram())
        .expect("gram validated symmetric")
        .iter()
        .map(|d| arith::squarefree_part(&(d.numer() * d.denom())))
        .collect()
}

fn hasse_of(diag: &[BigInt], place: &Place) -> i8 {
    let mut h = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            h *= hilbert_symbol(&diag[i], &diag[j], place).expect("nonzero diagonal");
        }
    }
    h
}

fn bad_primes(det: &BigInt) -> Vec<BigInt> {
    let mut s: BTreeSet<BigInt> = arith::prime_divisors(det).into_iter().collect();
    s.insert(BigInt::from(2));
    s.into_iter().collect()
}

/// Signature, determinant square classes and Hasse invariants at the real
/// place and every prime dividing `2·det`.
pub fn local_invariants(l: &IntegralLattice) -> LocalInvariants {
    let diag = diagonal_classes(l);
    let sig = l.signature();
    let primes = bad_primes(l.determinant());
    let det_square_class = primes.iter().map(|p| (p.clone(), SquareClass::of(l.determinant(), p))).collect();
    let hasse = primes.iter().map(|p| (p.clone(), hasse_of(&diag, &Place::Prime(p.clone())))).collect();
    LocalInvariants {
        signature: (sig.positive, sig.negative),
        det_square_class,
        hasse,
        hasse_real: hasse_of(&diag, &Place::Real),
    }
}

/// Compares rank, parity, signature, discriminant group and Hasse symbols.
///
/// This is exact for odd determinant; for even determinant it ignores the
/// finer 2-adic genus symbol and may identify distinct genera.
pub fn genus_equal(l: &IntegralLattice, m: &IntegralLattice) -> bool {
    l.rank() == m.rank()
        && l.is_even() == m.is_even()
        && l.discriminant_group() == m.discriminant_group()
        && local_invariants(l) == local_invariants(m)
}

/// Decides whether the lattice represents zero nontrivially over ℚ.
///
/// * rank 1: never;
/// * rank 2: iff `−det` is a perfect square (for an even Gram matrix
///   `[[2a,b],[b,2c]]` this is the form discriminant `b² − 4ac`);
/// * rank 3: indefinite and `(−1,−d)_p = ε_p` at every `p | 2·det`;
/// * rank 4: indefinite and, at every bad prime, `d` is not a local square
///   or `ε_p = (−1,−1)_p`;
/// * rank ≥ 5: iff indefinite.
pub fn is_isotropic_rational(l: &IntegralLattice) -> bool {
    let n = l.rank();
    match n {
        0 | 1 => false,
        2 => arith::is_square(&-l.determinant()),
        _ => {
            if !l.signature().is_indefinite() {
                return false;
            }
            if n >= 5 {
                return true;
            }
            let diag = diagonal_classes(l);
            let d: BigInt = diag.iter().product();
            let primes = bad_primes(&d);
            let minus_one = -BigInt::one();
            primes.iter().all(|p| {
                let place = Place::Prime(p.clone());
                let eps = hasse_of(&diag, &place);
                if n == 3 {
                    hilbert_symbol(&minus_one, &-&d, &place).expect("nonzero") == eps
                } else {
                    !SquareClass::of(&d, p).is_square()
                        || eps == hilbert_symbol(&minus_one, &minus_one, &place).expect("nonzero")
                }
            })
        }
    }
}
