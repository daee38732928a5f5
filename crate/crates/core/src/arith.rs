//! Integer helpers shared by the lattice modules: factorisation, square
//! classes, valuations and Legendre symbols.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Distinct prime divisors of `|n|`, ascending. Empty for `n = 0, ±1`.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Prime factorisation of `|n|` as `(prime, exponent)` pairs, ascending.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let m: BigUint = n.magnitude().clone();
    if m <= BigUint::one() {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize(m)
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e as u32))
        .collect()
}

/// Number of distinct prime factors.
pub fn omega(n: &BigInt) -> u32 {
    prime_divisors(n).len() as u32
}

/// Product of the distinct primes dividing `n` (1 for `n = ±1`).
pub fn radical(n: &BigInt) -> BigInt {
    prime_divisors(n).iter().fold(BigInt::one(), |acc, p| acc * p)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// `Some(r)` with `r >= 0` and `r*r == n`, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Writes nonzero `n = p^v * u` with `p ∤ u`, returning `(v, u)`.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(p);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

/// Squarefree integer in the same rational square class as `n` (sign kept).
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "square class of zero");
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    out
}

/// Legendre symbol `(a/p)` for an odd prime `p`, returning -1, 0 or 1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// `n mod m` as a small non-negative integer.
pub fn small_mod(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m)).to_u32().expect("residue fits in u32")
}

/// `true` if `n` is a probable prime (deterministic for the sizes used here).
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus || n.is_one() {
        return false;
    }
    num_prime::nt_funcs::is_prime(n.magnitude(), None).probably()
}

/// Least positive `b < n` with `b*c ≡ 1 (mod n)`.
pub fn mod_inverse(c: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = c.extended_gcd(n);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(n))
}
