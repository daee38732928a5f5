//! Binary quadratic forms attached to rank-2 lattices.
//!
//! A rank-2 lattice with Gram `[[g₁₁, g₁₂], [g₁₂, g₂₂]]` gives the form
//! `g₁₁x² + 2g₁₂xy + g₂₂y²` with discriminant `−4·det`. Definite forms are
//! reduced to their unique Gauss-reduced representative; indefinite forms
//! with non-square discriminant are reduced with the `ρ` operator and
//! compared through their reduction cycles. Square discriminants (isotropic
//! lattices) are handled through their two isotropic lines.
//!
//! Every reduction step is tracked as an `SL₂(ℤ)` matrix so that
//! equivalences and representations come with explicit witnesses.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegralLattice;
use crate::arith;
use crate::{Error, Result};

/// The form `a·x² + b·xy + c·y²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// 2×2 integer matrix acting on column vectors `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat2 {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

impl Mat2 {
    fn identity() -> Self {
        Mat2 { p: BigInt::one(), q: BigInt::zero(), r: BigInt::zero(), s: BigInt::one() }
    }

    fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Self {
        Mat2 { p, q, r, s }
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            p: &self.p * &o.p + &self.q * &o.r,
            q: &self.p * &o.q + &self.q * &o.s,
            r: &self.r * &o.p + &self.s * &o.r,
            s: &self.r * &o.q + &self.s * &o.s,
        }
    }

    /// Inverse of a determinant-one matrix.
    fn inverse_sl2(&self) -> Mat2 {
        Mat2 { p: self.s.clone(), q: -&self.q, r: -&self.r, s: self.p.clone() }
    }

    fn first_column(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.r.clone())
    }
}

impl BinaryForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryForm { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn from_lattice(l: &IntegralLattice) -> Result<Self> {
        if l.rank() != 2 {
            return Err(Error::WrongRank { expected: 2, found: l.rank() });
        }
        let g = l.gram();
        Ok(BinaryForm { a: g[(0, 0)].clone(), b: &g[(0, 1)] * 2, c: g[(1, 1)].clone() })
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c * 4
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `f ∘ M`, i.e. the form `(x, y) ↦ f(M·(x, y))`.
    fn transform(&self, m: &Mat2) -> BinaryForm {
        let a = self.eval(&m.p, &m.r);
        let c = self.eval(&m.q, &m.s);
        let b = &self.a * &m.p * &m.q * 2 + &self.b * (&m.p * &m.s + &m.q * &m.r) + &self.c * &m.r * &m.s * 2;
        BinaryForm { a, b, c }
    }

    /// Image under the improper substitution `y ↦ −y`.
    fn conjugate(&self) -> BinaryForm {
        BinaryForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    fn negate(&self) -> BinaryForm {
        BinaryForm { a: -&self.a, b: -&self.b, c: -&self.c }
    }

    fn is_definite(&self) -> bool {
        self.discriminant().is_negative()
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Canonical data of the `SL₂(ℤ)` class of a rank-2 lattice.
///
/// Definite: the single Gauss-reduced form. Indefinite with non-square
/// discriminant: the full `ρ`-cycle of reduced forms starting at the first
/// reduced form reached. Square discriminant: the normal forms `(0, s, c)`
/// with `0 ≤ c < s`, one per isotropic line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFormClass {
    pub reduced_cycle: Vec<BinaryForm>,
}

// ---------------------------------------------------------------------------
// Positive-definite reduction

/// Gauss reduction of a positive-definite form: `|b| ≤ a ≤ c`, with `b ≥ 0`
/// when `|b| = a` or `a = c`. Returns `(reduced, M)` with `f ∘ M = reduced`.
fn reduce_definite(f: &BinaryForm) -> (BinaryForm, Mat2) {
    debug_assert!(f.a.is_positive() && f.is_definite());
    let mut g = f.clone();
    let mut m = Mat2::identity();
    loop {
        // Normalise: −a < b ≤ a via x ↦ x + t·y.
        let two_a = &g.a * 2;
        let t = (&g.a - &g.b).div_floor(&two_a);
        if !t.is_zero() {
            let step = Mat2::new(BigInt::one(), t, BigInt::zero(), BigInt::one());
            g = g.transform(&step);
            m = m.mul(&step);
        }
        if g.a > g.c || (g.a == g.c && g.b.is_negative()) {
            let step = Mat2::new(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero());
            g = g.transform(&step);
            m = m.mul(&step);
            continue;
        }
        return (g, m);
    }
}

/// Reduction of a definite form of either sign.
fn reduce_any_definite(f: &BinaryForm) -> (BinaryForm, Mat2) {
    if f.a.is_negative() {
        let (g, m) = reduce_definite(&f.negate());
        (g.negate(), m)
    } else {
        reduce_definite(f)
    }
}

// ---------------------------------------------------------------------------
// Indefinite reduction, non-square discriminant

struct Indefinite {
    disc: BigInt,
    root: BigInt, // ⌊√disc⌋
}

impl Indefinite {
    fn new(disc: BigInt) -> Self {
        let root = arith::isqrt(&disc);
        Indefinite { disc, root }
    }

    /// `|√Δ − 2|a|| < b < √Δ`, using that `√Δ` is irrational.
    fn is_reduced(&self, f: &BinaryForm) -> bool {
        let two_a = f.a.abs() * 2;
        f.b.is_positive() && f.b <= self.root && &f.b + &two_a > self.root && &two_a - &f.b <= self.root
    }

    /// One `ρ` step: `(a, b, c) ↦ (c, r, (r² − Δ)/4c)` with the normalised
    /// `r ≡ −b (mod 2c)`, realised by `[[0, −1], [1, t]]`.
    fn rho(&self, f: &BinaryForm) -> (BinaryForm, Mat2) {
        let c_abs = f.c.abs();
        let m = &c_abs * 2;
        let minus_b = -&f.b;
        let r = if c_abs > self.root {
            let r0 = minus_b.mod_floor(&m);
            if r0 > c_abs {
                r0 - &m
            } else {
                r0
            }
        } else {
            &self.root - (&self.root - &minus_b).mod_floor(&m)
        };
        let t = (&r + &f.b) / (&f.c * 2);
        let step = Mat2::new(BigInt::zero(), -BigInt::one(), BigInt::one(), t);
        let g = f.transform(&step);
        debug_assert_eq!(g.b, r);
        debug_assert_eq!(g.discriminant(), self.disc);
        (g, step)
    }

    fn reduce(&self, f: &BinaryForm) -> (BinaryForm, Mat2) {
        let mut g = f.clone();
        let mut m = Mat2::identity();
        while !self.is_reduced(&g) {
            let (h, step) = self.rho(&g);
            g = h;
            m = m.mul(&step);
        }
        (g, m)
    }

    fn cycle(&self, start: &BinaryForm) -> Vec<BinaryForm> {
        let mut out = vec![start.clone()];
        let mut g = self.rho(start).0;
        while g != *start {
            out.push(g.clone());
            g = self.rho(&g).0;
        }
        out
    }

    /// `M` with `f ∘ M = g` and `det M = 1`, if one exists.
    fn proper_equivalence(&self, f: &BinaryForm, g: &BinaryForm) -> Option<Mat2> {
        let (fr, mf) = self.reduce(f);
        let (gr, mg) = self.reduce(g);
        let mut cur = fr.clone();
        let mut k = Mat2::identity();
        loop {
            if cur == gr {
                return Some(mf.mul(&k).mul(&mg.inverse_sl2()));
            }
            let (next, step) = self.rho(&cur);
            k = k.mul(&step);
            cur = next;
            if cur == fr {
                return None;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Square discriminant

/// Primitive isotropic vectors, one per isotropic line.
fn isotropic_lines(f: &BinaryForm, s: &BigInt) -> Vec<(BigInt, BigInt)> {
    let prim = |x: BigInt, y: BigInt| {
        let g = x.gcd(&y);
        (x / &g, y / g)
    };
    if f.a.is_zero() {
        // y·(b x + c y): lines y = 0 and b x + c y = 0.
        vec![(BigInt::one(), BigInt::zero()), prim(-&f.c, f.b.clone())]
    } else {
        // 4a·f = (2ax + (b+s)y)(2ax + (b−s)y).
        let two_a: BigInt = &f.a * 2;
        vec![prim(-(&f.b + s), two_a.clone()), prim(-(&f.b - s), two_a)]
    }
}

/// Normal forms `(0, s, c)`, `0 ≤ c < s`, reachable by `GL₂(ℤ)` from `f`,
/// one per isotropic line.
fn square_normal_forms(f: &BinaryForm, s: &BigInt) -> Vec<BinaryForm> {
    let mut out: Vec<BinaryForm> = isotropic_lines(f, s)
        .into_iter()
        .map(|(x, y)| {
            // Complete (x, y) to a basis: x·β − y·α = 1.
            let e = x.extended_gcd(&y);
            let (mut u, mut w) = (-&e.y, e.x.clone());
            debug_assert!((&x * &w - &y * &u).is_one());
            let cross = f.eval(&(&x + &u), &(&y + &w)) - f.eval(&x, &y) - f.eval(&u, &w);
            if cross.is_negative() {
                u = -u;
                w = -w;
            }
            BinaryForm { a: BigInt::zero(), b: s.clone(), c: f.eval(&u, &w).mod_floor(s) }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in arith::factorize(n) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}

fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    divisors(n).into_iter().flat_map(|d| [d.clone(), -d]).collect()
}

fn represents_square(f: &BinaryForm, s: &BigInt, n: &BigInt) -> Option<(BigInt, BigInt)> {
    if f.a.is_zero() {
        for y in signed_divisors(n) {
            let rest = n / &y - &f.c * &y;
            if rest.is_multiple_of(&f.b) {
                return Some((rest / &f.b, y));
            }
        }
        return None;
    }
    let two_a = &f.a * 2;
    let prod = &two_a * 2 * n;
    for u in signed_divisors(&prod) {
        let v = &prod / &u;
        let diff = &u - &v;
        let two_s = s * 2;
        if !diff.is_multiple_of(&two_s) {
            continue;
        }
        let y = diff / two_s;
        let num = &u - (&f.b + s) * &y;
        if num.is_multiple_of(&two_a) {
            return Some((num / &two_a, y));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Definite search

fn represents_definite(f: &BinaryForm, n: &BigInt) -> Option<(BigInt, BigInt)> {
    let (f, n) = if f.a.is_negative() { (f.negate(), -n) } else { (f.clone(), n.clone()) };
    if !n.is_positive() {
        return None;
    }
    // 4a·f = (2ax + by)² + |Δ|y²  ⇒  y² ≤ 4an/|Δ|.
    let bound = arith::isqrt(&(&f.a * &n * 4 / f.discriminant().abs()));
    let mut y = BigInt::zero();
    while y <= bound {
        for yy in [y.clone(), -&y] {
            // a x² + (b y) x + (c y² − n) = 0
            let disc = &f.b * &f.b * &yy * &yy - &f.a * 4 * (&f.c * &yy * &yy - &n);
            if let Some(r) = arith::exact_sqrt(&disc) {
                for num in [-&f.b * &yy + &r, -&f.b * &yy - &r] {
                    if num.is_multiple_of(&(&f.a * 2)) {
                        return Some((num / (&f.a * 2), yy));
                    }
                }
            }
            if y.is_zero() {
                break;
            }
        }
        y += 1;
    }
    None
}

// ---------------------------------------------------------------------------
// Indefinite, non-square: primitive representations via (n, b, c)

fn represents_indefinite(f: &BinaryForm, n: &BigInt) -> Option<(BigInt, BigInt)> {
    let disc = f.discriminant();
    let ctx = Indefinite::new(disc.clone());
    // n = k²·m with a primitive representation of m.
    for (k, m) in square_splittings(n) {
        let four_m = &m * 4;
        let mut b: BigInt = -m.abs() + 1;
        while b <= m.abs() {
            let num: BigInt = &b * &b - &disc;
            if num.is_multiple_of(&four_m) {
                let target = BinaryForm { a: m.clone(), b: b.clone(), c: num / &four_m };
                if let Some(t) = ctx.proper_equivalence(f, &target) {
                    let (x, y) = t.first_column();
                    return Some((x * &k, y * &k));
                }
            }
            b += 1;
        }
    }
    None
}

/// Pairs `(k, n/k²)` over all `k ≥ 1` with `k² | n`.
fn square_splittings(n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut ks = vec![BigInt::one()];
    for (p, e) in arith::factorize(n) {
        let mut next = Vec::new();
        for k in &ks {
            let mut pk = k.clone();
            for _ in 0..=e / 2 {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        ks = next;
    }
    ks.sort();
    ks.into_iter().map(|k| (k.clone(), n / (&k * &k))).collect()
}

// ---------------------------------------------------------------------------
// Public operations

/// A vector `x` with `xᵀGx = n` in a rank-2 lattice, or `None`.
///
/// Definite lattices are searched exhaustively inside the ellipse bound.
/// Indefinite lattices with non-square discriminant use reduction cycles:
/// `n` is primitively represented iff the form is properly equivalent to
/// some `(n, b, c)`, and the first column of the equivalence is the witness.
/// Square discriminants factor over ℚ and reduce to divisor enumeration.
pub fn represents(l: &IntegralLattice, n: &BigInt) -> Result<Option<Vec<BigInt>>> {
    let f = BinaryForm::from_lattice(l)?;
    if n.is_zero() {
        return Err(Error::Precondition("n = 0: use is_isotropic_rational".into()));
    }
    let disc = f.discriminant();
    let found = if disc.is_negative() {
        represents_definite(&f, n)
    } else if let Some(s) = arith::exact_sqrt(&disc) {
        represents_square(&f, &s, n)
    } else {
        represents_indefinite(&f, n)
    };
    let out = found.map(|(x, y)| vec![x, y]);
    if let Some(x) = &out {
        if l.evaluate(x)? != *n {
            return Err(Error::Internal(format!("representation witness {x:?} is wrong")));
        }
    }
    Ok(out)
}

/// Canonical reduced data for a rank-2 lattice; see [`BinaryFormClass`].
pub fn binary_class(l: &IntegralLattice) -> Result<BinaryFormClass> {
    let f = BinaryForm::from_lattice(l)?;
    let disc = f.discriminant();
    let reduced_cycle = if disc.is_negative() {
        vec![reduce_any_definite(&f).0]
    } else if let Some(s) = arith::exact_sqrt(&disc) {
        square_normal_forms(&f, &s)
    } else {
        let ctx = Indefinite::new(disc);
        let (r, _) = ctx.reduce(&f);
        ctx.cycle(&r)
    };
    Ok(BinaryFormClass { reduced_cycle })
}

/// Integral isometry of rank-2 lattices (proper or improper equivalence).
pub fn binary_equivalent(l: &IntegralLattice, m: &IntegralLattice) -> Result<bool> {
    let f = BinaryForm::from_lattice(l)?;
    let g = BinaryForm::from_lattice(m)?;
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Ok(false);
    }
    if disc.is_negative() {
        if f.a.is_positive() != g.a.is_positive() {
            return Ok(false);
        }
        let target = reduce_any_definite(&g).0;
        return Ok(reduce_any_definite(&f).0 == target || reduce_any_definite(&f.conjugate()).0 == target);
    }
    if let Some(s) = arith::exact_sqrt(&disc) {
        let nf = square_normal_forms(&f, &s);
        let ng = square_normal_forms(&g, &s);
        return Ok(nf.iter().any(|x| ng.contains(x)));
    }
    let ctx = Indefinite::new(disc);
    Ok(ctx.proper_equivalence(&f, &g).is_some() || ctx.proper_equivalence(&f.conjugate(), &g).is_some())
}
