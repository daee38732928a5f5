//! Integer monodromy matrices of one-parameter degenerations.
//!
//! For `T ∈ GL_n(ℤ)` quasi-unipotency means `(Tᵉ − I)^f = 0`. Here `e` comes
//! from an exact factorisation of the characteristic polynomial into
//! cyclotomic factors and `f` from explicit powering, both minimal.

mod weyl;

pub use weyl::{build_root_context, weyl_membership, RootSystemContext};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{char_poly, determinant, IntMatrix};
use crate::{Error, Result};

/// A square integer matrix with determinant `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyMatrix {
    matrix: IntMatrix,
}

impl MonodromyMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let det = determinant(&matrix)?;
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(MonodromyMatrix { matrix })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        MonodromyMatrix::new(IntMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcampoVerdict {
    /// `χ = 2 + trace(T)` is nonzero, so the degeneration has a section.
    SectionExists { euler: BigInt },
    /// `trace(T) = −2`; the criterion says nothing.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KulikovType {
    I,
    II,
    III,
}

impl fmt::Display for KulikovType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KulikovType::I => "I",
            KulikovType::II => "II",
            KulikovType::III => "III",
        })
    }
}

/// Everything extracted from a monodromy matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyReport {
    pub e: u64,
    pub f: u32,
    pub trace: BigInt,
    pub char_poly: Vec<BigInt>,
    /// Present for unipotent inputs with `f ≤ 3`.
    pub kulikov: Option<KulikovType>,
    /// `(m, N)` with `m·N = log(Tᵉ)`; absent when the logarithm vanishes.
    pub log: Option<(BigRational, IntMatrix)>,
}

// ---------------------------------------------------------------------------
// Polynomials with coeffs[k] the coefficient of x^k.

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Quotient of `p` by a monic `d`, if the division is exact.
fn div_exact_monic(p: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let (n, m) = (p.len(), d.len());
    if n < m {
        return None;
    }
    let mut rem = p.to_vec();
    let mut quot = vec![BigInt::zero(); n - m + 1];
    for k in (0..=n - m).rev() {
        let c = rem[k + m - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in d.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(quot))
}

fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut out = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Cyclotomic polynomials `Φ_d` with `φ(d) ≤ n`, by `xᵈ − 1 = ∏_{k | d} Φ_k`.
fn cyclotomics_up_to_degree(n: usize) -> BTreeMap<u64, Vec<BigInt>> {
    let n = n as u64;
    // φ(d) ≥ √(d/2), so d ≤ 2n² covers every φ(d) ≤ n.
    let bound = 2 * n * n + 2;
    let mut out: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in 1..=bound {
        if euler_phi(d) > n {
            continue;
        }
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        for (&k, phi_k) in &out {
            if k < d && d % k == 0 {
                p = div_exact_monic(&p, phi_k).expect("Φ_k divides x^d − 1");
            }
        }
        out.insert(d, p);
    }
    out
}

/// Orders `d` of the cyclotomic factors `Φ_d` of `p`, with multiplicity, or
/// `None` if some factor is not cyclotomic.
fn cyclotomic_orders(p: &[BigInt]) -> Option<Vec<u64>> {
    let table = cyclotomics_up_to_degree(p.len() - 1);
    let mut rest = p.to_vec();
    let mut orders = Vec::new();
    for (&d, phi) in &table {
        while let Some(q) = div_exact_monic(&rest, phi) {
            rest = q;
            orders.push(d);
        }
    }
    (rest.len() == 1).then_some(orders)
}

// ---------------------------------------------------------------------------

/// Minimal `(e, f)` with `(Tᵉ − I)^f = 0`.
pub fn quasi_unipotency(t: &MonodromyMatrix) -> Result<(u64, u32)> {
    let p = char_poly(&t.matrix)?;
    let orders = cyclotomic_orders(&p).ok_or(Error::NotQuasiUnipotent)?;
    let e = orders.iter().fold(1u64, |acc, d| acc.lcm(d));
    let a = nilpotent_part(t, e);
    let n = t.dim();
    let mut power = a.clone();
    for f in 1..=n.max(1) as u32 {
        if power.is_zero() {
            return Ok((e, f));
        }
        power = &power * &a;
    }
    Err(Error::Internal("Tᵉ − I is not nilpotent despite cyclotomic char poly".into()))
}

fn nilpotent_part(t: &MonodromyMatrix, e: u64) -> IntMatrix {
    &t.matrix.pow(e) - &IntMatrix::identity(t.dim())
}

/// One-sided section criterion: `trace(T) ≠ −2` forces a section.
pub fn acampo_test(t: &MonodromyMatrix) -> Result<AcampoVerdict> {
    quasi_unipotency(t)?;
    let euler: BigInt = t.matrix.trace() + 2;
    Ok(if euler.is_zero() { AcampoVerdict::Inconclusive } else { AcampoVerdict::SectionExists { euler } })
}

/// Type I, II or III for unipotent monodromy with `f = 1, 2, 3`.
pub fn kulikov_type(t: &MonodromyMatrix) -> Result<KulikovType> {
    let (e, f) = quasi_unipotency(t)?;
    if e != 1 {
        return Err(Error::NotUnipotent(e));
    }
    match f {
        1 => Ok(KulikovType::I),
        2 => Ok(KulikovType::II),
        3 => Ok(KulikovType::III),
        _ => Err(Error::NotK3Monodromy(f as usize)),
    }
}

/// `(m, N)` with `m > 0` rational, `N` integral of content 1 and
/// `m·N = log(Tᵉ) = Σ_{k ≥ 1} (−1)^{k+1} (Tᵉ − I)^k / k`.
///
/// The series stops at `k = f − 1`; for `f ≤ 3` it is
/// `(Tᵉ − I) − ½(Tᵉ − I)²`.
pub fn primitive_log(t: &MonodromyMatrix) -> Result<(BigRational, IntMatrix)> {
    let (e, f) = quasi_unipotency(t)?;
    let a = nilpotent_part(t, e);
    let denom = (1..f.max(1) as u64).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let n = t.dim();
    let mut sum = IntMatrix::zeros(n, n);
    let mut power = a.clone();
    for k in 1..f as u64 {
        let coeff = &denom / BigInt::from(k);
        let term = power.scale(&if k % 2 == 1 { coeff } else { -coeff });
        sum = &sum + &term;
        power = &power * &a;
    }
    if sum.is_zero() {
        return Err(Error::TrivialLogarithm);
    }
    let content = sum.content();
    let primitive = IntMatrix::from_vec(n, n, sum.entries().iter().map(|x| x / &content).collect());
    Ok((BigRational::new(content, denom), primitive))
}

pub fn analyze(t: &MonodromyMatrix) -> Result<MonodromyReport> {
    let (e, f) = quasi_unipotency(t)?;
    let kulikov = (e == 1).then(|| kulikov_type(t).ok()).flatten();
    let log = match primitive_log(t) {
        Ok(x) => Some(x),
        Err(Error::TrivialLogarithm) => None,
        Err(err) => return Err(err),
    };
    Ok(MonodromyReport { e, f, trace: t.matrix.trace(), char_poly: char_poly(&t.matrix)?, kulikov, log })
}
