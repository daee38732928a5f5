//! Integral quadratic lattices.
//!
//! A lattice is a nondegenerate symmetric integer Gram matrix together with
//! optional basis labels. Vectors are coordinate vectors in that basis.

mod binary;
mod local;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, IntMatrix, Signature};
use crate::{Error, Result};

pub use binary::{binary_class, binary_equivalent, represents, BinaryForm, BinaryFormClass};
pub use local::{
    genus_equal, hilbert_symbol, hilbert_symbol_rational, is_isotropic_rational, local_invariants,
    LocalInvariants, Place, SquareClass,
};

/// Nondegenerate integral lattice given by its Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: IntMatrix,
    labels: Option<Vec<String>>,
    det: BigInt,
}

impl IntegralLattice {
    /// Validates symmetry and nondegeneracy.
    pub fn new(gram: IntMatrix, labels: Option<Vec<String>>) -> Result<Self> {
        gram.check_symmetric()?;
        if let Some(l) = &labels {
            if l.len() != gram.nrows() {
                return Err(Error::DimensionMismatch { expected: gram.nrows(), found: l.len() });
            }
        }
        let det = linalg::determinant(&gram)?;
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(IntegralLattice { gram, labels, det })
    }

    /// Unlabelled lattice from a literal Gram matrix.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows), None)
    }

    pub fn with_labels(gram: IntMatrix, labels: &[&str]) -> Result<Self> {
        Self::new(gram, Some(labels.iter().map(|s| s.to_string()).collect()))
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_i64(&[&[0, 1], &[1, 0]]).expect("U is unimodular")
    }

    /// Rank-one lattice `⟨n⟩`.
    pub fn rank_one(n: i64) -> Result<Self> {
        Self::from_i64(&[&[n]])
    }

    /// The rank-zero lattice.
    pub fn zero() -> Self {
        IntegralLattice { gram: IntMatrix::zeros(0, 0), labels: None, det: BigInt::one() }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn determinant(&self) -> &BigInt {
        &self.det
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn signature(&self) -> Signature {
        linalg::signature(&self.gram).expect("gram validated symmetric")
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().negative == self.rank()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().positive == self.rank()
    }

    pub(crate) fn check_dim(&self, x: &[BigInt]) -> Result<()> {
        if x.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank(), found: x.len() })
        }
    }

    /// `xᵀ·G·x`.
    pub fn evaluate(&self, x: &[BigInt]) -> Result<BigInt> {
        self.pairing(x, x)
    }

    /// `xᵀ·G·y`.
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let gy = self.gram.mul_vec(y);
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    /// Finite group `L^∨ / L`, read off the Smith normal form of the Gram matrix.
    pub fn discriminant_group(&self) -> DiscriminantGroup {
        let snf = linalg::smith_normal_form(&self.gram);
        DiscriminantGroup {
            elementary_divisors: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// Block-diagonal sum; labels are concatenated when both sides have them.
    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ if self.rank() == 0 => other.labels.clone(),
            _ if other.rank() == 0 => self.labels.clone(),
            _ => None,
        };
        IntegralLattice { gram: self.gram.block_diag(&other.gram), labels, det: &self.det * &other.det }
    }

    /// Sublattice of vectors orthogonal to every vector of `s`.
    ///
    /// The result is saturated (primitive) in `self`. It may be degenerate,
    /// e.g. the complement of an isotropic vector contains that vector.
    pub fn orthogonal_complement(&self, s: &[Vec<BigInt>]) -> Result<Sublattice> {
        for v in s {
            self.check_dim(v)?;
        }
        let n = self.rank();
        if s.is_empty() {
            return Ok(Sublattice::new(self, (0..n).map(|i| unit(n, i)).collect()));
        }
        let sm = IntMatrix::from_columns(n, s)?;
        if linalg::rank(&sm) != s.len() {
            return Err(Error::Dependent);
        }
        let constraints = &sm.transpose() * &self.gram;
        Ok(Sublattice::new(self, linalg::integer_kernel(&constraints)))
    }

    /// All `x` with `xᵀGx = n` in a negative-definite lattice, sorted
    /// lexicographically.
    pub fn enumerate_norm_vectors(&self, n: &BigInt) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        if !n.is_negative() {
            return Err(Error::Precondition(format!("norm {n} must be negative")));
        }
        let pos = -&self.gram;
        let bound = -n;
        let mut out: Vec<Vec<BigInt>> = short_vectors(&pos, &bound)
            .into_iter()
            .filter(|x| pos.congruence_value(x) == bound)
            .collect();
        out.sort();
        Ok(out)
    }

    fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }
}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegralLattice({})", self.gram)
    }
}

/// Renders the Gram matrix as a labelled table.
impl fmt::Display for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let labels: Vec<String> = (0..n).map(|i| self.label(i)).collect();
        let cells: Vec<Vec<String>> = (0..n).map(|i| self.gram.row(i).iter().map(|x| x.to_string()).collect()).collect();
        let width = labels
            .iter()
            .map(String::len)
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        write!(f, "{:>width$} |", "")?;
        for l in &labels {
            write!(f, " {l:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((width + 1) * (n + 1) + 1))?;
        for (l, row) in labels.iter().zip(&cells) {
            write!(f, "{l:>width$} |")?;
            for c in row {
                write!(f, " {c:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Elementary divisors `> 1` of the discriminant group, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscriminantGroup {
    pub elementary_divisors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }

    /// `Some(a)` when the group is `(ℤ/2)^a`.
    pub fn two_elementary_rank(&self) -> Option<usize> {
        let two = BigInt::from(2);
        self.elementary_divisors.iter().all(|d| *d == two).then_some(self.elementary_divisors.len())
    }
}

/// A saturated sublattice given by a basis in ambient coordinates, with its
/// induced (possibly degenerate) Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub basis: Vec<Vec<BigInt>>,
    pub gram: IntMatrix,
}

impl Sublattice {
    fn new(ambient: &IntegralLattice, basis: Vec<Vec<BigInt>>) -> Self {
        let n = ambient.rank();
        let gram = if basis.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            let b = IntMatrix::from_columns(n, &basis).expect("basis vectors have ambient length");
            ambient.gram.congruence(&b)
        };
        Sublattice { basis, gram }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The induced lattice, if nondegenerate.
    pub fn lattice(&self) -> Result<IntegralLattice> {
        if self.basis.is_empty() {
            return Ok(IntegralLattice::zero());
        }
        IntegralLattice::new(self.gram.clone(), None)
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

impl IntMatrix {
    pub(crate) fn congruence_value(&self, x: &[BigInt]) -> BigInt {
        let gx = self.mul_vec(x);
        x.iter().zip(&gx).map(|(a, b)| a * b).sum()
    }
}

/// All integer `x` with `xᵀ·q·x ≤ bound` for positive-definite `q`
/// (Fincke–Pohst with exact rational completion of squares).
pub(crate) fn short_vectors(q: &IntMatrix, bound: &BigInt) -> Vec<Vec<BigInt>> {
    let n = q.nrows();
    if n == 0 {
        return vec![Vec::new()];
    }
    // q(x) = Σ d[i] (x_i + Σ_{j>i} mu[i][j] x_j)²
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| q.row(i).iter().map(|x| BigRational::from(x.clone())).collect()).collect();
    let mut d = vec![BigRational::zero(); n];
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &d[i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &mu[i][k] * &a[i][l];
                a[k][l] -= t;
                a[l][k] = a[k][l].clone();
            }
        }
    }

    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    enumerate_level(n - 1, &BigRational::from(bound.clone()), &d, &mu, &mut x, &mut out);
    out
}

fn enumerate_level(
    i: usize,
    remaining: &BigRational,
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = x.len();
    let center: BigRational = -(i + 1..n).map(|j| &mu[i][j] * BigRational::from(x[j].clone())).sum::<BigRational>();
    let cost = |xi: &BigInt| {
        let t = BigRational::from(xi.clone()) - &center;
        &d[i] * &t * &t
    };
    let start = center.floor().to_integer();
    let visit = |xi: BigInt, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>| -> bool {
        let c = cost(&xi);
        if &c > remaining {
            return false;
        }
        x[i] = xi;
        if i == 0 {
            out.push(x.clone());
        } else {
            enumerate_level(i - 1, &(remaining - c), d, mu, x, out);
        }
        true
    };
    let mut xi = start.clone();
    while visit(xi.clone(), x, out) {
        xi -= 1;
    }
    let mut xi: BigInt = start + 1;
    while visit(xi.clone(), x, out) {
        xi += 1;
    }
    x[i] = BigInt::zero();
}
