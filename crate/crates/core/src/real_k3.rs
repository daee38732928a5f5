//! Involutions on lattices and the Nikulin invariants `(r, a, δ)` of a real
//! structure.
//!
//! The involution is given on the lattice as callers see it; for a real K3
//! that is the action of complex conjugation on `H²(X, ℤ)`. Nothing here
//! looks at Hodge structures.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::lattice::IntegralLattice;
use crate::linalg::{integer_kernel, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvolution {
    lattice: IntegralLattice,
    matrix: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RealInvariants {
    pub r: u32,
    pub a: u32,
    pub delta: u8,
}

/// Topology of the real locus `X(ℝ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologicalType {
    Empty,
    /// Two disjoint tori.
    TwoTori,
    /// A genus-`g` surface together with `k` spheres.
    General { g: u32, k: u32 },
}

impl fmt::Display for RealInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.a, self.delta)
    }
}

impl fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologicalType::Empty => write!(f, "∅"),
            TopologicalType::TwoTori => write!(f, "T₁ ⊔ T₁"),
            TopologicalType::General { g, k } => write!(f, "T_{g} ⊔ {k}·S²"),
        }
    }
}

impl LatticeInvolution {
    /// Checks `M² = I` and `MᵀGM = G`.
    pub fn new(lattice: IntegralLattice, matrix: IntMatrix) -> Result<Self> {
        let n = lattice.rank();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.nrows().max(matrix.ncols()) });
        }
        if !(&matrix * &matrix).is_identity() {
            return Err(Error::NotInvolution(format!("{matrix} does not square to the identity")));
        }
        if lattice.gram().congruence(&matrix) != *lattice.gram() {
            return Err(Error::NotIsometry);
        }
        Ok(LatticeInvolution { lattice, matrix })
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// Primitive sublattice `ker(M − λI)` with its induced form.
fn eigenlattice(inv: &LatticeInvolution, lambda: i64) -> Result<IntegralLattice> {
    let n = inv.lattice.rank();
    let shifted = &inv.matrix - &IntMatrix::identity(n).scale(&BigInt::from(lambda));
    let basis = integer_kernel(&shifted);
    if basis.is_empty() {
        return Ok(IntegralLattice::zero());
    }
    let b = IntMatrix::from_columns(n, &basis)?;
    IntegralLattice::new(inv.lattice.gram().congruence(&b), None)
}

/// `(Λ₊, Λ₋)`, the saturated `±1` eigenlattices.
pub fn eigenlattices(inv: &LatticeInvolution) -> Result<(IntegralLattice, IntegralLattice)> {
    Ok((eigenlattice(inv, 1)?, eigenlattice(inv, -1)?))
}

/// `r = rank Λ₋`, `2^a = |disc Λ₋|`, and `δ = 0` iff `(λ, φλ)` is even for
/// every `λ`.
///
/// `(λ, φλ) mod 2` is additive in `λ`, so checking a basis suffices. When the
/// ambient lattice is unimodular the two eigenlattices must have isomorphic
/// discriminant groups, and a mismatch is reported.
pub fn real_invariants(inv: &LatticeInvolution) -> Result<RealInvariants> {
    let (plus, minus) = eigenlattices(inv)?;
    let a = minus.discriminant_group().two_elementary_rank().ok_or(Error::NotTwoElementary("Λ₋"))?;
    if inv.lattice.is_unimodular() {
        let a_plus = plus.discriminant_group().two_elementary_rank().ok_or(Error::NotTwoElementary("Λ₊"))?;
        if a_plus != a {
            return Err(Error::EigenlatticeMismatch { plus: a_plus, minus: a });
        }
    }
    let gm = inv.lattice.gram() * &inv.matrix;
    let odd = (0..inv.lattice.rank()).any(|i| gm[(i, i)].is_odd());
    Ok(RealInvariants { r: minus.rank() as u32, a: a as u32, delta: u8::from(odd) })
}

/// Adds the `H⁰ ⊕ H⁴` block `[[0, −1], [−1, 0]]`, on which the involution
/// acts as `−1`.
pub fn extend_to_mukai(inv: &LatticeInvolution) -> Result<LatticeInvolution> {
    let block = IntegralLattice::from_i64(&[&[0, -1], &[-1, 0]])?;
    let lattice = inv.lattice.direct_sum(&block);
    let matrix = inv.matrix.block_diag(&-&IntMatrix::identity(2));
    LatticeInvolution::new(lattice, matrix)
}

/// Topological type of `X(ℝ)`: `∅` for `(10, 10, 0)`, two tori for
/// `(10, 8, 0)`, and otherwise a surface of genus `(22 − r − a)/2` with
/// `(r − a)/2` spheres.
pub fn topological_type(ri: &RealInvariants) -> Result<TopologicalType> {
    let RealInvariants { r, a, delta } = *ri;
    let bad = |reason| Err(Error::InconsistentInvariants { r, a, reason });
    if delta > 1 {
        return bad("δ must be 0 or 1");
    }
    match (r, a, delta) {
        (10, 10, 0) => return Ok(TopologicalType::Empty),
        (10, 8, 0) => return Ok(TopologicalType::TwoTori),
        _ => {}
    }
    if a > r {
        return bad("a exceeds r");
    }
    if r + a > 22 {
        return bad("r + a exceeds 22");
    }
    if (r - a) % 2 != 0 {
        return bad("r − a is odd");
    }
    Ok(TopologicalType::General { g: (22 - r - a) / 2, k: (r - a) / 2 })
}
