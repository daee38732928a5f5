use thiserror::Error;

/// Errors raised by the lattice, Mukai and monodromy routines.
///
/// Every variant corresponds to a violated precondition; none of them signal
/// a bug in the arithmetic itself except [`Error::Internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },

    #[error("Gram matrix is not symmetric (entry ({row},{col}))")]
    Asymmetric { row: usize, col: usize },

    #[error("Gram matrix is degenerate (determinant 0)")]
    Degenerate,

    #[error("vectors are linearly dependent")]
    Dependent,

    #[error("{0} is not a prime or the real place")]
    InvalidPlace(String),

    #[error("argument must be nonzero")]
    Zero,

    #[error("lattice has rank {found}, operation needs rank {expected}")]
    WrongRank { expected: usize, found: usize },

    #[error("lattice is not negative definite")]
    NotNegativeDefinite,

    #[error("lattice is not even: odd self-intersection {0}")]
    OddSquare(String),

    #[error("vector is not spherical: self-pairing {0}, expected -2")]
    NotSpherical(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not an involutive isometry: {0}")]
    NotInvolution(String),

    #[error("discriminant group of the {0} eigenlattice is not 2-elementary")]
    NotTwoElementary(&'static str),

    #[error("eigenlattice discriminant exponents disagree: a+ = {plus}, a- = {minus}")]
    EigenlatticeMismatch { plus: usize, minus: usize },

    #[error("invariants (r={r}, a={a}) do not describe a real K3 surface: {reason}")]
    InconsistentInvariants { r: u32, a: u32, reason: &'static str },

    #[error("matrix is not invertible over the integers (determinant {0})")]
    NotUnimodular(String),

    #[error("matrix is not quasi-unipotent: characteristic polynomial has a non-cyclotomic factor")]
    NotQuasiUnipotent,

    #[error("monodromy is not unipotent (e = {0})")]
    NotUnipotent(u64),

    #[error("unipotent monodromy with nilpotency index {0} > 3 does not come from a K3 degeneration")]
    NotK3Monodromy(usize),

    #[error("monodromy has finite order; its logarithm vanishes")]
    TrivialLogarithm,

    #[error("no norm -2 vectors in the sublattice")]
    NoRoots,

    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,

    #[error("matrix does not preserve the root sublattice")]
    MovesRootLattice,

    #[error("matrix does not fix the orthogonal complement of the root sublattice")]
    MovesComplement,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
