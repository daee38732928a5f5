//! JSON input documents.
//!
//! Integers may be JSON numbers or decimal strings, so values beyond 64 bits
//! survive the round trip. Shape errors are raised while parsing and carry
//! the line and column of the offending row.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use k3_lattice::mukai::MukaiVector;
use k3_lattice::{IntMatrix, IntegralLattice};
use num_bigint::BigInt;
use serde::de::{self, DeserializeOwned, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string of decimal digits")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse().map(Int).map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

fn unwrap_ints(v: Vec<Int>) -> Vec<BigInt> {
    v.into_iter().map(|i| i.0).collect()
}

/// A rectangular integer matrix given as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix(pub Vec<Vec<BigInt>>);

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct MatrixVisitor;

        impl<'de> Visitor<'de> for MatrixVisitor {
            type Value = Matrix;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a list of integer rows of equal length")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Matrix, A::Error> {
                let mut rows: Vec<Vec<BigInt>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<Int>>()? {
                    if let Some(first) = rows.first() {
                        if row.len() != first.len() {
                            return Err(de::Error::custom(format!(
                                "row {} has {} entries, expected {}",
                                rows.len(),
                                row.len(),
                                first.len()
                            )));
                        }
                    }
                    rows.push(unwrap_ints(row));
                }
                if rows.is_empty() || rows[0].is_empty() {
                    return Err(de::Error::custom("matrix is empty"));
                }
                Ok(Matrix(rows))
            }
        }

        d.deserialize_seq(MatrixVisitor)
    }
}

impl Matrix {
    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.0).expect("rows were checked to be rectangular")
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub gram: Matrix,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl LatticeDoc {
    pub fn lattice(&self) -> k3_lattice::Result<IntegralLattice> {
        IntegralLattice::new(self.gram.to_int_matrix(), self.labels.clone())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MukaiDoc {
    pub r: Int,
    pub d: Vec<Int>,
    pub s: Int,
}

impl MukaiDoc {
    pub fn vector(&self) -> MukaiVector {
        MukaiVector::new(self.r.0.clone(), unwrap_ints(self.d.clone()), self.s.0.clone())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionDoc {
    pub lattice: LatticeDoc,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyDoc {
    pub matrix: Matrix,
}

/// A lattice, generators of a negative definite sublattice, and a matrix to
/// test for membership in its Weyl group.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylDoc {
    pub lattice: LatticeDoc,
    pub roots: Matrix,
    pub matrix: Matrix,
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

/// Attaches the file name to a validation failure of a parsed document.
pub fn invalid(path: &Path) -> impl FnOnce(k3_lattice::Error) -> CliError {
    let path: PathBuf = path.to_path_buf();
    move |source| CliError::Invalid { path, source }
}

pub fn load_lattice(path: &Path) -> Result<IntegralLattice, CliError> {
    load::<LatticeDoc>(path)?.lattice().map_err(invalid(path))
}
