//! Finite-dimensional Lie superalgebras given by structure constants.

mod algebra;
mod json;
mod subspace;
pub mod vector;

use thiserror::Error;

use crate::scalars::{Scalar, ScalarError};

pub use algebra::{AlgebraBuilder, BasisElement, IdentityReport, SuperAlgebra, Terms};
pub use json::{
    parameters_of, ring_from_parameters, AlgebraJson, BasisJson, BracketJson, ParametersJson,
    TermJson,
};
pub use subspace::{
    center, derived_series, derived_subalgebra, weight_decomposition, Subspace, WeightSpace,
};

/// Coordinates in the basis of an algebra.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuperAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inhomogeneous element {0}")]
    InhomogeneousElement(String),
    #[error("subspace computation needs numeric structure constants (parameters: {0})")]
    SymbolicNotSupported(String),
    #[error("not diagonal: {0}")]
    NotDiagonal(String),
    #[error("squaring needs an odd element, got {0}")]
    EvenElement(String),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("unknown basis element {0}")]
    UnknownBasis(String),
    #[error("duplicate basis element {0}")]
    DuplicateBasis(String),
    #[error("bracket [{0},{1}] given twice with different values")]
    ConflictingBracket(String, String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
