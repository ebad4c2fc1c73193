//! Exact coefficient arithmetic: finite fields and the parametric coefficient superring.

pub(crate) mod expr;
mod field;
mod scalar;

use std::fmt;
use std::ops::Add;

use thiserror::Error;

pub use field::{FieldElement, GaloisField, MAX_DEGREE};
pub use scalar::{GenKind, Generator, Monomial, ParameterRing, Scalar};

/// ℤ/2-grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// Koszul sign (-1)^{|a||b|} as "is negative".
    pub fn sign(a: Parity, b: Parity) -> bool {
        a.is_odd() && b.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_count(self.bit() as usize + rhs.bit() as usize)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("unsupported field GF({p}^{k})")]
    UnsupportedField { p: u32, k: u32 },
    #[error("mixed-parity scalar: {0}")]
    MixedParity(String),
    #[error("odd scalar has no Frobenius image: {0}")]
    OddParity(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("no value assigned to parameter {0}")]
    MissingAssignment(String),
    #[error("invertible parameter {0} specialized to 0")]
    ZeroForInvertible(String),
    #[error("odd parameter {0} specialized to a nonzero value")]
    OddNonzero(String),
    #[error("unknown parameter {0}")]
    UnknownGenerator(String),
    #[error("parameter {0} declared with two different kinds")]
    ConflictingGenerator(String),
    #[error("{0} is reserved for the field generator")]
    ReservedName(String),
    #[error("field mismatch at {0}")]
    FieldMismatch(String),
    #[error("not a field constant: {0}")]
    NotConstant(String),
    #[error("parse error: {0}")]
    Parse(String),
}
