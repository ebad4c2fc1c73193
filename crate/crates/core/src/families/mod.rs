//! The L(ε,δ,ρ) family through its contact realization, cocycle deformations of
//! structure-constant fixtures, and the drivers that check stated p-structures.

mod cocycle;
mod expectation;
mod fingerprint;
mod fixtures;
mod lfamily;
mod table;

use thiserror::Error;

use crate::divpow::DivPowError;
use crate::pstruct::PStructError;
use crate::scalars::ScalarError;
use crate::superalg::SuperAlgError;

pub use cocycle::{
    apply_cocycle_deform, chevalley_flip, coboundary, flip_name, Cocycle, CocycleJson,
};
pub use expectation::{compare_pmap, flip_expectation, ExpectedEntry, LemmaExpectation};
pub use fingerprint::{
    ad_nilpotency_profile, greedy_torus, invariant_fingerprint, Fingerprint, NILPOTENCY_LIMIT,
};
pub use fixtures::{
    fixture_digests, verify_expectation_file, verify_lemma_fixture, weight_violations,
    FixtureBundle,
};
pub use lfamily::{
    build_l, build_l_at, build_l_symbolic, degree_violations, lemma_l3_expectation,
    table_closure_mismatches, verify_lemma_l3, DEFORMATION_PAIRS, L3_SPECIALIZATIONS,
};
pub use table::{GeneratingTable, TableEntry, TABLE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("eps must be a unit: {0}")]
    EpsilonZero(String),
    #[error("expansion failure: {0}")]
    ExpansionFailure(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("deformed bracket violates super Jacobi on ({}, {}, {}): {}", .0[0], .0[1], .0[2], .1)]
    JacobiFailure([String; 3], String),
    #[error("basis names do not follow the x_i/y_i/h_i convention: {0}")]
    NamingConvention(String),
    #[error("invalid fixture: {0}")]
    FixtureInvalid(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("bad expectation: {0}")]
    Expectation(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] SuperAlgError),
    #[error(transparent)]
    DivPow(#[from] DivPowError),
    #[error(transparent)]
    PStruct(#[from] PStructError),
}

#[cfg(test)]
mod tests;
