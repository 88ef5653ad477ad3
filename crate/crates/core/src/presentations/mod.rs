//! Degree-bounded rewriting for presented *-algebras, Hopf structure given on
//! generators, diagonal one-parameter actions, and pairings between two
//! presented Hopf algebras.

pub mod morphism;
pub mod pairing;
pub mod presets;
pub mod rewrite;
pub mod words;

use thiserror::Error;

use crate::scalars::Scalar;

pub use morphism::{
    diagonal_of, solve_counit, DiagonalAction, GenMorphism, HopfChecks, HopfPresentation, MorphismKind, Normalize,
};
pub use pairing::{GramRank, KappaCertificate, Pairing, PairingCertificate, RowSource, SplitOrder};
pub use rewrite::{ConfluenceReport, Generator, OverlapFailure, Presentation, Rule};
pub use words::{Gen, Lin, Monomial, TensorWord, Word};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{0}")]
    Invalid(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("rule {lhs} → … does not decrease the monomial order (term {word})")]
    NotDecreasing { lhs: String, word: String },
    #[error("degree bound {bound} exceeded at {word}")]
    DegreeExceeded { bound: usize, word: String },
    #[error("{map} violates the relation {rule}")]
    RelationViolated { map: &'static str, rule: String },
    #[error("{law} fails on generator {generator}")]
    HopfLaw { law: &'static str, generator: String },
    #[error("counit not determined by the counit laws: {0}")]
    CounitUndetermined(String),
    #[error("{axiom} fails at {witness}: {lhs} ≠ {rhs}")]
    PairingMismatch { axiom: &'static str, witness: String, lhs: Box<Scalar>, rhs: Box<Scalar> },
}
