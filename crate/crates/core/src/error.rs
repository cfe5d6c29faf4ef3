use thiserror::Error;

use crate::algebra::MorphismViolation;
use crate::formality::FreenessWitness;

/// Everything that can go wrong while building or evaluating the objects in
/// this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    /// `d_out * d_in != 0`. On internally built complexes this means a sign
    /// bug upstream.
    #[error("composite of consecutive differentials is nonzero ({rows}x{cols})")]
    CompositionNonzero { rows: usize, cols: usize },

    #[error("representative {index} is dependent on the previous ones modulo the subspace")]
    DependentRepresentatives { index: usize },

    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },

    #[error("generator `{name}` has degree {degree}; generators must have degree at least 1")]
    GeneratorDegree { name: String, degree: usize },

    #[error("duplicate generator `{name}`")]
    DuplicateGenerator { name: String },

    #[error("polynomial {context} is not homogeneous of degree {expected} (found a term of degree {found})")]
    Inhomogeneous {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },

    #[error("d^2 != 0 on generator `{generator}`")]
    DSquareNonzero { generator: String },

    #[error("the differential does not preserve the relation ideal (relation {index})")]
    DifferentialNotCompatible { index: usize },

    #[error("algebra `{name}` violates {violation}")]
    InvalidAlgebra { name: String, violation: String },

    #[error("morphism `{name}` is invalid: {violations:?}")]
    InvalidMorphism {
        name: String,
        violations: Vec<MorphismViolation>,
    },

    #[error("truncation mismatch: {context} (expected at least {expected}, found {found})")]
    Truncation {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("middle algebra must satisfy B^0 = Q.1 and B^1 = 0; fails in degree {degree}")]
    MiddleAlgebraNotSimplyConnected { degree: usize },

    /// One of the identities `d^2 = 0`, `delta^2 = 0`, `d delta + delta d = 0`,
    /// `D^2 = 0` failed on a window. Never a property of valid input.
    #[error("bar window fails {identity} starting in total degree {degree}")]
    SignInconsistency { identity: &'static str, degree: usize },

    #[error("the square does not commute in degree {degree}")]
    SquareNotCommuting { degree: usize },

    #[error("the ladder does not commute on the {side} square in degree {degree}")]
    LadderNotCommuting { side: &'static str, degree: usize },

    #[error("product lands in total degree {degree}, outside the window (top degree {top})")]
    DegreeOverflow { degree: usize, top: usize },

    #[error("algebra `{name}` has a nonzero differential in degree {degree}")]
    NonzeroDifferential { name: String, degree: usize },

    #[error("base algebra is not a free graded-commutative algebra with zero differential: {reason}")]
    NotPolynomialBase { reason: String },

    #[error("module is not free over the base: {0}")]
    NotFree(FreenessWitness),

    #[error("positive bar degree Tor does not vanish in bigrade ({bar_degree}, {tensor_degree}) although the module is free")]
    VanishingFailed { bar_degree: i64, tensor_degree: usize },

    #[error("{0}")]
    Consistency(String),

    #[error("no {kind} named `{name}`")]
    UnknownDefinition { kind: &'static str, name: String },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
