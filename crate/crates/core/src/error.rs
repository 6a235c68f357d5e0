use thiserror::Error;

use crate::complex::Face;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the facet list is empty (the void complex is not supported)")]
    VoidComplex,

    #[error("vertex {vertex} is outside the ground set [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex 0 is not allowed; vertices are numbered from 1")]
    ZeroVertex,

    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    GroundSetTooLarge(usize),

    #[error("complexes live on different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),

    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    #[error("{0} is not a facet of the complex")]
    NotAFacet(Face),

    #[error("a decomposition needs at least two facets")]
    SingleFacet,

    #[error("decompositions are limited to 64 facets, complex has {0}")]
    TooManyFacets(usize),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown field `{0}` (expected Q or Fp:<prime>)")]
    UnknownField(String),

    #[error("generator {0} equals the full ground set; the unit ideal is not supported")]
    UnitIdeal(Face),

    #[error("generators are not a minimal generating set: {0} divides {1}")]
    NotAntichain(Face, Face),

    #[error("empty generator (the ideal would be the whole ring)")]
    EmptyGenerator,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("exact scan over {facets} facets exceeds the budget of {budget}; use sampling")]
    BudgetExceeded { facets: usize, budget: usize },

    #[error("requires dimension at least {required}, complex has dimension {actual}")]
    DimensionTooSmall { required: isize, actual: isize },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),

    #[error("corpus entry `{name}` failed validation: {message}")]
    CorpusValidation { name: String, message: String },

    #[error("witness failed independent re-verification: {0}")]
    WitnessMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
