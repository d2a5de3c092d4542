use thiserror::Error;

use crate::subset::GroundSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2..=65536")]
    ModulusOutOfRange(u64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operands live over different fields or ground sets")]
    FieldMismatch,
    #[error("element {0} is outside the ground set")]
    ElementOutOfRange(usize),
    #[error("column label {0} appears twice")]
    DuplicateLabel(usize),
    #[error("the coordinate set is empty")]
    EmptySubset,
    #[error("evaluation points are not distinct")]
    RepeatedPoints,
    #[error("code length {n} exceeds the field size {p}")]
    LengthExceedsField { n: usize, p: u32 },
    #[error("dimension {k} exceeds length {n}")]
    DimensionExceedsLength { k: usize, n: usize },
    #[error("MDS test needs 0 < k < n, got k={k}, n={n}")]
    DegenerateDimension { k: usize, n: usize },
    #[error("{0} is not a circuit of the code's matroid")]
    NotACircuit(GroundSubset),
    #[error("{0} is not a basis of the code's matroid")]
    NotABasis(GroundSubset),
    #[error("element {element} lies in {basis}")]
    ElementInBasis { element: usize, basis: GroundSubset },
    #[error("deletion and contraction sets overlap")]
    OverlappingMinor,
    #[error("the two codes have different matroids")]
    MatroidMismatch,
    #[error("the collusion pattern has no facets")]
    EmptyPattern,
    #[error("size {value} outside 1..={max}")]
    OutOfRange { value: usize, max: usize },
    #[error("the code's matroid is not connected")]
    DisconnectedMatroid,
    #[error("facet {facet} exceeds the collusion size t={t}")]
    FacetTooLarge { facet: GroundSubset, t: usize },
    #[error("guard `{guard}` exceeded: {actual} > {limit}")]
    GuardExceeded {
        guard: &'static str,
        limit: u64,
        actual: u64,
    },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
