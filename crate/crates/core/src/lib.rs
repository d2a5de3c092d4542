//! Exact linear codes over prime fields and their lifts over collusion
//! patterns, with the matroid machinery needed to reason about them.
//!
//! ```
//! use codelift::{fixtures, lift};
//!
//! let q = fixtures::rs_7_3();
//! let r = lift(&q, &fixtures::rs_pattern()).unwrap();
//! assert_eq!(r.lifted.dim(), 4);
//! assert_eq!(r.secrecy_rate.to_string(), "1/7");
//! ```

pub mod cli;
pub mod code;
pub mod derived;
pub mod equiv;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod lift;
pub mod matroid;
pub mod pattern;
pub mod subset;

pub use code::LinearCode;
pub use derived::{circuit_vector, derived_equal, separating_pattern, CircuitVector, DerivedRep};
pub use equiv::{
    check_compromised, fundamental_basis_pattern, has_private_elements, is_t_equivalent,
    standing_assumptions, triangular_ordering, EquivalenceReport, Method, TriangularCertificate,
};
pub use error::{Error, Result};
pub use field::{FieldMatrix, PrimeField};
pub use lift::{
    lift, lift_identities_check, lift_oracle, observed_circuits, projection_agrees, LiftResult,
};
pub use matroid::{circuits, RepresentedMatroid};
pub use pattern::CollusionPattern;
pub use subset::GroundSubset;
