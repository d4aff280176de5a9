//! Exact combinatorics of triangulated homology manifolds.
//!
//! Everything in this crate is computed with exact arithmetic: face counts
//! and their derived vectors are big integers, homology ranks come from
//! exact elimination over the rationals or a prime field, and every verdict
//! (manifold classification, stackedness, reconstruction) is a definite
//! yes/no rather than a numerical approximation.

pub mod complex;
pub mod enumerative;
pub mod facetfile;
pub mod field;
pub mod generators;
pub mod homology;
pub mod manifold;
pub mod report;
pub mod stackedness;

pub use complex::{ComplexError, Face, SimplicialComplex, MAX_VERTICES};
pub use field::FieldSpec;
pub use homology::BettiVector;
