//! Exact counting of graph homomorphisms ("H-colorings") from small regular
//! graphs, classification of constraint graphs by which of `K_{d,d}` and
//! `K_{d+1}` eventually carries more colorings per vertex, and exhaustive
//! certification tooling for the associated extremal inequalities.
//!
//! Every count and every comparison is carried out in exact integer or
//! rational arithmetic. The counting engines are generic over the
//! accumulator type (see [`scalar::Count`]); the aliases below fix the
//! concrete types used across the public API.

pub mod bounds;
pub mod canon;
pub mod closed;
pub mod error;
pub mod graph;
pub mod hom;
pub mod indep;
pub mod limits;
pub mod qpoly;
pub mod regular;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{ConstraintGraph, Graph, VertexSet};
pub use limits::Limits;

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;
/// Arbitrary-precision signed integer (polynomial coefficients, signed sums).
pub type BigInt = num_bigint::BigInt;
/// Exact rational number.
pub type Rational = num_rational::BigRational;
/// Integer-coefficient polynomial in `q`.
pub type IntPoly = qpoly::QPoly<BigInt>;
/// Rational-coefficient polynomial.
pub type RatPoly = qpoly::QPoly<Rational>;
