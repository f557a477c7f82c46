//! Kernelization for l-Exact Component Order Connectivity.
//!
//! Given a graph `G`, a budget `k` and an order `l`, the question is whether
//! deleting at most `k` vertices can leave only connected components of
//! exactly `l` vertices. [`kernelize`] either shrinks the instance to at most
//! `(l + 1) k + l - 1` vertices or proves that the answer is no.
//!
//! The LP solver is generic over an exact integer ring
//! ([`lp::ExactInteger`]) and solution checks over any ordered field
//! ([`lp::LpScalar`]). The kernelizer works with [`Rational`] values, so the
//! zero/one classification of LP values is exact.

pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod lp;
pub mod matching;
pub mod oracle;

/// Arbitrary-precision rational used for exact LP solving.
pub type Rational = num_rational::BigRational;

/// An LP solution over [`Rational`].
pub type ExactLpSolution = lp::LpSolution<Rational>;

pub use error::{GraphError, KernelError, OracleError, ParseError};
pub use graph::{Graph, Label, Vertex, VertexSet};
pub use kernel::{kernelize, kernelize_with, EcocCrown, Instance, KernelResult, LpMode, Outcome};
