//! Exact computations on the Floyd compactification of the regular tree `T_n`.
//!
//! Vertices are addressed by reduced words from the base vertex, boundary
//! points by eventually periodic infinite words. Edge lengths come from a
//! summable profile `h`, and every metric quantity is returned either as an
//! exact rational or as a certified interval.

pub mod aut;
pub mod error;
pub mod floyd;
pub mod format;
pub mod lipschitz;
pub mod svg;
pub mod tree;

/// Exact rational scalar used throughout the metric kernel.
pub type Rational = num_rational::BigRational;

pub use aut::{AutWord, Classification, FinitaryPortrait, Generator, LocalPermutation};
pub use error::{AutError, EstimateError, FloydError, ParseError, TreeError};
pub use floyd::{Enclosure, FloydFunction, MetricSpec, Tail};
pub use tree::{
    AxisCoordinate, BoundaryAddress, EdgeRef, LcpDepth, Point, TreeConfig, VertexAddress,
};
