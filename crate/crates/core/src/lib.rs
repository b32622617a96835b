//! Exact two-terminal reliability of temporal (time-varying) networks.
//!
//! The pipeline compiles all source–terminal journeys of a temporal graph
//! into a ZDD by frontier-based search ([`fbsje`]), lifts that family to all
//! edge subsets containing a journey ([`superset`]), and evaluates the
//! survival probability of that family by dynamic programming over the
//! diagram ([`reliability`]). [`oracle`] holds brute-force counterparts for
//! small instances.
//!
//! Probability arithmetic is generic over [`Scalar`]; [`Probability`] and
//! [`ExactProbability`] are the two instantiations used in practice.

pub mod dd;
pub mod error;
pub mod fbs;
pub mod fbsje;
pub mod generator;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod reliability;
pub mod scalar;
pub mod superset;

pub use dd::{DiagramKind, DiagramStore, NodeRef};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeOrder, FrontierSchedule, Mode, TemporalGraph, Vertex};
pub use pipeline::{evaluate, Method, OrderKind, ReliabilityReport, RunOptions};
pub use scalar::Scalar;

/// Floating-point probability used by the pipeline and reports.
pub type Probability = f64;

/// Exact rational probability.
pub type ExactProbability = num_rational::BigRational;

/// Single-precision probability.
pub type Probability32 = f32;
