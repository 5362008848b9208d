//! Combinatorial verification of graph–chord pairings.
//!
//! Builds the hairy graphs Θ(p,q,r) and Y(p₁,…,p₆) as plain graphs, their
//! chord diagrams on oriented lines and ribbon presentations, enumerates the
//! solid-edge structures a graph can carry over a diagram, and checks the
//! counting formula against the STU resolutions of each hairy graph.

pub mod diagram;
pub mod error;
pub mod formal_sum;
pub mod graph;
pub mod hairy;
pub mod iso;
pub mod pairing;
pub mod parity;
pub mod resolutions;
pub mod ribbon;
pub mod structures;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, EdgeKind, Generator, Label, PlainGraph, Vertex, VertexId, VertexKind};
pub use parity::{GradingParams, Parity, ParityTable};

/// Exact rational numbers used for weights and pairing values.
pub type Rational = num_rational::BigRational;
