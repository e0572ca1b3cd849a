//! Graph-links, looped interlacement graphs and their invariants.

pub mod canon;
pub mod chi;
pub mod chord;
pub mod error;
pub mod format;
pub mod gf2;
pub mod graph;
pub mod invariants;
pub mod moves;
pub mod parity;
pub mod poly;
pub mod realize;
pub mod smoothing;

pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use chord::ChordDiagram;
pub use error::{Error, Reason, Result};
pub use format::{GraphFile, ParseError};
pub use gf2::Gf2SymMatrix;
pub use graph::{Framing, Graph, Label, LabeledGraph, LoopedGraph, Sign, VertexId, VertexLabel};
pub use invariants::{MinimalityCertificate, Verdict};
pub use moves::{LoopedMove, Move, MoveKind, MoveSpec, SearchBounds};
pub use parity::{Parity, ParityReading, ParityTable};
pub use poly::LaurentPoly;
pub use realize::Realizability;
pub use smoothing::{FreeFramedGraph, GraphSum};
