use std::fmt;

use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a move was rejected. The `code` strings are stable and show up in
/// CLI diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    VertexNotIsolated,
    NonzeroFraming,
    FramingNotOne,
    NeighborhoodMismatch,
    SignMismatch,
    FramingMismatch,
    FramingAdjacencyMismatch,
    LabelMismatch,
    NotAdjacent,
    Adjacent,
    WrongNeighborhood,
    LoopMismatch,
    IncidenceCondition,
    DuplicateVertex,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::VertexNotIsolated => "vertex-not-isolated",
            Reason::NonzeroFraming => "nonzero-framing",
            Reason::FramingNotOne => "framing-not-one",
            Reason::NeighborhoodMismatch => "neighborhood-mismatch",
            Reason::SignMismatch => "sign-mismatch",
            Reason::FramingMismatch => "framing-mismatch",
            Reason::FramingAdjacencyMismatch => "framing-adjacency-mismatch",
            Reason::LabelMismatch => "label-mismatch",
            Reason::NotAdjacent => "not-adjacent",
            Reason::Adjacent => "adjacent",
            Reason::WrongNeighborhood => "wrong-neighborhood",
            Reason::LoopMismatch => "loop-mismatch",
            Reason::IncidenceCondition => "incidence-condition",
            Reason::DuplicateVertex => "duplicate-vertex",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(VertexId),
    #[error("vertices must be distinct (got `{0}` twice)")]
    SameVertex(VertexId),
    #[error("loop at vertex `{0}` is not allowed in a simple graph")]
    Loop(VertexId),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(VertexId, VertexId),
    #[error("{what}: size {actual} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("move {mv} not applicable: {reason}")]
    NotApplicable { mv: &'static str, reason: Reason },
    #[error("not a graph-knot: corank(A+E) = {corank}")]
    NotAKnot { corank: usize },
    #[error("expected a one-component graph, found {components} components")]
    NotOneComponent { components: usize },
    #[error("expected a two-component graph, found {components} components")]
    NotTwoComponents { components: usize },
    #[error("span of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("orbit search exceeded {cap} classes")]
    OrbitLimit { cap: usize },
}

impl Error {
    pub(crate) fn not_applicable(mv: &'static str, reason: Reason) -> Self {
        Error::NotApplicable { mv, reason }
    }

    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::OrbitLimit { .. })
    }
}
