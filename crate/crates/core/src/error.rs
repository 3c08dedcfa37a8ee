use thiserror::Error;

use crate::embedding::{SurfaceClass, ValidationReport};

/// Failure to build an [`EmbeddedMap`](crate::EmbeddedMap) from a candidate structure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid embedding: {0}")]
    Invalid(ValidationReport),
    #[error("vertex {vertex} lists neighbour {neighbor}, which is out of range")]
    NeighborOutOfRange { vertex: usize, neighbor: usize },
    #[error("neighbour lists of {0} and {1} do not agree")]
    AsymmetricNeighbors(usize, usize),
    #[error("twisted edge {0}-{1} is not an edge of the map")]
    UnknownTwistedEdge(usize, usize),
    #[error("invalid surface: chi={chi}, orientable={orientable}")]
    InvalidSurface { chi: i32, orientable: bool },
}

/// Reasons `delete_vertices` refuses a vertex set.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    #[error("deleting these vertices leaves nothing")]
    EmptyResult,
    #[error("remaining graph is disconnected")]
    Disconnected,
    #[error("remaining embedding is not 2-cell on the original surface")]
    NotTwoCell,
}

/// Errors of the local map deformations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("edge {0} is not contractible")]
    NotContractible(usize),
    #[error("K4 on the sphere must not be contracted")]
    K4SphereException,
    #[error("split would create a loop or parallel edge")]
    SimplicityViolation,
    #[error("edge {0} does not lie on a 3-face")]
    NoThreeFaceOnEdge(usize),
    #[error("edge {0} has the same face on both sides")]
    SameFaceBothSides(usize),
    #[error("corner edge is already present")]
    CornerBlocked,
    #[error("face {0} is not a large face")]
    FaceNotLarge(usize),
    #[error("corner reference is out of range")]
    BadCorner,
    #[error("vertices {0:?} do not form a 3-cycle")]
    NotAThreeCycle([usize; 3]),
    #[error("3-cycle {0:?} separates the surface")]
    SeparatingCycle([usize; 3]),
    #[error("dart {0} is not incident to the split vertex or hinges coincide")]
    BadHinge(usize),
}

/// Errors raised while reading or validating seed catalogs.
#[derive(Debug, Error)]
pub enum SeedError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("seed `{name}` fails check: {check}")]
    InvariantViolation { name: String, check: String },
    #[error("seed `{name}` lies on {found}, declared {declared}")]
    SurfaceMismatch {
        name: String,
        found: SurfaceClass,
        declared: SurfaceClass,
    },
    #[error("bootstrap failure: {0}")]
    Bootstrap(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors of the generation pipeline.
#[derive(Debug, Error)]
pub enum GenerationError {
    #[error("no seeds available for {0}; supply a seed file")]
    MissingSeeds(SurfaceClass),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("level with {vertices} vertices and {edges} edges exceeded the cap of {cap} bytes")]
    LevelCapExceeded {
        vertices: usize,
        edges: usize,
        cap: usize,
    },
    #[error("seed set is for {found}, requested {requested}")]
    SurfaceMismatch {
        found: SurfaceClass,
        requested: SurfaceClass,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors of the brute-force map enumerator.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{candidates} labelled candidates exceed the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
}

/// Errors of the binary `signed_code` format.
#[derive(Debug, Error)]
pub enum SignedCodeError {
    #[error("map has {0} vertices; the format allows at most 127")]
    VertexCountOverflow(usize),
    #[error("missing `>>signed_code<<` header")]
    BadHeader,
    #[error("map {0}: neighbour byte {1:#04x} names no vertex")]
    BadByte(usize, u8),
    #[error("input ends inside map {0}")]
    Truncated(usize),
    #[error("map {index}: {source}")]
    Invalid { index: usize, source: MapError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
