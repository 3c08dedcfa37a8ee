//! Exhaustive, isomorph-free generation of maps (2-cell embeddings of simple
//! graphs) on low-genus surfaces.

pub mod classes;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod flags;
pub mod oracle;
pub mod pipeline;
pub mod seeds;
pub mod signed_code;
pub mod smt;
pub mod transforms;

pub use embedding::{EmbeddedMap, FaceWalk, RawEmbedding, SurfaceClass, ValidationReport};
pub use error::{
    GenerationError, MapError, OracleError, Rejection, SeedError, SignedCodeError, TransformError,
};
pub use flags::{canonical_code, is_isomorphic, CanonicalCode, FlagSystem};
