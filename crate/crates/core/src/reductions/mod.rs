//! Builders for the hardness gadgets: clause encoders, Vandermonde
//! amplification, the Strong c-Partial construction, graph colouring ideals
//! and the structure multigraph.

mod coloring_ideal;
mod cpartial;
mod encode;
mod structure;
mod vandermonde;

use thiserror::Error;

pub use coloring_ideal::{coloring_ideal, ColoringIdealSpec};
pub use cpartial::{strong_cpartial_construct, CPartialSystem, LINK_VARIABLE};
pub use encode::{encode_3sat, encode_nonmixed, literal_factor, EncodedSystem};
pub use structure::{build_structure_graph, StructureGraph};
pub use vandermonde::{
    amplification_size, determinant, vandermonde_amplify, vandermonde_determinant, vandermonde_matrix, AmplifiedSystem,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("clause {0} contains a variable in both polarities")]
    TrivialClause(usize),
    #[error("clause {0} mixes positive and negative literals")]
    MixedClause(usize),
    #[error("epsilon must lie in (0, 1], got {0}")]
    BadEpsilon(String),
    #[error("field too small: GF({p}) has fewer than the {needed} distinct points the matrix rows need")]
    FieldTooSmall { p: u64, needed: usize },
    #[error("need at least {needed} matrix points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("matrix points {0} and {1} coincide; rows must use distinct points")]
    DuplicatePoints(usize, usize),
    #[error("number of copies parameter c must be at least 1")]
    ZeroCopies,
    #[error("number of colours k must be at least 1")]
    ZeroColors,
}
