//! Vertex decomposability of hypergraphs built from skeleton attachments,
//! with the supporting algebra: cover ideals, symbolic powers, linear
//! quotients and Hochster regularity.

mod bits;
pub mod complex;
pub mod construction;
pub mod decomposability;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod hypergraph;
pub mod ideals;
pub mod trace;
pub mod vertex;

pub use complex::{SimplicialComplex, SkeletonSpec};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use vertex::{Face, Vertex};
