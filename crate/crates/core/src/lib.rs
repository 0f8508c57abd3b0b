//! Graph toolkit for subdivided-clique minors, region intersection graph
//! representations and tree decompositions.

pub mod bitset;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod formats;
pub mod graph;
pub mod iso;
pub mod lifting;
pub mod minor;
pub mod ops;
pub mod rig;
pub mod suite;
pub mod td;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Role, VertexId, VertexLabel};
