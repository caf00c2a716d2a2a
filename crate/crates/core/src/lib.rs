//! Exact, desk-scale algorithms for graph minors on surfaces: graphs and
//! graph6, surface embeddings and genus, grid-like parametric families,
//! Kuratowski-connectivity, minor containment, packings and covers.

pub mod budget;
pub mod embed;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod kuratowski;
pub mod minor;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod surface;

pub use budget::Budget;
pub use error::{Error, Refusal, Result, SearchStats};
pub use graph::{glue, BoundariedGraph, Graph, Separation};
pub use surface::{ClosedSurfaceSet, Surface};
