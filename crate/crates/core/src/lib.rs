//! Explicit maximum packings of edge-disjoint spanning trees in hypercubes.
//!
//! [`construct::construct`] labels every edge of `Q_n` with one of
//! `floor(n/2)` spanning trees or the leftover set (a matching for even `n`, a
//! forest with `floor(n/2)` components for odd `n`). [`verify`] re-checks those
//! claims from scratch, [`bounds`] holds the closed-form invariants, and
//! [`oracle`] brute-forces arboricity and packing numbers of tiny graphs.

pub mod bounds;
pub mod broadcast;
pub mod cli;
pub mod construct;
pub mod decomposition;
pub mod format;
pub mod hypercube;
pub mod oracle;
pub mod unionfind;
pub mod verify;

pub use decomposition::{Decomposition, Kind};
pub use hypercube::{Dimension, Edge, EdgeId, EdgeSet, VertexId};
