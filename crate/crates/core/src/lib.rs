//! Cycle prefix digraphs Γ_Δ(D) and their link-deleted variants Γ_Δ(D,−r).
//!
//! * [`topology`]: vertices, rotations, shifts, neighborhoods, relabelings.
//! * [`routing`]: unique shortest paths in Γ_Δ(D); bounded routes and
//!   exact-length walks in Γ_Δ(D,−r).
//! * [`containers`]: Δ internally disjoint paths of length at most `D + 2`.
//! * [`oracle`]: breadth-first search, geodesic counting, exact-length
//!   reachability and max-flow connectivity used to check everything above.

pub mod containers;
pub mod error;
pub mod oracle;
pub mod routing;
pub mod topology;

pub use error::{Error, Result};
pub use oracle::Container;
pub use routing::{Path, Walk};
pub use topology::{ArcOp, NetworkParams, Relabeling, Vertex};
