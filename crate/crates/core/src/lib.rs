//! Exact computation with chord and Jacobi diagrams.
//!
//! Diagrams live on a [`Skeleton`] (intervals, circles and tree-closed
//! graphs) or carry integer labels ([`Frame::Marked`]). Linear combinations
//! are reduced modulo the AS, IHX, STU and branching relations by exact
//! elimination, and the structural maps between the quotient spaces, circle
//! removal, the genus-g pairing and tensor weight systems are provided on top.

pub mod canon;
pub mod cli;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod maps;
pub mod quotient;
pub mod relations;
pub mod skeleton;
pub mod text;
pub mod tqft;
pub mod weights;

pub use diagram::{Diagram, Frame, LinComb, Q};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Half};
pub use quotient::{QuotientBasis, QuotientSpace};
pub use skeleton::Skeleton;
