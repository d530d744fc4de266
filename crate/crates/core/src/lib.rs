//! Exact Schur coefficients of chromatic symmetric functions.
//!
//! Coefficients `[s_λ] X_G` are computed three independent ways: as a
//! signed count of special rim hook G-tabloids, as a signed sum over
//! special rim hook tabloids weighted by stable-partition counts, and by
//! expanding `X_G` in monomials and inverting the Kostka matrix. The
//! [`verify`] module replays the recurrences and positivity results for
//! generalized nets and spiders against those routes.

pub mod error;
pub mod graph;
pub mod partition;
pub mod schur;
pub mod shorthand;
pub mod symfunc;
pub mod tabloid;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{LabeledGraph, NetLabeling, VertexRole, VertexSet};
pub use partition::{Composition, Partition};
pub use schur::Method;
pub use symfunc::{Basis, CoefficientVector};
pub use tabloid::{SrhGTabloid, SrhTabloid};
pub use verify::VerificationReport;
