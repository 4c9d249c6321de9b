//! Exact Macdonald functions `Q_lambda(q, q^beta)` in the power-sum basis,
//! computed by several independent constructions, together with q-Dyson
//! constant-term identities for the Laurent polynomial `F_{beta,q}[s;t]`.
//!
//! All arithmetic is exact over `Q(q)`.

pub mod cache;
pub mod error;
pub mod exactq;
pub mod identities;
pub mod laurent;
pub mod linalg;
pub mod macroutes;
pub mod partitions;
pub mod qdyson;
pub mod symfunc;
pub mod verify;
pub mod vertexop;

pub use error::{Error, Result};
