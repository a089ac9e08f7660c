//! Külshammer-type invariants of symmetric algebras over finite fields.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod gerstenhaber;
pub mod higherkappa;
pub mod hochschild;
pub mod kulszero;
pub mod signature;

pub use algebra::Algebra;
pub use error::{Error, Result};
