//! Homological invariants of finite-dimensional algebras.
//!
//! The closed-form side (`dynkin`, `serre`, `nakayama`, `replicated`,
//! `geigle_lenzing`) evaluates formulas on combinatorial data. The `oracle`
//! side computes the same quantities by brute-force linear algebra on
//! modules over exact rationals, and `catalog` runs one against the other.
//!
//! Vertex indices are 0-based in the API; text formats and JSON use 1-based
//! labels where they name a vertex.

pub mod catalog;
pub mod dim;
pub mod dynkin;
pub mod error;
pub mod geigle_lenzing;
pub mod matrix;
pub mod nakayama;
pub mod oracle;
pub mod rational;
pub mod replicated;
pub mod serre;

pub use dim::Dim;
pub use error::{Error, Result};
pub use matrix::Mat;
pub use rational::Q;
