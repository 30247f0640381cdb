//! Exact isometric embeddings `d·I_N ↪ I_M` between intersection lattices of
//! closed oriented 4-manifolds, and the branched-covering degrees they imply.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod decide;
pub mod embedding;
pub mod error;
pub mod forms;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod topology;

pub use embedding::Embedding;
pub use error::{Error, Result};
pub use lattice::{FormInvariants, GramMatrix, Parity, Signature};
pub use matrix::IntMatrix;
