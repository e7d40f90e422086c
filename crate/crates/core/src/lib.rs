//! Exact decision and solution counting for square binomial systems
//! `x^alpha_j - c_j x^beta_j` with generic nonzero coefficients.

pub mod blocks;
pub mod cli;
pub mod counting;
pub mod dag_lab;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod preprocess;
pub mod reduce;
pub mod system;

pub use error::{Error, Result};

/// Arbitrary-precision integer matrix used throughout the pipeline.
pub type Matrix = linalg::IntMatrix<num_bigint::BigInt>;

/// Block DAG with arbitrary-precision weights.
pub type Dag = counting::WeightedDag<num_bigint::BigInt>;
