//! Equiangular lines with a fixed angle.
//!
//! The crate builds optimal equiangular line families from small graphs,
//! computes the spectral radius order of an algebraic number, switches
//! negative graphs to bounded degree, and certifies upper bounds on
//! adjacency eigenvalue multiplicities by deleting a small net and
//! applying the trace method.

pub mod algebra;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod graph;
pub mod korder;
pub mod linalg;
pub mod lines;
pub mod mult_bound;
pub mod spectra;
pub mod switching;

pub use error::{Error, Result};
pub use graph::{EdgeType, Graph, NamedGraph, NetCertificate};
