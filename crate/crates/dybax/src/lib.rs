//! Numerical toolkit for dynamical Temperley-Lieb, Hecke and
//! Birman-Murakami-Wenzl operator families on graph groupoids.
//!
//! The crate builds block operators on source fibers of tensor powers of a
//! graph-graded vector space, verifies the defining local and global
//! relations, inserts spectral parameters (Baxterization) to obtain dynamical
//! R-matrices, checks the dynamical Yang-Baxter equation, and assembles
//! face-type transfer matrices and spin-chain Hamiltonians on closed-path
//! state spaces at desk scale.
//!
//! Everything is deterministic: fixed vertex orderings, fixed sample grids,
//! no RNG. Reports are reproducible byte-for-byte apart from timing fields.

pub mod baxter;
pub mod catalog;
pub mod checks;
pub mod error;
pub mod families;
pub mod fiber;
pub mod graph;
pub mod lattice;
pub mod report;
pub mod theta;

pub use error::{Error, Result};
pub use fiber::C64;
pub use graph::{Arrow, Graph, Path, ReducedWord, Vertex};
