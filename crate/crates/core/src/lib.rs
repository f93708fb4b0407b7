//! Combinatorial classifying spaces of bound quivers.
//!
//! Given a bound quiver `(Q, I)` this crate builds the cell complexes `ℬ(Q,I)`
//! and `ℬ♯(Q,I)`, presents the fundamental group `π₁(Q,I)`, computes cellular,
//! simplicial and Hochschild (co)homology, compares them through the maps
//! `φ`, `ψ`, `ε`, `μ`, and verifies covering and Galois covering morphisms.

pub mod algcohom;
pub mod cli;
pub mod complex;
pub mod coverings;
pub mod dsl;
pub mod error;
pub mod field;
pub mod homotopy;
pub mod linalg;
pub mod paths;
pub mod properties;
pub mod quiver;
pub mod report;
pub mod snf;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use paths::{PathTable, DEFAULT_PATH_CAP};
pub use quiver::{Arrow, BoundQuiver, Path, RelVector};
