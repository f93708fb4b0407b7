//! The cell complexes `ℬ(Q, I)`, `ℬ♯(Q, I)` and their (co)homology.

pub mod cells;
pub mod cup;
pub mod homology;

pub use cells::{build_complex, Cell, CellComplex};
pub use cup::{coboundary, cup_product, Cochain};
pub use homology::{chain_cohomology, chain_homology, cohomology, homology, Coefficient, Group, HomologyResult};
