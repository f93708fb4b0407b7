//! Simplicial and Hochschild cohomology of algebras with a semi-normed basis.

mod comparison;
mod epsilon_mu;
mod hochschild;
mod seminormed;
mod simplicial;

pub use comparison::{phi_psi_maps, ComparisonMaps, ComparisonReport};
pub use epsilon_mu::{epsilon_mu, EpsilonMu, EpsilonMuReport};
pub use hochschild::{hochschild_complex, hochschild_cup, HochschildComplex};
pub use seminormed::{find_semi_normed_basis, verify_semi_normed_basis, BasisElement, SemiNormedAlgebra};
pub use simplicial::{simplicial_complex, SimplicialComplexSC};
