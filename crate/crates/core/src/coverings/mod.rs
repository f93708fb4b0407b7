//! Covering morphisms of bound quivers and the induced maps of classifying
//! spaces.

mod check;
mod lift;
mod morphism;
mod voltage;

pub use check::{check_covering, check_galois, CoveringReport, GaloisReport, RelationLift, Verdict};
pub use lift::{deck_group, lift_complex_map, CellMap, CellMapReport, ComplexData, DeckGroup, DeckReport, IncidenceRow};
pub use morphism::{GroupAction, PathLifter, QuiverMorphism};
pub use voltage::{voltage_cover, VoltageCover};
