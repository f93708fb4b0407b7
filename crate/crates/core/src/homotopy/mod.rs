//! Homotopy of bound quivers: minimal relations, homotopy classes of paths
//! and the fundamental group.

pub mod classes;
pub mod group;
pub mod minimal;
pub mod walk;

pub use classes::{natural_homotopy_classes, PathClass, PathClassTable, Variant};
pub use group::{
    abelianization, pi1_presentation, simplify_presentation, van_kampen_pushout, AbelianInvariants, GroupPresentation, VanKampen, Word,
};
pub use minimal::{is_minimal_relation, minimal_relation_supports, MinimalRelation, MinimalRelations, SupportWarning, DEFAULT_SUPPORT_CAP};
pub use walk::{default_depth_bound, walk_homotopy_classes, DEFAULT_STATE_BUDGET};
