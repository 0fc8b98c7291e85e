//! Tops, short tops and the construction of short-top families.

mod family;
mod feasibility;
mod simplex;
mod top;

pub use family::{
    build_short_top_family, facet_divisibility, lift_to_top, ridge_convexity_form, AffineForm, BoundedFacet, Congruence,
    ConvexityInequality, DivisibilityCondition, DualTop, ParameterAssignment, TopFamily,
};
pub use feasibility::{admits_case2_split, case3a_triangulation_exists, origin_interior_segment, SplitWitness};
pub use simplex::{classify_simplex_tops, exceptional_simplex_top, standard_simplex};
pub use top::{is_short_top, is_top, Top};
