//! Exact lattice-polytope toolkit: reflexive polytopes, tops and short tops,
//! and the combinatorics of the semistable degenerations they encode.

pub mod error;
pub mod linalg;
pub mod polytope;
pub mod tops;
pub mod degeneration;
pub mod triangulation;
pub mod io;

pub use error::{Error, Result};
pub use linalg::{Int, IntMatrix, IntVector, LatticeFrame, SnfDecomposition};
pub use polytope::{convex_hull, normal_form, polar, Facet, FaceDescriptor, LatticePolytope, NormalFormKey, RationalPolytope};
pub use tops::{DualTop, ParameterAssignment, Top, TopFamily};
pub use triangulation::{BoundaryVariant, Triangulation};
pub use degeneration::{DegenerationReport, DualGraph, SummitCase};
pub use io::{PolytopeRecord, SurveyReport};
