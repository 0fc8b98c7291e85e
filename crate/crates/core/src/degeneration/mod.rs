//! Semistable degenerations read off from short tops: the summit case, the
//! splitting of divisors, the dual graph of the special fibre and checks on
//! its topological support.

mod graph;
mod report;

pub use graph::{dual_graph, support_verdict, summit_triangulation, DualGraph, GraphEdge, GraphNode, Support, SupportVerdict};
pub use report::{classify_cy3, classify_k3, smoothness, DegenerationReport, Smoothness};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{content, vector_rank, IntVector};
use crate::polytope::LatticePolytope;
use crate::tops::{is_short_top, Top};

/// Dimension class of the summit of a short top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SummitCase {
    Point,
    Edge,
    TwoFace,
    ThreeFace,
    FourFace,
}

impl SummitCase {
    pub fn from_dim(d: usize) -> Option<Self> {
        [Self::Point, Self::Edge, Self::TwoFace, Self::ThreeFace, Self::FourFace].get(d).copied()
    }

    pub fn dim(self) -> usize {
        self as usize
    }

    /// Case label in the numbering used for tops of the given rank.
    pub fn label(self, rank: usize) -> &'static str {
        match (rank, self) {
            (_, Self::Point) => "1",
            (_, Self::Edge) => "2",
            (4, Self::TwoFace) => "3(a)",
            (4, Self::ThreeFace) => "3(b)",
            (_, Self::TwoFace) => "3",
            (_, Self::ThreeFace) => "4(a)",
            (_, Self::FourFace) => "4(b)",
        }
    }

    pub fn name(self, rank: usize) -> &'static str {
        match (rank, self) {
            (_, Self::Point) => "point",
            (_, Self::Edge) => "edge",
            (_, Self::TwoFace) => "two-face",
            (4, Self::ThreeFace) => "facet",
            (_, Self::ThreeFace) => "three-face",
            (_, Self::FourFace) => "four-polytope",
        }
    }

    /// Whether relative-interior summit points split into two components.
    pub(crate) fn doubles(self, rank: usize) -> bool {
        rank >= 2 && self.dim() + 2 == rank
    }
}

fn require_short(t: &Top) -> Result<()> {
    if !(4..=5).contains(&t.rank()) {
        return Err(Error::Domain(format!("degenerations are read from tops of rank 4 or 5, got {}", t.rank())));
    }
    if !is_short_top(t) {
        return Err(Error::Domain("top is not short".into()));
    }
    Ok(())
}

fn summit_of(t: &Top) -> Result<&LatticePolytope> {
    t.summit().ok_or_else(|| Error::Structure("top has an empty summit".into()))
}

/// Dimension of the face of the dual top whose relative interior holds
/// `w = (0,…,0,−1)`. Facets of the dual top correspond to vertices of the
/// top, and those through `w` are the vertices at height one.
pub fn w_face_dimension(t: &Top) -> usize {
    let tight: Vec<IntVector> = t.summit_vertices().into_iter().filter(|v| v.last().is_one()).collect();
    t.rank() - vector_rank(&tight)
}

/// Summit case from the dimension of the summit, checked against the face
/// of the dual top containing `w`.
pub fn summit_case(t: &Top) -> Result<SummitCase> {
    require_short(t)?;
    let d = summit_of(t)?.dim();
    let from_w = t.rank() - 1 - w_face_dimension(t);
    if d != from_w {
        return Err(Error::Structure(format!("summit dimension {d} disagrees with the face of w (gives {from_w})")));
    }
    SummitCase::from_dim(d).ok_or_else(|| Error::Structure(format!("summit of dimension {d}")))
}

/// Number of components (1 or 2) of the divisor of a summit lattice point.
/// It splits when the point lies in the relative interior of a face `θ` of
/// codimension two and the dual face `θ°`, the hull of the facet normals
/// through `θ`, has a lattice point in its relative interior.
pub fn splits(t: &Top, point: &IntVector) -> Result<usize> {
    if point.rank() != t.rank() || !point.last().is_positive() || !t.polytope().contains(point) {
        return Err(Error::Argument(format!("{point:?} is not a summit lattice point")));
    }
    let normals: Vec<IntVector> = t
        .polytope()
        .facets()
        .iter()
        .filter(|f| f.slack(point).is_zero())
        .map(|f| f.normal.clone())
        .collect();
    // θ is cut out by the tight facets; its dimension is k − rank(normals).
    if vector_rank(&normals) != 2 {
        return Ok(1);
    }
    // θ° is then an edge of the dual; its ends are the two extreme normals
    // along the line they span.
    let dual = crate::polytope::convex_hull(&normals)?;
    if dual.dim() != 1 || dual.vertices().len() != 2 {
        return Ok(1);
    }
    let diff = dual.vertices()[1].sub(&dual.vertices()[0]);
    let interior: crate::linalg::Int = content(diff.iter()) - 1;
    Ok(if interior.is_positive() { 2 } else { 1 })
}
