//! Lattice-point triangulations of polytope boundaries.
//!
//! A boundary triangulation covers the facets of a polytope that avoid the
//! origin (all facets when the origin is interior). Joining each of its
//! simplices with the origin gives the star triangulation that tops are
//! built over.

mod build;
mod check;

pub use build::{triangulate_boundary, BoundaryVariant};
pub(crate) use build::lower_hull_cells;
pub use check::{fold_form, is_regular, is_unimodular, is_valid, normalized_volume, ridge_links, RidgeLinks};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};

/// Simplices over an ordered point pool.
///
/// A simplex with `rank` points is a boundary simplex (its cone with the
/// origin is a full cell); one with `rank + 1` points is a full cell.
/// Smaller simplices describe a triangulated lower-dimensional face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    points: Vec<IntVector>,
    simplices: Vec<Vec<usize>>,
    /// Heights whose lower hull projects onto the star (or full)
    /// triangulation, when known.
    #[serde(serialize_with = "crate::linalg::serialize_opt_ints")]
    heights: Option<Vec<Int>>,
}

impl Triangulation {
    /// Simplices are stored with sorted indices, in sorted order.
    pub fn new(points: Vec<IntVector>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Argument("empty point pool".into()));
        };
        let rank = first.rank();
        if let Some(p) = points.iter().find(|p| p.rank() != rank) {
            return Err(Error::Dimension {
                expected: rank,
                got: p.rank(),
            });
        }
        let mut simplices: Vec<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        simplices.sort();
        if let Some(s) = simplices.first() {
            let size = s.len();
            if size == 0 || size > rank + 1 {
                return Err(Error::Argument(format!("simplices of size {size} in rank {rank}")));
            }
            if simplices.iter().any(|t| t.len() != size) {
                return Err(Error::Argument("simplices of mixed size".into()));
            }
        }
        if simplices.iter().flatten().any(|&i| i >= points.len()) {
            return Err(Error::Argument("simplex index out of range".into()));
        }
        if simplices.iter().any(|s| s.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::Argument("repeated vertex in a simplex".into()));
        }
        Ok(Triangulation {
            points,
            simplices,
            heights: None,
        })
    }

    pub(crate) fn with_heights(mut self, heights: Vec<Int>) -> Self {
        self.heights = Some(heights);
        self
    }

    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn heights(&self) -> Option<&[Int]> {
        self.heights.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.points[0].rank()
    }

    /// True for boundary triangulations (simplices with `rank` points).
    pub fn is_boundary(&self) -> bool {
        self.simplices.first().is_some_and(|s| s.len() == self.rank())
    }

    pub fn simplex_points(&self, s: &[usize]) -> Vec<IntVector> {
        s.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Index of the origin in the pool.
    pub fn origin_index(&self) -> Option<usize> {
        self.points.iter().position(|p| p.is_zero())
    }

    /// Full-dimensional cells: boundary simplices joined with the origin, or
    /// the simplices themselves for a full triangulation.
    pub fn cells(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_boundary() {
            return Ok(self.simplices.clone());
        }
        let o = self
            .origin_index()
            .ok_or_else(|| Error::Precondition("origin missing from the point pool".into()))?;
        Ok(self
            .simplices
            .iter()
            .map(|s| {
                let mut c = s.clone();
                c.push(o);
                c.sort_unstable();
                c
            })
            .collect())
    }

    /// Distinct edges (pairs of pool indices) of the simplices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .simplices
            .iter()
            .flat_map(|s| {
                let s = s.clone();
                (0..s.len()).flat_map(move |i| {
                    let s = s.clone();
                    (i + 1..s.len()).map(move |j| (s[i], s[j]))
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Indices of the pool points used by some simplex.
    pub fn used_points(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.simplices.iter().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
