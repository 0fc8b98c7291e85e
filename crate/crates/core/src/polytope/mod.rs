//! Lattice polytopes in exact double description.

mod hull;
mod normal_form;
mod polar;
mod polygons;

pub use normal_form::{normal_form, NormalFormKey};
pub use polar::{polar, RationalPoint, RationalPolytope};
pub use polygons::enumerate_reflexive_polygons;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{serialize_int, Int, IntMatrix, IntVector, LatticeFrame};

/// The inequality `normal·x ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: IntVector,
    #[serde(serialize_with = "serialize_int")]
    pub offset: Int,
}

impl Facet {
    /// `normal·x − offset`; zero on the facet, positive inside.
    pub fn slack(&self, x: &IntVector) -> Int {
        self.normal.dot(x) - &self.offset
    }
}

/// A face given by its vertices and the facets that cut it out.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FaceDescriptor {
    pub dim: usize,
    pub vertex_indices: Vec<usize>,
    pub facet_indices: Vec<usize>,
}

/// A lattice polytope with irredundant vertices and primitive facets.
///
/// For lower-dimensional polytopes, `equations` cut out the affine hull and
/// each facet is one valid lift of a facet inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    rank: usize,
    dim: usize,
    vertices: Vec<IntVector>,
    facets: Vec<Facet>,
    #[serde(skip)]
    equations: Vec<Facet>,
    #[serde(skip)]
    incidence: Vec<Vec<usize>>,
}

/// Convex hull of a finite point set.
pub fn convex_hull(points: &[IntVector]) -> Result<LatticePolytope> {
    LatticePolytope::from_points(points)
}

impl LatticePolytope {
    pub fn from_points(points: &[IntVector]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Argument("convex hull of an empty point set".into()));
        };
        let rank = first.rank();
        if let Some(bad) = points.iter().find(|p| p.rank() != rank) {
            return Err(Error::Dimension {
                expected: rank,
                got: bad.rank(),
            });
        }
        let pts: Vec<IntVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let frame = LatticeFrame::from_points(&pts, None);
        let equations = frame
            .equations()
            .into_iter()
            .map(|(normal, offset)| Facet { normal, offset })
            .collect();
        let dim = frame.dim();
        if dim == 0 {
            return Ok(Self::assemble(rank, 0, pts, Vec::new(), equations));
        }
        let local: Vec<IntVector> = pts.iter().map(|p| frame.to_local(p).expect("point on its own hull")).collect();
        let h = hull::local_hull(&local);
        let vertices = h.vertices.iter().map(|&i| pts[i].clone()).collect();
        let facets = h
            .facets
            .iter()
            .map(|(n, b)| {
                let (normal, offset) = frame.lift_inequality(n, b);
                Facet { normal, offset }
            })
            .collect();
        Ok(Self::assemble(rank, dim, vertices, facets, equations))
    }

    fn assemble(rank: usize, dim: usize, mut vertices: Vec<IntVector>, mut facets: Vec<Facet>, equations: Vec<Facet>) -> Self {
        vertices.sort();
        facets.sort();
        let incidence = facets
            .iter()
            .map(|f| (0..vertices.len()).filter(|&i| f.slack(&vertices[i]).is_zero()).collect())
            .collect();
        LatticePolytope {
            rank,
            dim,
            vertices,
            facets,
            equations,
            incidence,
        }
    }

    /// Lattice rank of the ambient space.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Affine dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    /// Indices of the vertices lying on facet `j`.
    pub fn facet_vertex_indices(&self, j: usize) -> &[usize] {
        &self.incidence[j]
    }

    pub fn facet_vertices(&self, j: usize) -> Vec<IntVector> {
        self.incidence[j].iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Matrix whose rows are the vertices.
    pub fn vertex_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.vertices).expect("uniform rank")
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        x.rank() == self.rank
            && self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// Membership in the relative interior.
    pub fn relative_interior_contains(&self, x: &IntVector) -> bool {
        x.rank() == self.rank
            && self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    /// True when the origin lies in the interior.
    pub fn has_interior_origin(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_negative())
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let lo: Vec<Int> = (0..self.rank)
            .map(|c| self.vertices.iter().map(|v| v[c].clone()).min().expect("nonempty"))
            .collect();
        let hi: Vec<Int> = (0..self.rank)
            .map(|c| self.vertices.iter().map(|v| v[c].clone()).max().expect("nonempty"))
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x = IntVector::new(cur.clone());
            if self.contains(&x) {
                out.push(x);
            }
            // Odometer with the last coordinate fastest, so output is lexicographic.
            let mut c = self.rank;
            loop {
                if c == 0 {
                    return out;
                }
                c -= 1;
                if cur[c] < hi[c] {
                    cur[c] += 1;
                    break;
                }
                cur[c] = lo[c].clone();
            }
        }
    }

    /// Lattice points on the relative boundary.
    pub fn boundary_lattice_points(&self) -> Vec<IntVector> {
        self.lattice_points()
            .into_iter()
            .filter(|x| !self.relative_interior_contains(x))
            .collect()
    }

    /// Lattice points in the relative interior.
    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        self.lattice_points()
            .into_iter()
            .filter(|x| self.relative_interior_contains(x))
            .collect()
    }

    /// All faces of dimension `d`, in a deterministic order.
    pub fn faces(&self, d: usize) -> Result<Vec<FaceDescriptor>> {
        if d > self.dim {
            return Err(Error::Argument(format!("face dimension {d} exceeds polytope dimension {}", self.dim)));
        }
        Ok(self.face_lattice().into_iter().filter(|f| f.dim == d).collect())
    }

    /// Every nonempty face including the polytope itself.
    pub fn face_lattice(&self) -> Vec<FaceDescriptor> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all);
        let mut frontier: Vec<Vec<usize>> = self.incidence.clone();
        while let Some(s) = frontier.pop() {
            if s.is_empty() || !sets.insert(s.clone()) {
                continue;
            }
            for inc in &self.incidence {
                let meet: Vec<usize> = s.iter().copied().filter(|i| inc.binary_search(i).is_ok()).collect();
                if meet.len() < s.len() && !sets.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        let mut out: Vec<FaceDescriptor> = sets
            .into_iter()
            .map(|vs| {
                let pts: Vec<IntVector> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
                let dim = crate::linalg::affine_dimension(&pts) as usize;
                let facet_indices = (0..self.facets.len())
                    .filter(|&j| vs.iter().all(|i| self.incidence[j].binary_search(i).is_ok()))
                    .collect();
                FaceDescriptor {
                    dim,
                    vertex_indices: vs,
                    facet_indices,
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Reflexive: full-dimensional with every facet at lattice distance one
    /// from the origin.
    pub fn is_reflexive(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset == -Int::one())
    }

    /// Every facet is a simplex whose vertices form a lattice basis.
    pub fn is_smooth_fano(&self) -> Result<bool> {
        if !self.is_reflexive() {
            return Err(Error::Domain("smooth Fano test needs a reflexive polytope".into()));
        }
        Ok((0..self.facets.len()).all(|j| {
            let vs = self.facet_vertices(j);
            vs.len() == self.rank && IntMatrix::from_rows(&vs).expect("uniform rank").is_unimodular()
        }))
    }

    /// The polytope expressed in integral coordinates of its own affine
    /// lattice, based at `origin` (which must lie in the affine hull).
    pub fn in_affine_lattice(&self, origin: Option<&IntVector>) -> Result<(LatticeFrame, LatticePolytope)> {
        if origin.is_some_and(|o| !self.equations.iter().all(|e| e.slack(o).is_zero())) {
            return Err(Error::Argument("base point is off the affine hull".into()));
        }
        let frame = LatticeFrame::from_points(&self.vertices, origin);
        let local: Vec<IntVector> = self.vertices.iter().map(|v| frame.to_local(v).expect("on hull")).collect();
        if frame.dim() == 0 {
            return Ok((frame, LatticePolytope::assemble(0, 0, vec![IntVector::zeros(0)], Vec::new(), Vec::new())));
        }
        Ok((frame, LatticePolytope::from_points(&local)?))
    }

    /// Image under a linear map `x ↦ g·x`.
    pub fn transform(&self, g: &IntMatrix) -> Result<LatticePolytope> {
        let pts: Result<Vec<IntVector>> = self.vertices.iter().map(|v| g.mul_vec(v)).collect();
        LatticePolytope::from_points(&pts?)
    }
}
