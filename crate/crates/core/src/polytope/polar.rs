use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::linalg::IntVector;

/// A point with rational coordinates.
pub type RationalPoint = Vec<BigRational>;

/// Polar of a lattice polytope. Vertices may be rational; the facets are
/// `v·y ≥ −1` for the vertices `v` of the original polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    rank: usize,
    vertices: Vec<RationalPoint>,
    facet_normals: Vec<IntVector>,
}

impl RationalPolytope {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    /// Normals `v` of the facets `v·y ≥ −1`.
    pub fn facet_normals(&self) -> &[IntVector] {
        &self.facet_normals
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|q| q.is_integer()))
    }

    /// The same polytope as a lattice polytope, when every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        if !self.is_integral() {
            return None;
        }
        let pts: Vec<IntVector> = self
            .vertices
            .iter()
            .map(|v| IntVector::new(v.iter().map(|q| q.to_integer()).collect()))
            .collect();
        LatticePolytope::from_points(&pts).ok()
    }
}

impl Serialize for RationalPolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let verts: Vec<Vec<String>> = self.vertices.iter().map(|v| v.iter().map(|q| q.to_string()).collect()).collect();
        let mut st = s.serialize_struct("RationalPolytope", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("vertices", &verts)?;
        st.serialize_field("facet_normals", &self.facet_normals)?;
        st.end()
    }
}

/// `{y : n·y ≥ −1 for all n ∈ p}`. Each facet `n·x ≥ b` of `p` (with `b < 0`)
/// gives the vertex `n / (−b)`.
pub fn polar(p: &LatticePolytope) -> Result<RationalPolytope> {
    if !p.has_interior_origin() {
        return Err(Error::Domain("polar needs the origin in the interior".into()));
    }
    let vertices: BTreeSet<RationalPoint> = p
        .facets()
        .iter()
        .map(|f| {
            let den: BigInt = -&f.offset;
            f.normal.iter().map(|n| BigRational::new(n.clone(), den.clone())).collect()
        })
        .collect();
    Ok(RationalPolytope {
        rank: p.rank(),
        vertices: vertices.into_iter().collect(),
        facet_normals: p.vertices().to_vec(),
    })
}

impl LatticePolytope {
    /// Polar as a lattice polytope; errors unless the polar is integral.
    pub fn lattice_polar(&self) -> Result<LatticePolytope> {
        polar(self)?
            .to_lattice()
            .ok_or_else(|| Error::Domain("polar has non-integral vertices".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;
    use crate::linalg::Int;
    use crate::polytope::convex_hull;
    use crate::polytope::tests::{cube, octahedron};

    #[test]
    fn cube_and_octahedron_are_polar() {
        let oct = cube().lattice_polar().unwrap();
        assert_eq!(oct, octahedron());
        assert_eq!(octahedron().lattice_polar().unwrap(), cube());
    }

    #[test]
    fn square_polar() {
        let sq = convex_hull(&[ivec![-1, -1], ivec![1, -1], ivec![-1, 1], ivec![1, 1]]).unwrap();
        let d = sq.lattice_polar().unwrap();
        let mut expected = vec![ivec![1, 0], ivec![-1, 0], ivec![0, 1], ivec![0, -1]];
        expected.sort();
        assert_eq!(d.vertices(), expected.as_slice());
    }

    #[test]
    fn rational_polar() {
        // The edge through (1,−1) and (0,2) lies on 3x + y = 2.
        let t = convex_hull(&[ivec![-1, -1], ivec![1, -1], ivec![0, 2]]).unwrap();
        let pol = polar(&t).unwrap();
        assert!(!pol.is_integral());
        let half = BigRational::new(Int::from(-1), Int::from(2));
        assert!(pol.vertices().contains(&vec![half.clone() * Int::from(3), half]));
        assert!(pol.to_lattice().is_none());
    }

    #[test]
    fn origin_outside_is_domain_error() {
        let sq = convex_hull(&[ivec![0, 0], ivec![2, 0], ivec![0, 2], ivec![2, 2]]).unwrap();
        assert!(matches!(polar(&sq), Err(Error::Domain(_))));
    }
}
