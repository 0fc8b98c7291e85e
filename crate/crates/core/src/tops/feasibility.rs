//! Checks deciding which degeneration cases a three-dimensional reflexive
//! boundary can support.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{orthogonal_complement_vector, vector_rank, IntVector};
use crate::polytope::{convex_hull, LatticePolytope};
use crate::triangulation::{is_valid, Triangulation};

/// A hyperplane through the origin cutting a polytope into two tops glued
/// along a reflexive polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    /// Primitive normal of the hyperplane `normal·x = 0`.
    pub normal: IntVector,
    /// Lattice vertices of the slice.
    pub slice: Vec<IntVector>,
}

/// Looks for a primitive hyperplane through the origin whose slice of `base`
/// is reflexive in the hyperplane lattice and whose two closed halves are
/// lattice polytopes. Candidate normals are the normals of planes spanned by
/// pairs of lattice points, which is exhaustive: the slice of a valid split
/// has lattice vertices spanning the plane.
pub fn admits_case2_split(base: &LatticePolytope) -> Result<Option<SplitWitness>> {
    if base.rank() != 3 {
        return Err(Error::Argument(format!("case-2 split search needs rank 3, got {}", base.rank())));
    }
    let pts: Vec<IntVector> = base.lattice_points().into_iter().filter(|p| !p.is_zero()).collect();
    let mut normals = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let n = orthogonal_complement_vector(&[p.clone(), q.clone()]);
            if n.is_zero() {
                continue;
            }
            let n = n.primitive();
            // One sign per hyperplane.
            let first = n.iter().find(|e| !e.is_zero()).expect("nonzero");
            normals.insert(if first.is_negative() { n.neg() } else { n });
        }
    }
    let edges = base.faces(1)?;
    for n in normals {
        if let Some(slice) = split_slice(base, &edges, &n) {
            return Ok(Some(SplitWitness { normal: n, slice }));
        }
    }
    Ok(None)
}

fn split_slice(base: &LatticePolytope, edges: &[crate::polytope::FaceDescriptor], n: &IntVector) -> Option<Vec<IntVector>> {
    let verts = base.vertices();
    let mut slice: BTreeSet<IntVector> = verts.iter().filter(|v| n.dot(v).is_zero()).cloned().collect();
    for e in edges {
        let (u, v) = (&verts[e.vertex_indices[0]], &verts[e.vertex_indices[1]]);
        let (a, b) = (n.dot(u), n.dot(v));
        if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
            // The crossing is (a·v − b·u) / (a − b).
            let num = v.scale(&a).sub(&u.scale(&b));
            let den = &a - &b;
            if num.iter().any(|x| !x.is_multiple_of(&den)) {
                return None;
            }
            slice.insert(IntVector::new(num.iter().map(|x| x / &den).collect()));
        }
    }
    let slice: Vec<IntVector> = slice.into_iter().collect();
    let poly = convex_hull(&slice).ok()?;
    if poly.dim() != 2 {
        return None;
    }
    let (_, local) = poly.in_affine_lattice(Some(&IntVector::zeros(3))).ok()?;
    local.is_reflexive().then(|| poly.vertices().to_vec())
}

/// A pair of lattice points `p`, `−p` of `base`, so the origin is interior
/// to the segment between them. Any such segment can be shrunk to this form
/// because the origin is interior and the primitive direction is a lattice
/// point. Returns the lexicographically least `p` with `p > −p`.
pub fn origin_interior_segment(base: &LatticePolytope) -> Option<(IntVector, IntVector)> {
    let pts = base.lattice_points();
    pts.iter()
        .filter(|p| !p.is_zero() && **p > p.neg() && base.contains(&p.neg()))
        .min()
        .map(|p| (p.clone(), p.neg()))
}

/// A lattice triangulation of `base` in which every tetrahedron contains a
/// segment through the origin. For such a triangulation each boundary
/// triangle contains an end `p` or `q` of the segment, so every facet must
/// contain one end, and the facet edges avoiding that end must lie in facets
/// of the other end. The tetrahedra are then `conv(p, q, r, s)` over those
/// edges `[r, s]`. Segments are tried in lexicographic order.
pub fn case3a_triangulation_exists(base: &LatticePolytope) -> Result<Option<Triangulation>> {
    if base.rank() != 3 || !base.is_reflexive() {
        return Err(Error::Precondition("case 3(a) search needs a reflexive 3-polytope".into()));
    }
    let pts = base.boundary_lattice_points();
    let edges = base.faces(1)?;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let opposite = vector_rank(&[p.clone(), q.clone()]) == 1 && p.dot(q).is_negative();
            if !opposite {
                continue;
            }
            if let Some(t) = star_over_segment(base, &edges, p, q)? {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

fn star_over_segment(
    base: &LatticePolytope,
    edges: &[crate::polytope::FaceDescriptor],
    p: &IntVector,
    q: &IntVector,
) -> Result<Option<Triangulation>> {
    let verts = base.vertices();
    let on = |j: usize, x: &IntVector| base.facets()[j].slack(x).is_zero();
    let nf = base.facets().len();
    if (0..nf).any(|j| !on(j, p) && !on(j, q)) {
        return Ok(None);
    }
    let mut tets: BTreeSet<Vec<IntVector>> = BTreeSet::new();
    for e in edges {
        let (r, s) = (&verts[e.vertex_indices[0]], &verts[e.vertex_indices[1]]);
        let on_edge = |x: &IntVector| e.facet_indices.iter().all(|&j| on(j, x));
        let p_side = e.facet_indices.iter().filter(|&&j| on(j, p)).count();
        let q_side = e.facet_indices.iter().filter(|&&j| on(j, q)).count();
        // An edge avoiding p inside a p-facet must also bound a q-facet.
        if on_edge(p) || on_edge(q) {
            continue;
        }
        if p_side > 0 && q_side > 0 {
            tets.insert(vec![p.clone(), q.clone(), r.clone(), s.clone()]);
        } else if p_side > 0 || q_side > 0 {
            return Ok(None);
        }
    }
    let mut pool: BTreeSet<IntVector> = tets.iter().flatten().cloned().collect();
    pool.insert(p.clone());
    let pool: Vec<IntVector> = pool.into_iter().collect();
    let idx = |x: &IntVector| pool.binary_search(x).expect("pool point");
    let simplices: Vec<Vec<usize>> = tets.iter().map(|t| t.iter().map(idx).collect()).collect();
    let t = Triangulation::new(pool, simplices)?;
    Ok(is_valid(&t).then_some(t))
}
