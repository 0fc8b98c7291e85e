//! Beneath-beyond convex hull for full-dimensional point sets in local
//! lattice coordinates.

use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;

use crate::linalg::{affine_dimension, orthogonal_complement_vector, vector_rank, Int, IntVector};

pub(crate) struct LocalHull {
    /// Indices into the input of the extreme points.
    pub vertices: Vec<usize>,
    /// Primitive inequalities `n·x ≥ b`, one per facet, unordered.
    pub facets: Vec<(IntVector, Int)>,
}

struct Piece {
    verts: Vec<usize>,
    normal: IntVector,
    offset: Int,
    alive: bool,
}

/// Hull of distinct points spanning their ambient space (rank ≥ 1).
///
/// Facets are built as simplicial pieces and merged by their supporting
/// hyperplane at the end. Points on the plane of a piece count as not
/// visible, so pieces never fold back over themselves.
pub(crate) fn local_hull(points: &[IntVector]) -> LocalHull {
    let d = points[0].rank();
    debug_assert_eq!(affine_dimension(points), d as isize);

    let mut simplex = vec![0usize];
    for i in 1..points.len() {
        if simplex.len() == d + 1 {
            break;
        }
        let mut trial: Vec<IntVector> = simplex.iter().map(|&j| points[j].clone()).collect();
        trial.push(points[i].clone());
        if affine_dimension(&trial) as usize == simplex.len() {
            simplex.push(i);
        }
    }
    // Scaled interior reference point: the sum of the simplex vertices.
    let scale = Int::from(d as u64 + 1);
    let centre = simplex
        .iter()
        .fold(IntVector::zeros(d), |acc, &i| acc.add(&points[i]));

    let make_piece = |verts: Vec<usize>| -> Piece {
        let q0 = &points[verts[0]];
        let rows: Vec<IntVector> = verts[1..].iter().map(|&i| points[i].sub(q0)).collect();
        let mut normal = orthogonal_complement_vector(&rows).primitive();
        let mut offset = normal.dot(q0);
        if normal.dot(&centre) < &offset * &scale {
            normal = normal.neg();
            offset = -offset;
        }
        Piece {
            verts,
            normal,
            offset,
            alive: true,
        }
    };

    let mut pieces: Vec<Piece> = (0..=d)
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &i)| i)
                .collect();
            let mut verts = verts;
            verts.sort_unstable();
            make_piece(verts)
        })
        .collect();

    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for (p, point) in points.iter().enumerate() {
        if in_simplex.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = pieces
            .iter()
            .enumerate()
            .filter(|(_, pc)| pc.alive && pc.normal.dot(point) < pc.offset)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for &v in &visible {
            let verts = &pieces[v].verts;
            for skip in 0..verts.len() {
                let ridge: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        for &v in &visible {
            pieces[v].alive = false;
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut verts in horizon {
            verts.push(p);
            verts.sort_unstable();
            pieces.push(make_piece(verts));
        }
    }

    let facets: BTreeSet<(IntVector, Int)> = pieces
        .iter()
        .filter(|pc| pc.alive)
        .map(|pc| (pc.normal.clone(), pc.offset.clone()))
        .collect();
    let candidates: BTreeSet<usize> = pieces
        .iter()
        .filter(|pc| pc.alive)
        .flat_map(|pc| pc.verts.iter().copied())
        .collect();
    let vertices = candidates
        .into_iter()
        .filter(|&i| {
            let tight: Vec<IntVector> = facets
                .iter()
                .filter(|(n, b)| &n.dot(&points[i]) == b)
                .map(|(n, _)| n.clone())
                .collect();
            vector_rank(&tight) == d
        })
        .collect();
    debug_assert!(facets
        .iter()
        .all(|(n, b)| points.iter().all(|x| !(n.dot(x) - b).is_negative())));
    LocalHull {
        vertices,
        facets: facets.into_iter().collect(),
    }
}
