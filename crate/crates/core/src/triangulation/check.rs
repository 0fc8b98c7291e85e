use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::build::lower_hull_cells;
use super::Triangulation;
use crate::error::{Error, Result};
use crate::linalg::{lp, orthogonal_complement_vector, Int, IntMatrix, IntVector, LatticeFrame};
use crate::polytope::{convex_hull, LatticePolytope};

/// Normalized volume (`d!` times Euclidean volume in the polytope's own
/// affine lattice), by pulling from the first vertex: the pyramid over a
/// facet `G` with apex at lattice distance `h` has volume `h·vol(G)`.
pub fn normalized_volume(p: &LatticePolytope) -> Int {
    let Ok((_, local)) = p.in_affine_lattice(None) else {
        return Int::zero();
    };
    if local.dim() == 0 {
        return Int::one();
    }
    let apex = &local.vertices()[0];
    let mut total = Int::zero();
    for (j, f) in local.facets().iter().enumerate() {
        let h = f.slack(apex);
        if h.is_zero() {
            continue;
        }
        let g = convex_hull(&local.facet_vertices(j)).expect("nonempty facet");
        total += h * normalized_volume(&g);
    }
    total
}

fn simplex_volume(local: &[IntVector]) -> Int {
    let rows: Vec<IntVector> = local[1..].iter().map(|q| q.sub(&local[0])).collect();
    if rows.is_empty() {
        return Int::one();
    }
    IntMatrix::from_rows(&rows).expect("uniform").determinant().expect("square").abs()
}

fn faces_of(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |skip| s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect())
}

/// Checks that the simplices tile their region: the origin-avoiding facets
/// of the pool's hull for a boundary triangulation, the hull itself for a
/// full one. Per region piece, simplices must be non-degenerate, their
/// volumes must add up to the piece's volume, every ridge inside the piece
/// must have exactly two simplices on opposite sides and every ridge on its
/// relative boundary exactly one.
pub fn is_valid(t: &Triangulation) -> bool {
    let Ok(hull) = convex_hull(t.points()) else {
        return false;
    };
    if t.simplices().is_empty() {
        return false;
    }
    let mut dup = t.simplices().to_vec();
    dup.dedup();
    if dup.len() != t.simplices().len() {
        return false;
    }
    let pieces: Vec<LatticePolytope> = if t.is_boundary() {
        if !hull.is_full_dimensional() || !hull.contains(&IntVector::zeros(t.rank())) {
            return false;
        }
        (0..hull.facets().len())
            .filter(|&j| !hull.facets()[j].offset.is_zero())
            .map(|j| convex_hull(&hull.facet_vertices(j)).expect("nonempty"))
            .collect()
    } else {
        vec![hull]
    };
    let mut assigned = vec![false; t.simplices().len()];
    for piece in &pieces {
        let members: Vec<usize> = (0..t.simplices().len())
            .filter(|&s| t.simplices()[s].iter().all(|&i| piece.contains(&t.points()[i])))
            .collect();
        if !piece_is_tiled(t, piece, &members) {
            return false;
        }
        for s in members {
            assigned[s] = true;
        }
    }
    assigned.iter().all(|&a| a)
}

fn piece_is_tiled(t: &Triangulation, piece: &LatticePolytope, members: &[usize]) -> bool {
    let frame = LatticeFrame::from_points(piece.vertices(), None);
    let m = frame.dim();
    let local = |i: usize| frame.to_local(&t.points()[i]).expect("point of the piece");
    let mut vol = Int::zero();
    for &s in members {
        let pts: Vec<IntVector> = t.simplices()[s].iter().map(|&i| local(i)).collect();
        if pts.len() != m + 1 {
            return false;
        }
        let v = simplex_volume(&pts);
        if v.is_zero() {
            return false;
        }
        vol += v;
    }
    if vol != normalized_volume(piece) {
        return false;
    }
    if m == 0 {
        return true;
    }
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &s in members {
        for r in faces_of(&t.simplices()[s]) {
            ridges.entry(r).or_default().push(s);
        }
    }
    for (ridge, inc) in ridges {
        let on_boundary = piece
            .facets()
            .iter()
            .any(|f| ridge.iter().all(|&i| f.slack(&t.points()[i]).is_zero()));
        match (on_boundary, inc.len()) {
            (true, 1) => {}
            (false, 2) => {
                let rp: Vec<IntVector> = ridge.iter().map(|&i| local(i)).collect();
                let rows: Vec<IntVector> = rp[1..].iter().map(|q| q.sub(&rp[0])).collect();
                let normal = orthogonal_complement_vector(&rows);
                let side = |s: usize| {
                    let apex = t.simplices()[s].iter().find(|i| !ridge.contains(i)).expect("apex");
                    normal.dot(&local(*apex).sub(&rp[0])).signum()
                };
                if side(inc[0]) * side(inc[1]) != -Int::one() {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Every cell has a unimodular edge matrix: for boundary triangulations the
/// cone over each simplex is spanned by a lattice basis.
pub fn is_unimodular(t: &Triangulation) -> bool {
    t.simplices().iter().all(|s| {
        let pts = t.simplex_points(s);
        let rows: Vec<IntVector> = if t.is_boundary() {
            pts
        } else {
            pts[1..].iter().map(|q| q.sub(&pts[0])).collect()
        };
        IntMatrix::from_rows(&rows).expect("uniform").is_unimodular()
    })
}

/// Codimension-one faces of the simplices with their incident simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeLinks {
    /// Ridges shared by two simplices: `(ridge, s, t)` with `s < t`.
    pub interior: Vec<(Vec<usize>, usize, usize)>,
    /// Ridges of a single simplex (the region has boundary there).
    pub boundary: Vec<(Vec<usize>, usize)>,
}

pub fn ridge_links(t: &Triangulation) -> Result<RidgeLinks> {
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (s, simplex) in t.simplices().iter().enumerate() {
        for r in faces_of(simplex) {
            ridges.entry(r).or_default().push(s);
        }
    }
    let mut out = RidgeLinks {
        interior: Vec::new(),
        boundary: Vec::new(),
    };
    for (r, inc) in ridges {
        match inc.as_slice() {
            [a] => out.boundary.push((r, *a)),
            [a, b] => out.interior.push((r, *a, *b)),
            _ => {
                return Err(Error::Structure(format!("ridge {r:?} lies in {} simplices", inc.len())));
            }
        }
    }
    Ok(out)
}

/// Linear form in heights deciding convexity of a lift across a ridge.
///
/// `ridge` holds `m` points of an `m`-dimensional space; `u1` and `u2` are
/// the vertices opposite the ridge in its two cells. The form is the
/// determinant with rows `(p, h_p, 1)`, expanded along the height column.
/// Returns coefficients for the heights of `[ridge.., u1, u2]`, signed so
/// that the `u2` coefficient is positive and divided by their content:
/// `L ≥ 0` is local convexity, `L = 0` means the two cells lift into one
/// hyperplane.
pub fn fold_form(ridge: &[IntVector], u1: &IntVector, u2: &IntVector) -> Result<Vec<Int>> {
    let m = u1.rank();
    if ridge.len() != m || ridge.iter().any(|p| p.rank() != m) || u2.rank() != m {
        return Err(Error::Dimension {
            expected: m,
            got: ridge.len(),
        });
    }
    let rows: Vec<&IntVector> = ridge.iter().chain([u1, u2]).collect();
    let n = rows.len();
    let mut coeffs = Vec::with_capacity(n);
    for skip in 0..n {
        // Minor without row `skip` and without the height column; what
        // remains is the point coordinates and the trailing ones.
        let data: Vec<Int> = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .flat_map(|(_, p)| p.iter().cloned().chain(std::iter::once(Int::one())))
            .collect();
        let minor = IntMatrix::new(n - 1, n - 1, data).expect("square").determinant().expect("square");
        coeffs.push(if (skip + m).is_multiple_of(2) { minor } else { -minor });
    }
    if coeffs[n - 1].is_zero() {
        return Err(Error::Structure("cell over the ridge is degenerate".into()));
    }
    if coeffs[n - 1].is_negative() {
        coeffs.iter_mut().for_each(|c| *c = -std::mem::take(c));
    }
    let g = crate::linalg::content(coeffs.iter());
    Ok(coeffs.into_iter().map(|c| c / &g).collect())
}

/// Fold forms over all interior ridges of the cells, as coefficient rows
/// indexed by pool position.
pub(crate) fn fold_rows(t: &Triangulation) -> Result<Vec<IntVector>> {
    let cells = t.cells()?;
    let full = Triangulation::new(t.points().to_vec(), cells.clone())?;
    let links = ridge_links(&full)?;
    let mut rows = Vec::with_capacity(links.interior.len());
    for (ridge, a, b) in &links.interior {
        let u1 = full.simplices()[*a].iter().find(|i| !ridge.contains(i)).expect("apex");
        let u2 = full.simplices()[*b].iter().find(|i| !ridge.contains(i)).expect("apex");
        let rp = t.simplex_points(ridge);
        let form = fold_form(&rp, &t.points()[*u1], &t.points()[*u2])?;
        let mut row = vec![Int::zero(); t.points().len()];
        for (idx, c) in ridge.iter().chain([u1, u2]).zip(form) {
            row[*idx] += c;
        }
        rows.push(IntVector::new(row));
    }
    Ok(rows)
}

/// Decides regularity of a valid triangulation exactly: it is regular iff
/// some heights make every fold form strictly positive. The feasibility
/// problem is solved with an exact rational simplex method, and the
/// resulting heights are re-projected as a check.
pub fn is_regular(t: &Triangulation) -> Result<Option<Vec<Int>>> {
    if !is_valid(t) {
        return Err(Error::Structure("triangulation is not valid".into()));
    }
    let rows = fold_rows(t)?;
    let Some(u) = lp::strictly_positive_solution(&rows) else {
        return Ok(None);
    };
    let mut heights = lp::integral_direction(&u).into_entries();
    // Unused pool points may sit anywhere above the lower hull.
    let top: Int = heights.iter().map(|h| h.abs()).max().unwrap_or_default() * 4 + 1;
    let used = t.cells()?.concat();
    for (i, h) in heights.iter_mut().enumerate() {
        if !used.contains(&i) {
            *h = top.clone();
        }
    }
    Ok(certificate_holds(t, &heights).then_some(heights))
}

/// The lower hull of the lifted pool projects exactly onto the cells.
pub(crate) fn certificate_holds(t: &Triangulation, heights: &[Int]) -> bool {
    let Ok(mut cells) = t.cells() else {
        return false;
    };
    cells.sort();
    lower_hull_cells(t.points(), heights).is_some_and(|c| c == cells)
}

impl Triangulation {
    /// Re-projects the stored height certificate.
    pub fn certificate_is_valid(&self) -> bool {
        self.heights().is_some_and(|h| certificate_holds(self, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;
    use crate::triangulation::{triangulate_boundary, BoundaryVariant};

    fn cube() -> LatticePolytope {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(ivec![x, y, z]);
                }
            }
        }
        convex_hull(&pts).unwrap()
    }

    fn octahedron() -> LatticePolytope {
        convex_hull(&[ivec![1, 0, 0], ivec![-1, 0, 0], ivec![0, 1, 0], ivec![0, -1, 0], ivec![0, 0, 1], ivec![0, 0, -1]]).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&cube()), Int::from(48));
        // Eight unit simplices.
        assert_eq!(normalized_volume(&octahedron()), Int::from(8));
        let sq = convex_hull(&[ivec![-1, -1, 1], ivec![1, -1, 1], ivec![-1, 1, 1], ivec![1, 1, 1]]).unwrap();
        assert_eq!(normalized_volume(&sq), Int::from(8));
        assert_eq!(normalized_volume(&convex_hull(&[ivec![0, 0], ivec![3, 0]]).unwrap()), Int::from(3));
    }

    #[test]
    fn octahedron_boundary() {
        let t = triangulate_boundary(&octahedron(), BoundaryVariant::Maximal).unwrap();
        assert_eq!(t.simplices().len(), 8);
        assert!(is_valid(&t));
        assert!(is_unimodular(&t));
        assert!(t.certificate_is_valid());
        let links = ridge_links(&t).unwrap();
        assert_eq!(links.interior.len(), 12);
        assert!(links.boundary.is_empty());
    }

    #[test]
    fn cube_boundary_variants() {
        let t = triangulate_boundary(&cube(), BoundaryVariant::VerticesOnly).unwrap();
        assert_eq!(t.simplices().len(), 12);
        assert!(is_valid(&t));
        assert!(!is_unimodular(&t));
        assert_eq!(ridge_links(&t).unwrap().interior.len(), 18);
        assert!(t.certificate_is_valid());
        let m = triangulate_boundary(&cube(), BoundaryVariant::Maximal).unwrap();
        assert_eq!(m.simplices().len(), 48);
        assert_eq!(m.used_points().len(), 26);
        assert!(is_valid(&m));
        assert!(is_unimodular(&m));
        assert!(m.certificate_is_valid());
    }

    #[test]
    fn triangle_boundary() {
        let tri = convex_hull(&[ivec![1, 0], ivec![0, 1], ivec![-1, -1]]).unwrap();
        let t = triangulate_boundary(&tri, BoundaryVariant::Maximal).unwrap();
        assert_eq!(t.simplices().len(), 3);
        assert!(is_valid(&t));
        assert!(is_unimodular(&t));
    }

    #[test]
    fn invalid_triangulations() {
        let pts = vec![ivec![0, 0], ivec![2, 0], ivec![0, 2], ivec![2, 2], ivec![1, 1]];
        // Two triangles overlapping in their interiors.
        let t = Triangulation::new(pts.clone(), vec![vec![0, 1, 3], vec![0, 1, 2]]).unwrap();
        assert!(!is_valid(&t));
        // Half the square.
        let t = Triangulation::new(pts.clone(), vec![vec![0, 1, 3]]).unwrap();
        assert!(!is_valid(&t));
        let t = Triangulation::new(pts, vec![vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        assert!(is_valid(&t));
    }

    #[test]
    fn half_boundary_is_invalid() {
        let t = triangulate_boundary(&octahedron(), BoundaryVariant::Maximal).unwrap();
        let half = Triangulation::new(t.points().to_vec(), t.simplices()[..4].to_vec()).unwrap();
        assert!(!is_valid(&half));
    }

    #[test]
    fn single_simplex_has_no_interior_ridges() {
        let t = Triangulation::new(vec![ivec![0, 0], ivec![1, 0], ivec![0, 1]], vec![vec![0, 1, 2]]).unwrap();
        let links = ridge_links(&t).unwrap();
        assert!(links.interior.is_empty());
        assert_eq!(links.boundary.len(), 3);
        assert!(is_valid(&t));
    }

    #[test]
    fn fold_form_reduction() {
        // det [[0,a,1],[-1,b,1],[1,c,1]] = 2a - b - c, flipped so c counts positively.
        let f = fold_form(&[ivec![0]], &ivec![-1], &ivec![1]).unwrap();
        assert_eq!(f, vec![Int::from(-2), Int::from(1), Int::from(1)]);
        let eval = |h: [i64; 3]| -> Int { f.iter().zip(h).map(|(c, x)| c * Int::from(x)).sum() };
        assert_eq!(eval([-1, -1, -1]), Int::zero());
        assert!(eval([-1, -1, 0]) > Int::zero());
    }

    #[test]
    fn regularity() {
        let t = triangulate_boundary(&cube(), BoundaryVariant::Maximal).unwrap();
        let plain = Triangulation::new(t.points().to_vec(), t.simplices().to_vec()).unwrap();
        assert!(is_regular(&plain).unwrap().is_some());
        // The classic non-regular "mother of all examples": a triangle with an
        // inner triangle, triangulated with a twist.
        let pts = vec![ivec![0, 0], ivec![4, 0], ivec![0, 4], ivec![1, 1], ivec![2, 1], ivec![1, 2]];
        let twisted = Triangulation::new(
            pts.clone(),
            vec![
                vec![3, 4, 5],
                vec![0, 1, 3],
                vec![1, 3, 4],
                vec![1, 2, 4],
                vec![2, 4, 5],
                vec![2, 0, 5],
                vec![0, 3, 5],
            ],
        )
        .unwrap();
        assert!(is_valid(&twisted));
        assert!(is_regular(&twisted).unwrap().is_none());
        let mirrored = Triangulation::new(
            pts,
            vec![
                vec![3, 4, 5],
                vec![0, 1, 4],
                vec![0, 3, 4],
                vec![1, 2, 5],
                vec![1, 4, 5],
                vec![2, 0, 3],
                vec![2, 3, 5],
            ],
        )
        .unwrap();
        assert!(is_valid(&mirrored));
        assert!(is_regular(&mirrored).unwrap().is_none());
    }
}
