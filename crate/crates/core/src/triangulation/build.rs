use num_traits::{One, Pow, Signed, Zero};

use super::Triangulation;
use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};
use crate::polytope::LatticePolytope;

/// Which lattice points a boundary triangulation may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum BoundaryVariant {
    /// Only the vertices of the polytope.
    VerticesOnly,
    /// Every boundary lattice point, each used as a vertex.
    Maximal,
}

const MAX_ATTEMPTS: u32 = 16;

/// Regular triangulation of the facets of `p` that avoid the origin.
///
/// Points are ordered lexicographically with the origin appended last. The
/// origin is lifted to height 0 and point `i` to `M + ω_i`, where
/// `ω_i = B^i` (plus `C·|x_i|²` in the maximal variant, which makes every
/// point a vertex of the lower hull). For `M` large the lower hull consists
/// of cones from the origin over a placing triangulation of each facet. The
/// heights are kept as a certificate; if a lower facet fails to be such a
/// simplex the constants are enlarged and the lift repeated.
pub fn triangulate_boundary(p: &LatticePolytope, variant: BoundaryVariant) -> Result<Triangulation> {
    if !p.is_full_dimensional() {
        return Err(Error::Precondition("boundary triangulation needs a full-dimensional polytope".into()));
    }
    let r = p.rank();
    let origin = IntVector::zeros(r);
    if !p.contains(&origin) {
        return Err(Error::Precondition("origin must lie in the polytope".into()));
    }
    let away: Vec<usize> = (0..p.facets().len()).filter(|&j| !p.facets()[j].offset.is_zero()).collect();
    let on_away = |x: &IntVector| away.iter().any(|&j| p.facets()[j].slack(x).is_zero());
    let mut pool: Vec<IntVector> = match variant {
        BoundaryVariant::VerticesOnly => p.vertices().iter().filter(|v| on_away(v)).cloned().collect(),
        BoundaryVariant::Maximal => p.lattice_points().into_iter().filter(|x| on_away(x)).collect(),
    };
    pool.sort();
    let n = pool.len();
    pool.push(origin);
    let o = n;

    for attempt in 0..MAX_ATTEMPTS {
        let base = Int::from(2 + attempt);
        let c = match variant {
            BoundaryVariant::VerticesOnly => Int::zero(),
            BoundaryVariant::Maximal => Pow::pow(&base, n + 1),
        };
        let omega: Vec<Int> = (0..n)
            .map(|i| &c * pool[i].dot(&pool[i]) + Pow::pow(&base, i))
            .collect();
        let m = (omega.iter().max().cloned().unwrap_or_default() + Int::one()) * Pow::pow(&Int::from(2), attempt);
        let mut heights: Vec<Int> = omega.iter().map(|w| &m + w).collect();
        heights.push(Int::zero());
        if let Some(simplices) = lower_cells(&pool, &heights, o, variant == BoundaryVariant::Maximal) {
            return Ok(Triangulation::new(pool, simplices)?.with_heights(heights));
        }
    }
    Err(Error::Structure("no generic lifting found".into()))
}

// Lower facets of the lifted pool, each of which must be a simplex through
// the lifted origin. Returns the facets with the origin removed.
fn lower_cells(pool: &[IntVector], heights: &[Int], o: usize, all_used: bool) -> Option<Vec<Vec<usize>>> {
    let r = pool[0].rank();
    let lifted: Vec<IntVector> = pool.iter().zip(heights).map(|(x, h)| x.extended(h.clone())).collect();
    let hull = LatticePolytope::from_points(&lifted).ok()?;
    let mut used = vec![false; pool.len()];
    let mut out = Vec::new();
    for f in hull.facets() {
        if !f.normal[r].is_positive() {
            continue;
        }
        let tight: Vec<usize> = (0..lifted.len()).filter(|&i| f.slack(&lifted[i]).is_zero()).collect();
        if tight.len() != r + 1 || !tight.contains(&o) {
            return None;
        }
        for &i in &tight {
            used[i] = true;
        }
        out.push(tight.into_iter().filter(|&i| i != o).collect());
    }
    if all_used && used.iter().any(|u| !u) {
        return None;
    }
    Some(out)
}

/// Lower cells of an explicit lift, used to re-project a stored certificate.
pub(crate) fn lower_hull_cells(points: &[IntVector], heights: &[Int]) -> Option<Vec<Vec<usize>>> {
    let r = points[0].rank();
    let lifted: Vec<IntVector> = points.iter().zip(heights).map(|(x, h)| x.extended(h.clone())).collect();
    let hull = LatticePolytope::from_points(&lifted).ok()?;
    let mut out: Vec<Vec<usize>> = hull
        .facets()
        .iter()
        .filter(|f| f.normal[r].is_positive())
        .map(|f| (0..lifted.len()).filter(|&i| f.slack(&lifted[i]).is_zero()).collect())
        .collect();
    out.sort();
    Some(out)
}
