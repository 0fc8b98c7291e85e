use num_traits::{One, Signed, Zero};

use super::family::{build_short_top_family, lift_to_top, DualTop, TopFamily};
use super::top::Top;
use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};
use crate::polytope::{convex_hull, LatticePolytope};
use crate::triangulation::{triangulate_boundary, BoundaryVariant};

/// `conv(e_1, …, e_n, −e_1 − … − e_n)`.
pub fn standard_simplex(n: usize) -> LatticePolytope {
    let mut pts: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    pts.push(IntVector::new(vec![-Int::one(); n]));
    convex_hull(&pts).expect("simplex")
}

/// Tops over the standard `(k−1)`-simplex: the one-parameter short family
/// (its boundary triangulation is unique) and the exceptional top with
/// summit vertex `(−1, …, −1, k)`, which is not short.
pub fn classify_simplex_tops(k: usize) -> Result<(TopFamily, Top)> {
    if !(2..=6).contains(&k) {
        return Err(Error::Argument(format!("simplex tops are classified for 2 <= k <= 6, got {k}")));
    }
    let base = standard_simplex(k - 1);
    let t = triangulate_boundary(&base, BoundaryVariant::VerticesOnly)?;
    let family = build_short_top_family(&base, &t)?;
    let (top, _) = exceptional_simplex_top(k)?;
    Ok((family, top))
}

/// The exceptional top over the standard simplex, from the triangulation of
/// the base by the single simplex. Its dual top has the one bounded facet
/// through `(e_i, 0)` and `(−1, …, −1, −1)`.
pub fn exceptional_simplex_top(k: usize) -> Result<(Top, DualTop)> {
    if !(2..=6).contains(&k) {
        return Err(Error::Argument(format!("simplex tops are classified for 2 <= k <= 6, got {k}")));
    }
    let base = standard_simplex(k - 1);
    let points = base.vertices().to_vec();
    let heights: Vec<Option<Int>> = points
        .iter()
        .map(|v| Some(if v.iter().all(|x| x.is_negative()) { -Int::one() } else { Int::zero() }))
        .collect();
    let cell: Vec<usize> = (0..points.len()).collect();
    lift_to_top(&base, &points, &[cell], &heights)
}
