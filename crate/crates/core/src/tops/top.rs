use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::{smith_normal_form, Int, IntMatrix, IntVector};
use crate::polytope::LatticePolytope;

/// A top in coordinates where its reflexive facet lies in `x_k = 0` and the
/// top in `x_k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Top {
    polytope: LatticePolytope,
    /// `G ∈ GL(k, Z)` mapping the input polytope onto `polytope`.
    transform: IntMatrix,
    /// The reflexive facet, as a polytope of rank `k − 1`.
    boundary: LatticePolytope,
    /// Hull of the lattice points with `x_k ≥ 1`.
    summit: Option<LatticePolytope>,
}

impl Top {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn boundary(&self) -> &LatticePolytope {
        &self.boundary
    }

    pub fn summit(&self) -> Option<&LatticePolytope> {
        self.summit.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.polytope.rank()
    }

    /// Height `x_k` of a point.
    pub fn height(&self, x: &IntVector) -> Int {
        x.last().clone()
    }

    /// Vertices with `x_k ≥ 1`.
    pub fn summit_vertices(&self) -> Vec<IntVector> {
        self.polytope
            .vertices()
            .iter()
            .filter(|v| v.last().is_positive())
            .cloned()
            .collect()
    }

    /// Lattice points of the top with `x_k ≥ 1`.
    pub fn summit_lattice_points(&self) -> Vec<IntVector> {
        self.summit.as_ref().map(|s| s.lattice_points()).unwrap_or_default()
    }
}

/// Unimodular matrix whose last row is the primitive vector `n`.
fn complete_to_basis(n: &IntVector) -> IntMatrix {
    let k = n.rank();
    if *n == IntVector::unit(k, k - 1) {
        return IntMatrix::identity(k);
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(std::slice::from_ref(n)).expect("one row"));
    // n = u · d · V with d = (1, 0, …), so n = u₀₀ · (row 0 of V).
    let u = snf.u[(0, 0)].clone();
    let mut rows: Vec<IntVector> = (1..k).map(|i| snf.v.row(i)).collect();
    rows.push(snf.v.row(0).scale(&u));
    let g = IntMatrix::from_rows(&rows).expect("square");
    debug_assert!(g.is_unimodular());
    g
}

/// Recognises a top: exactly one facet passes through the origin, every
/// other facet is at lattice distance one (`n·x ≥ −1`), and the facet through
/// the origin is reflexive in its own lattice. The result is expressed in
/// coordinates putting that facet at `x_k = 0` with the top above it.
pub fn is_top(p: &LatticePolytope) -> Option<Top> {
    if !p.is_full_dimensional() {
        return None;
    }
    let through: Vec<_> = p.facets().iter().filter(|f| f.offset.is_zero()).collect();
    if through.len() != 1 || p.facets().iter().any(|f| !f.offset.is_zero() && f.offset != -Int::one()) {
        return None;
    }
    let g = complete_to_basis(&through[0].normal);
    let q = if g == IntMatrix::identity(p.rank()) {
        p.clone()
    } else {
        p.transform(&g).ok()?
    };
    let base: Vec<IntVector> = q
        .vertices()
        .iter()
        .filter(|v| v.last().is_zero())
        .map(|v| v.truncated())
        .collect();
    let boundary = LatticePolytope::from_points(&base).ok()?;
    if !boundary.is_reflexive() {
        return None;
    }
    let high: Vec<IntVector> = q.lattice_points().into_iter().filter(|x| x.last().is_positive()).collect();
    let summit = (!high.is_empty()).then(|| LatticePolytope::from_points(&high).expect("nonempty"));
    Some(Top {
        polytope: q,
        transform: g,
        boundary,
        summit,
    })
}

/// Every summit lattice point has height one. Equivalent to every vertex
/// having `x_k ≤ 1`, i.e. to the dual containing `w = (0,…,0,−1)`.
pub fn is_short_top(t: &Top) -> bool {
    let by_vertices = t.polytope.vertices().iter().all(|v| *v.last() <= Int::one());
    let by_points = t.summit_lattice_points().iter().all(|x| x.last().is_one());
    debug_assert_eq!(by_vertices, by_points);
    by_vertices && by_points
}
