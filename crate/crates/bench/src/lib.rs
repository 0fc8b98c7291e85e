//! Fixtures shared by the benchmarks.

use tops_core::tops::{build_short_top_family, TopFamily};
use tops_core::triangulation::{triangulate_boundary, BoundaryVariant};
use tops_core::{convex_hull, IntMatrix, IntVector, LatticePolytope};

pub fn cross_polytope(n: usize) -> LatticePolytope {
    let pts: Vec<IntVector> = (0..n).flat_map(|i| [IntVector::unit(n, i), IntVector::unit(n, i).neg()]).collect();
    convex_hull(&pts).expect("cross-polytope")
}

/// Fixed dense integer matrices of size `n`, entries in `[-9, 9]`.
pub fn matrices(n: usize, count: usize) -> Vec<IntMatrix> {
    let mut state = 0x2545_f491_u64;
    (0..count)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                            ((state >> 33) % 19) as i64 - 9
                        })
                        .collect()
                })
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            IntMatrix::from_i64_rows(&refs).expect("square")
        })
        .collect()
}

pub fn family(base: &LatticePolytope) -> TopFamily {
    let t = triangulate_boundary(base, BoundaryVariant::Maximal).expect("triangulation");
    build_short_top_family(base, &t).expect("family")
}
