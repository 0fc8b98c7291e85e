use num_traits::Zero;

use super::{smith_normal_form, Int, IntMatrix, IntVector};

/// Integral coordinates on the affine lattice `p0 + (span ∩ Zᵏ)` spanned by a
/// point set. The change of basis is unimodular, so lattice questions (lattice
/// points, primitivity, reflexivity) can be answered in local coordinates.
#[derive(Clone, Debug)]
pub struct LatticeFrame {
    origin: IntVector,
    dim: usize,
    /// Rows `0..dim` span the direction lattice.
    basis: IntMatrix,
    /// Inverse of the full unimodular basis; column `j` gives coordinate `j`.
    inverse: IntMatrix,
}

impl LatticeFrame {
    /// Frame of the affine hull of `points`, based at `origin` (which must lie
    /// in that affine hull) or at the first point.
    pub fn from_points(points: &[IntVector], origin: Option<&IntVector>) -> Self {
        let p0 = origin.cloned().unwrap_or_else(|| points[0].clone());
        let k = p0.rank();
        let diffs: Vec<IntVector> = points.iter().map(|p| p.sub(&p0)).filter(|d| !d.is_zero()).collect();
        if diffs.is_empty() {
            return LatticeFrame {
                origin: p0,
                dim: 0,
                basis: IntMatrix::identity(k),
                inverse: IntMatrix::identity(k),
            };
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&diffs).expect("uniform rank"));
        LatticeFrame {
            origin: p0,
            dim: snf.rank(),
            basis: snf.v,
            inverse: snf.v_inv,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.origin.rank()
    }

    pub fn origin(&self) -> &IntVector {
        &self.origin
    }

    fn full_coords(&self, x: &IntVector) -> IntVector {
        let d = x.sub(&self.origin);
        self.inverse.transpose().mul_vec(&d).expect("rank matches")
    }

    /// Local coordinates of `x`, or `None` when `x` is off the affine hull.
    pub fn to_local(&self, x: &IntVector) -> Option<IntVector> {
        let y = self.full_coords(x);
        if y.iter().skip(self.dim).any(|e| !e.is_zero()) {
            return None;
        }
        Some(IntVector::new(y.entries()[..self.dim].to_vec()))
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.full_coords(x).iter().skip(self.dim).all(Zero::is_zero)
    }

    pub fn to_global(&self, c: &IntVector) -> IntVector {
        let mut x = self.origin.clone();
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                x = x.add(&self.basis.row(i).scale(ci));
            }
        }
        x
    }

    /// Lifts a local inequality `n·c ≥ b` to a global one `N·x ≥ B` that agrees
    /// with it on the affine hull.
    pub fn lift_inequality(&self, normal: &IntVector, offset: &Int) -> (IntVector, Int) {
        let k = self.ambient();
        let mut n = IntVector::zeros(k);
        for (j, nj) in normal.iter().enumerate() {
            if nj.is_zero() {
                continue;
            }
            n = n.add(&self.inverse.col(j).scale(nj));
        }
        let b = offset + n.dot(&self.origin);
        (n, b)
    }

    /// Equations `N·x = B` cutting out the affine hull.
    pub fn equations(&self) -> Vec<(IntVector, Int)> {
        (self.dim..self.ambient())
            .map(|j| {
                let n = self.inverse.col(j);
                let b = n.dot(&self.origin);
                (n, b)
            })
            .collect()
    }
}
