use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, IntMatrix, IntVector};
use crate::error::{Error, Result};

/// `B = U·D·V` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | …`, all `d_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub diag: Vec<Int>,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    // row t += f * row s
    fn row_add(&mut self, t: usize, s: usize, f: &Int) {
        self.a.add_row_multiple(t, s, f);
        self.u_inv.add_row_multiple(t, s, f);
        self.u.add_col_multiple(s, t, &-f);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u_inv.swap_rows(x, y);
        self.u.swap_cols(x, y);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u_inv.negate_row(i);
        self.u.negate_col(i);
    }

    // col t += f * col s
    fn col_add(&mut self, t: usize, s: usize, f: &Int) {
        self.a.add_col_multiple(t, s, f);
        self.v_inv.add_col_multiple(t, s, f);
        self.v.add_row_multiple(s, t, &-f);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v_inv.swap_cols(x, y);
        self.v.swap_rows(x, y);
    }

    fn move_to(&mut self, (i, j): (usize, usize), t: usize) {
        self.row_swap(i, t);
        self.col_swap(j, t);
    }

    fn min_abs_in(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        cells
            .filter(|&c| !self.a[c].is_zero())
            .min_by(|&x, &y| self.a[x].abs().cmp(&self.a[y].abs()))
    }
}

/// Smith normal form by elementary operations, pivoting on the entry of
/// least nonzero absolute value. The factorisation is checked before it is
/// returned.
pub fn smith_normal_form(b: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (b.rows(), b.cols());
    let mut w = Work {
        a: b.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let n = rows.min(cols);
    for t in 0..n {
        let Some(p) = w.min_abs_in((t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        w.move_to(p, t);
        loop {
            for i in t + 1..rows {
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.row_add(i, t, &-q);
            }
            for j in t + 1..cols {
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.col_add(j, t, &-q);
            }
            let rest = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            if let Some(p) = w.min_abs_in(rest) {
                w.move_to(p, t);
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_add(t, i, &Int::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.row_negate(t);
        }
    }
    let diag: Vec<Int> = (0..n).map(|i| w.a[(i, i)].clone()).collect();
    let dec = SnfDecomposition {
        u: w.u,
        d: w.a,
        v: w.v,
        diag,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    };
    let rebuilt = dec.u.mul(&dec.d).and_then(|ud| ud.mul(&dec.v)).expect("conformal shapes");
    assert_eq!(&rebuilt, b, "Smith normal form failed to reconstruct its input");
    dec
}

/// Integral solution of `b·x = a` for nonsingular square `b`, or `None` when
/// the rational solution is not integral. Integrality is read off the Smith
/// form: `d_i | (U⁻¹a)_i` for every `i`.
pub fn solve_unimodular_system(b: &IntMatrix, a: &IntVector) -> Result<Option<IntVector>> {
    if !b.is_square() {
        return Err(Error::Dimension {
            expected: b.rows(),
            got: b.cols(),
        });
    }
    if a.rank() != b.rows() {
        return Err(Error::Dimension {
            expected: b.rows(),
            got: a.rank(),
        });
    }
    let snf = smith_normal_form(b);
    if snf.diag.iter().any(Zero::is_zero) {
        return Err(Error::Singular);
    }
    let c = snf.u_inv.mul_vec(a)?;
    let mut y = Vec::with_capacity(c.rank());
    for (ci, di) in c.iter().zip(&snf.diag) {
        let (q, r) = ci.div_rem(di);
        if !r.is_zero() {
            return Ok(None);
        }
        y.push(q);
    }
    Ok(Some(snf.v_inv.mul_vec(&IntVector::new(y))?))
}
