//! Exact feasibility for small systems of strict homogeneous inequalities.
//!
//! Used to decide whether a user-supplied triangulation is regular: that is
//! equivalent to finding heights making every fold form strictly positive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Int, IntVector};

type Q = BigRational;

/// Returns `u` with `row·u > 0` for every row, or `None` if no such vector
/// exists. Solved as the linear program `row·u ≥ 1` with a two-phase dense
/// simplex over the rationals (Bland's rule, so it always terminates).
pub fn strictly_positive_solution(rows: &[IntVector]) -> Option<Vec<BigRational>> {
    let Some(first) = rows.first() else {
        return Some(Vec::new());
    };
    let n = first.rank();
    let m = rows.len();
    // Variables: u⁺ (n), u⁻ (n), surplus s (m), artificial t (m).
    let nv = 2 * n + 2 * m;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![Q::zero(); nv + 1];
        for (j, c) in r.iter().enumerate() {
            row[j] = Q::from(c.clone());
            row[n + j] = -Q::from(c.clone());
        }
        row[2 * n + i] = -Q::one();
        row[2 * n + m + i] = Q::one();
        row[nv] = Q::one();
        tab.push(row);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + m + i).collect();
    // Phase-one objective: minimise Σt, i.e. reduced costs of −Σ constraint rows.
    let mut obj = vec![Q::zero(); nv + 1];
    for row in &tab {
        for (o, v) in obj.iter_mut().zip(row) {
            *o -= v;
        }
    }
    for b in &basis {
        obj[*b] = Q::zero();
    }
    while let Some(enter) = (0..nv).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][nv] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded phase-one objective cannot happen (it is bounded below by 0).
            unreachable!("phase-one objective is bounded");
        };
        pivot(&mut tab, &mut obj, pr, enter);
        basis[pr] = enter;
    }
    if !obj[nv].is_zero() {
        return None;
    }
    let mut u = vec![Q::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            u[b] += &tab[i][nv];
        } else if b < 2 * n {
            u[b - n] -= &tab[i][nv];
        }
    }
    debug_assert!(rows.iter().all(|r| {
        let v: Q = r.iter().zip(&u).map(|(c, x)| Q::from(c.clone()) * x).sum();
        v >= Q::one()
    }));
    Some(u)
}

fn pivot(tab: &mut [Vec<Q>], obj: &mut [Q], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v /= &p;
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for (v, pv) in obj.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
    }
}

/// Clears denominators of a rational vector, returning a primitive integer
/// vector pointing the same way.
pub fn integral_direction(u: &[BigRational]) -> IntVector {
    let lcm = u.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let v: Vec<Int> = u.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    IntVector::new(v).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    #[test]
    fn feasible_system() {
        let rows = [ivec![1, -1], ivec![0, 1]];
        let u = strictly_positive_solution(&rows).unwrap();
        let v = integral_direction(&u);
        for r in &rows {
            assert!(r.dot(&v).is_positive());
        }
    }

    #[test]
    fn infeasible_system() {
        // x > 0 and -x > 0.
        assert!(strictly_positive_solution(&[ivec![1, 0], ivec![-1, 0]]).is_none());
        // x - y > 0, y - z > 0, z - x > 0 sums to 0 > 0.
        assert!(strictly_positive_solution(&[ivec![1, -1, 0], ivec![0, 1, -1], ivec![-1, 0, 1]]).is_none());
    }
}
