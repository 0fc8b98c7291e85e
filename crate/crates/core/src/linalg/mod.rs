//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Determinants are
//! computed with Bareiss elimination so no intermediate value ever leaves the
//! integers, and the Smith normal form carries its unimodular transforms so
//! integrality questions can be answered exactly.

mod frame;
mod hnf;
pub mod lp;
mod snf;

pub use frame::LatticeFrame;
pub use hnf::hermite_normal_form;
pub use snf::{smith_normal_form, solve_unimodular_system, SnfDecomposition};

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
pub(crate) fn serialize_int<S: Serializer>(value: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&value.to_string()),
    }
}

struct IntJson<'a>(&'a Int);

impl Serialize for IntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}

pub(crate) fn serialize_ints<S: Serializer>(values: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(IntJson))
}

pub(crate) fn serialize_opt_ints<S: Serializer>(values: &Option<Vec<Int>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match values {
        Some(v) => serialize_ints(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_int_opts<S: Serializer>(values: &[Option<Int>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.as_ref().map(IntJson)))
}

/// Greatest common divisor of a sequence, always nonnegative. Zero for an
/// all-zero (or empty) sequence.
pub fn content<'a, I: IntoIterator<Item = &'a Int>>(values: I) -> Int {
    values.into_iter().fold(Int::zero(), |g, v| g.gcd(v))
}

/// A point of a rank-k integer lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<Int>);

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(rank: usize) -> Self {
        IntVector(vec![Int::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zeros(rank);
        v.0[i] = Int::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| Int::from(e)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Int> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.0.iter()
    }

    pub fn last(&self) -> &Int {
        self.0.last().expect("empty vector has no last entry")
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    /// Gcd of the entries.
    pub fn content(&self) -> Int {
        content(&self.0)
    }

    /// The vector divided by the gcd of its entries. Zero stays zero.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|a| a / &g).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Int) -> IntVector {
        let mut e = self.0.clone();
        e.push(last);
        IntVector(e)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> IntVector {
        IntVector(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVector {
    fn index_mut(&mut self, i: usize) -> &mut Int {
        &mut self.0[i]
    }
}

impl From<Vec<Int>> for IntVector {
    fn from(v: Vec<Int>) -> Self {
        IntVector(v)
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entry<'a>(&'a Int);
        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_int(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for e in &self.0 {
            seq.serialize_element(&Entry(e))?;
        }
        seq.end()
    }
}

/// Builds an [`IntVector`] from integer literals.
#[macro_export]
macro_rules! ivec {
    ($($x:expr),* $(,)?) => {
        $crate::linalg::IntVector::from_i64s(&[$($x as i64),*])
    };
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Matrix whose rows are the given vectors. All vectors must share a rank.
    pub fn from_rows(rows: &[IntVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, IntVector::rank);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.rank() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: r.rank(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &IntVector) -> Result<IntVector> {
        if self.cols != v.rank() {
            return Err(Error::Dimension {
                expected: self.cols,
                got: v.rank(),
            });
        }
        Ok(IntVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
                .collect(),
        ))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self.data[source * self.cols + j] * factor;
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self.data[i * self.cols + source] * factor;
            self.data[i * self.cols + target] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: self.rows,
                got: self.cols,
            });
        }
        Ok(bareiss_determinant(self.data.clone(), self.rows))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        row_echelon_rank(self.data.clone(), self.rows, self.cols)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

pub(crate) fn bareiss_determinant(mut a: Vec<Int>, n: usize) -> Int {
    if n == 0 {
        return Int::one();
    }
    let mut sign = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Int::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn row_echelon_rank(mut a: Vec<Int>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, p * cols + j);
        }
        for i in rank + 1..rows {
            if a[i * cols + c].is_zero() {
                continue;
            }
            let f = a[i * cols + c].clone();
            let g = a[rank * cols + c].clone();
            for j in c..cols {
                let v = &a[i * cols + j] * &g - &a[rank * cols + j] * &f;
                a[i * cols + j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of a set of vectors.
pub fn vector_rank(vs: &[IntVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(vs).map(|m| m.rank()).unwrap_or(0)
}

/// Affine dimension of a point set; -1 for the empty set.
pub fn affine_dimension(points: &[IntVector]) -> isize {
    let Some(p0) = points.first() else {
        return -1;
    };
    let diffs: Vec<IntVector> = points[1..].iter().map(|p| p.sub(p0)).collect();
    vector_rank(&diffs) as isize
}

/// Integer vector orthogonal to the `d - 1` rows given (generalised cross
/// product). Entry `j` is the signed minor obtained by deleting column `j`.
pub fn orthogonal_complement_vector(rows: &[IntVector]) -> IntVector {
    let d = rows.len() + 1;
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let mut data = Vec::with_capacity((d - 1) * (d - 1));
        for r in rows {
            for (c, e) in r.iter().enumerate() {
                if c != j {
                    data.push(e.clone());
                }
            }
        }
        let m = bareiss_determinant(data, d - 1);
        out.push(if j % 2 == 0 { m } else { -m });
    }
    IntVector(out)
}
