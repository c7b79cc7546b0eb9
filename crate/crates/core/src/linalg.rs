//! Dense exact linear algebra over the rationals.
//!
//! Elimination never uses partial pivoting: the pivot for a column is the
//! first remaining row with a nonzero entry, so results are bit-identical
//! across runs and platforms.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Row-major dense matrix of [`Rational`]s.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. With no rows the column count is `cols_if_empty`.
    pub fn from_rows(rows: &[Vec<Rational>], cols_if_empty: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols_if_empty, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.len()
            )));
        }
        let data = rows.iter().flatten().cloned().collect();
        RatMatrix::new(rows.len(), cols, data)
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
            .collect();
        let cols = rows.first().map_or(0, Vec::len);
        RatMatrix::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn zip_with(
        &self,
        other: &RatMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Same matrix with columns rearranged: column `c` of the result is column `order[c]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, order.len());
        for r in 0..self.rows {
            for (c, &src) in order.iter().enumerate() {
                out.set(r, c, self.get(r, src).clone());
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: RatMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl RrefResult {
    /// Non-pivot columns in increasing order.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut pivots = self.pivot_cols.iter().peekable();
        (0..self.rref.cols())
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &RatMatrix) -> RrefResult {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if found != pivot_row {
            for c in 0..cols {
                a.data.swap(found * cols + c, pivot_row * cols + c);
            }
        }

        let inv = a.get(pivot_row, col).recip().expect("pivot is nonzero");
        for c in col..cols {
            let v = a.get(pivot_row, c) * &inv;
            a.set(pivot_row, c, v);
        }

        let pivot: Vec<Rational> = a.row(pivot_row).to_vec();
        for r in 0..rows {
            if r == pivot_row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for (c, pc) in pivot.iter().enumerate().skip(col) {
                if !pc.is_zero() {
                    let v = a.get(r, c) - &(&factor * pc);
                    a.set(r, c, v);
                }
            }
        }

        pivot_cols.push(col);
        pivot_row += 1;
    }

    RrefResult {
        rref: a,
        rank: pivot_cols.len(),
        pivot_cols,
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).rank
}

/// Canonical basis of `{v : m v = 0}`: one vector per free column, with a 1 in
/// that column and 0 in every other free column.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let reduced = rref(m);
    nullspace_from_rref(&reduced)
}

pub(crate) fn nullspace_from_rref(reduced: &RrefResult) -> Vec<Vec<Rational>> {
    let cols = reduced.rref.cols();
    reduced
        .free_cols()
        .into_iter()
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in reduced.pivot_cols.iter().enumerate() {
                v[pc] = -reduced.rref.get(row, free);
            }
            v
        })
        .collect()
}

/// Nullspace basis computed after reordering the columns by `order`
/// (a permutation of `0..cols`). Free columns and basis vectors are reported
/// in the original column indexing; free columns come out in elimination order.
pub fn nullspace_with_order(m: &RatMatrix, order: &[usize]) -> (Vec<usize>, Vec<Vec<Rational>>) {
    let permuted = m.permute_columns(order);
    let reduced = rref(&permuted);
    let free: Vec<usize> = reduced.free_cols().into_iter().map(|c| order[c]).collect();
    let basis = nullspace_from_rref(&reduced)
        .into_iter()
        .map(|pv| {
            let mut v = vec![Rational::zero(); pv.len()];
            for (c, x) in pv.into_iter().enumerate() {
                v[order[c]] = x;
            }
            v
        })
        .collect();
    (free, basis)
}

/// Row-reduced basis of the span of `vectors` (all of length `len`).
pub fn span_basis(vectors: &[Vec<Rational>], len: usize) -> Result<Vec<Vec<Rational>>> {
    let m = RatMatrix::from_rows(vectors, len)?;
    let reduced = rref(&m);
    Ok((0..reduced.rank)
        .map(|r| reduced.rref.row(r).to_vec())
        .collect())
}

/// Exact membership test: `candidate` lies in the span of `basis` iff
/// appending it as a row leaves the rank unchanged.
pub fn in_span(basis: &[Vec<Rational>], candidate: &[Rational]) -> Result<bool> {
    let len = candidate.len();
    let base = RatMatrix::from_rows(basis, len)?;
    let base_rank = rank(&base);
    let mut rows = basis.to_vec();
    rows.push(candidate.to_vec());
    let augmented = RatMatrix::from_rows(&rows, len)?;
    Ok(rank(&augmented) == base_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let r = rref(&RatMatrix::identity(2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let r = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.rref, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_zero() {
        let r = rref(&RatMatrix::zeros(3, 3));
        assert_eq!(r.rank, 0);
        assert!(r.rref.is_zero());
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_empty() {
        let r = rref(&RatMatrix::zeros(0, 4));
        assert_eq!(r.rank, 0);
        assert_eq!(nullspace(&RatMatrix::zeros(0, 4)).len(), 4);
        assert_eq!(rank(&RatMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&m(&[&[1, 2], &[2, 4]])), vec![ints(&[-2, 1])]);
        assert!(nullspace(&RatMatrix::identity(3)).is_empty());
        assert_eq!(
            nullspace(&RatMatrix::zeros(1, 3)),
            vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]
        );
    }

    #[test]
    fn nullspace_reversed_order_frees_early_columns() {
        // x0 - x1 = 0: forward keeps x1 free, reversed keeps x0 free.
        let a = m(&[&[1, -1]]);
        let (free, basis) = nullspace_with_order(&a, &[1, 0]);
        assert_eq!(free, vec![0]);
        assert_eq!(basis, vec![ints(&[1, 1])]);
        assert_eq!(rref(&a).free_cols(), vec![1]);
    }

    #[test]
    fn matmul_examples() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(RatMatrix::identity(2).matmul(&a).unwrap(), a);
        let n = m(&[&[0, 1], &[0, 0]]);
        assert!(n.matmul(&n).unwrap().is_zero());
        assert_eq!(
            m(&[&[1, 1], &[0, 1]])
                .matmul(&m(&[&[1, 0], &[1, 1]]))
                .unwrap(),
            m(&[&[2, 1], &[1, 1]])
        );
    }

    #[test]
    fn matmul_shape_error() {
        let a = RatMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn span_membership() {
        let basis = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1])];
        assert!(in_span(&basis, &ints(&[2, 3, 5])).unwrap());
        assert!(!in_span(&basis, &ints(&[0, 0, 1])).unwrap());
        assert!(in_span(&[], &ints(&[0, 0, 0])).unwrap());
        assert!(!in_span(&[], &ints(&[0, 1, 0])).unwrap());
    }

    fn arb_matrix() -> impl Strategy<Value = RatMatrix> {
        (0usize..5, 0usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..4), r * c).prop_map(move |v| {
                let data = v
                    .into_iter()
                    .map(|(p, q)| Rational::new(p, q).unwrap())
                    .collect();
                RatMatrix::new(r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(a in arb_matrix()) {
            let once = rref(&a);
            let twice = rref(&once.rref);
            prop_assert_eq!(&twice.rref, &once.rref);
            prop_assert_eq!(twice.pivot_cols, once.pivot_cols);
        }

        #[test]
        fn rank_nullity(a in arb_matrix()) {
            prop_assert_eq!(rank(&a) + nullspace(&a).len(), a.cols());
        }

        #[test]
        fn nullspace_vectors_are_kernel(a in arb_matrix()) {
            for v in nullspace(&a) {
                prop_assert!(a.mul_vec(&v).unwrap().iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn rref_shape_invariants(a in arb_matrix()) {
            let r = rref(&a);
            prop_assert!(r.pivot_cols.windows(2).all(|w| w[0] < w[1]));
            for (row, &pc) in r.pivot_cols.iter().enumerate() {
                prop_assert!(r.rref.get(row, pc).is_one());
                for other in 0..r.rref.rows() {
                    if other != row {
                        prop_assert!(r.rref.get(other, pc).is_zero());
                    }
                }
            }
        }
    }
}
