//! Dense matrices over an involutive field, with the exact elimination
//! routines everything else is built on: reduced row echelon form, nullspace
//! bases, linear solving, inverses, and the Kronecker product.
//!
//! All arithmetic is exact. Row reduction always takes the first nonzero
//! pivot, so the reduced form (and every basis derived from it) is
//! deterministic; since RREF over a field is unique, outputs are canonical.
//! Degenerate shapes (zero rows or zero columns) are legal values everywhere
//! and follow the usual conventions under products and stacking.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::StarField;

/// A dense `rows × cols` matrix, stored row-major. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// A matrix reduced to row echelon form, with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<S: StarField> {
    pub matrix: Matrix<S>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<S: StarField> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data must have rows * cols entries");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from explicit rows; all rows must have equal length.
    /// An empty list yields the 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let count = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "rows must all have the same length");
            data.extend(row);
        }
        Matrix { rows: count, cols, data }
    }

    /// A single column vector.
    pub fn column_vector(entries: Vec<S>) -> Self {
        let rows = entries.len();
        Matrix { rows, cols: 1, data: entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &S {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).clone())
    }

    /// Conjugate transpose: entry `(r, c)` of the result is `conj` of entry
    /// `(c, r)`. An involution, contravariant over products.
    pub fn dagger(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).conj())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| s.clone() * self.entry(r, c).clone())
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &Self) -> Self {
        assert_eq!(self.rows, right.rows, "hstack: row counts must agree");
        Matrix::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self.entry(r, c).clone()
            } else {
                right.entry(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation of `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Self {
        assert_eq!(self.cols, below.cols, "vstack: column counts must agree");
        Matrix::from_fn(self.rows + below.rows, self.cols, |r, c| {
            if r < self.rows {
                self.entry(r, c).clone()
            } else {
                below.entry(r - self.rows, c).clone()
            }
        })
    }

    pub fn column(&self, c: usize) -> Self {
        self.select_columns(&[c])
    }

    pub fn select_columns(&self, indices: &[usize]) -> Self {
        Matrix::from_fn(self.rows, indices.len(), |r, j| self.entry(r, indices[j]).clone())
    }

    /// The block of `len` consecutive rows starting at `start`.
    pub fn row_block(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.rows, "row block out of range");
        Matrix::from_fn(len, self.cols, |r, c| self.entry(start + r, c).clone())
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square(), "trace: matrix must be square");
        (0..self.rows).fold(S::zero(), |acc, k| acc + self.entry(k, k).clone())
    }

    /// Kronecker product; block `(r, c)` of the result is `self[r][c] · other`.
    pub fn kron(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.entry(r / other.rows, c / other.cols).clone()
                * other.entry(r % other.rows, c % other.cols).clone()
        })
    }

    /// Exact Gauss–Jordan reduction, first nonzero pivot, pivots scaled to 1.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(src) = (row..m.rows).find(|&r| !m.entry(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, src);
            let inv = S::one() / m.entry(row, col).clone();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.entry(r, col).is_zero() {
                    let factor = m.entry(r, col).clone();
                    m.subtract_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of `{x : self · x = 0}`; one column per free
    /// variable, in increasing column order, with the free coordinate set
    /// to 1.
    pub fn nullspace_basis(&self) -> Self {
        let red = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            basis.set(fc, j, S::one());
            for (k, &pc) in red.pivots.iter().enumerate() {
                let v = red.matrix.entry(k, fc);
                if !v.is_zero() {
                    basis.set(pc, j, -v.clone());
                }
            }
        }
        basis
    }

    /// Solves `self · x = rhs` for all columns of `rhs` simultaneously.
    /// Returns the particular solution with free variables zero, or `None`
    /// when any column of `rhs` is outside the column space.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve: row counts must agree");
        let red = self.hstack(rhs).rref();
        if red.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (k, &pc) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, red.matrix.entry(k, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Two-sided inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse: matrix must be square");
        let n = self.rows;
        let red = self.hstack(&Matrix::identity(n)).rref();
        if red.rank < n || red.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.matrix.entry(r, n + c).clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: &S) {
        for c in 0..self.cols {
            let v = self.entry(r, c).clone() * factor.clone();
            self.set(r, c, v);
        }
    }

    // row_dst -= factor * row_src
    fn subtract_scaled_row(&mut self, dst: usize, src: usize, factor: &S) {
        for c in 0..self.cols {
            let v = self.entry(dst, c).clone() - factor.clone() * self.entry(src, c).clone();
            self.set(dst, c, v);
        }
    }
}

impl<S: StarField> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shapes must agree");
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.entry(r, c).clone() + rhs.entry(r, c).clone()
        })
    }
}

impl<S: StarField> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shapes must agree");
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.entry(r, c).clone() - rhs.entry(r, c).clone()
        })
    }
}

impl<S: StarField> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.entry(r, c).clone())
    }
}

impl<S: StarField> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product: inner dimensions must agree");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                acc + self.entry(r, k).clone() * rhs.entry(k, c).clone()
            })
        })
    }
}

impl<S: StarField> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{imag, int, ratio, Scalar};

    fn m(rows: Vec<Vec<Scalar>>) -> Matrix<Scalar> {
        Matrix::from_rows(rows)
    }

    #[test]
    fn dagger_examples() {
        let a = m(vec![vec![int(1), imag(1, 1)]]);
        assert_eq!(a.dagger(), m(vec![vec![int(1)], vec![imag(-1, 1)]]));
        let id = Matrix::<Scalar>::identity(2);
        assert_eq!(id.dagger(), id);
        let b = m(vec![vec![int(0), int(1)], vec![imag(1, 1), int(0)]]);
        assert_eq!(
            b.dagger(),
            m(vec![vec![int(0), imag(-1, 1)], vec![int(1), int(0)]])
        );
        assert_eq!(b.dagger().dagger(), b);
    }

    #[test]
    fn rref_examples() {
        let r = m(vec![vec![int(2), int(0)], vec![int(0), int(0)]]).rref();
        assert_eq!(r.matrix, m(vec![vec![int(1), int(0)], vec![int(0), int(0)]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);

        let z = Matrix::<Scalar>::zeros(2, 2).rref();
        assert_eq!(z.rank, 0);
        assert!(z.pivots.is_empty());
        assert_eq!(z.matrix, Matrix::zeros(2, 2));

        // hand row reduction: subtract row 0 from row 1
        let r = m(vec![vec![int(1), int(1)], vec![int(1), int(1)]]).rref();
        assert_eq!(r.matrix, m(vec![vec![int(1), int(1)], vec![int(0), int(0)]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(vec![
            vec![int(2), imag(1, 1), int(0)],
            vec![int(1), int(1), ratio(1, 2)],
        ]);
        let once = a.rref().matrix;
        assert_eq!(once.rref().matrix, once);
    }

    #[test]
    fn nullspace_examples() {
        let n = m(vec![vec![int(1), int(0)]]).nullspace_basis();
        assert_eq!(n, m(vec![vec![int(0)], vec![int(1)]]));

        assert_eq!(Matrix::<Scalar>::identity(3).nullspace_basis().cols(), 0);

        let a = m(vec![vec![int(1), int(1)]]);
        let n = a.nullspace_basis();
        assert_eq!(n.cols(), 1);
        assert!((&a * &n).is_zero());
    }

    #[test]
    fn nullspace_of_empty_shapes() {
        // no constraints at all: the whole space
        let a = Matrix::<Scalar>::zeros(0, 3);
        assert_eq!(a.nullspace_basis(), Matrix::identity(3));
        // zero-dimensional domain: empty basis
        let b = Matrix::<Scalar>::zeros(3, 0);
        assert_eq!(b.nullspace_basis().cols(), 0);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::column_vector(vec![int(1), imag(1, 1)]);
        let x = Matrix::<Scalar>::identity(2).solve(&b).unwrap();
        assert_eq!(x, b);

        let a = m(vec![vec![int(1)], vec![int(0)]]);
        let b = Matrix::column_vector(vec![int(0), int(1)]);
        assert!(a.solve(&b).is_none());

        let a = m(vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        let b = Matrix::column_vector(vec![int(2), int(2)]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b); // substitution check
    }

    #[test]
    fn solve_present_iff_rank_unchanged() {
        let a = m(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        let inside = Matrix::column_vector(vec![int(1), int(2)]);
        let outside = Matrix::column_vector(vec![int(1), int(0)]);
        assert_eq!(a.hstack(&inside).rank(), a.rank());
        assert!(a.solve(&inside).is_some());
        assert_eq!(a.hstack(&outside).rank(), a.rank() + 1);
        assert!(a.solve(&outside).is_none());
    }

    #[test]
    fn kron_examples() {
        let b = m(vec![vec![int(1), int(2)], vec![int(3), int(4)]]);
        assert_eq!(m(vec![vec![int(2)]]).kron(&b), b.scale(&int(2)));

        let id2 = Matrix::<Scalar>::identity(2);
        assert_eq!(id2.kron(&id2), Matrix::identity(4));

        // entrywise oracle
        let a = m(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let v = m(vec![vec![int(1)], vec![int(0)]]);
        let k = a.kron(&v);
        assert_eq!((k.rows(), k.cols()), (4, 2));
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    assert_eq!(
                        k.entry(i * 2 + p, j),
                        &(a.entry(i, j).clone() * v.entry(p, 0).clone())
                    );
                }
            }
        }
    }

    #[test]
    fn kron_commutes_with_dagger() {
        let a = m(vec![vec![int(1), imag(1, 1)], vec![int(0), ratio(1, 2)]]);
        let b = m(vec![vec![imag(-1, 2), int(2)]]);
        assert_eq!(a.kron(&b).dagger(), a.dagger().kron(&b.dagger()));
    }

    #[test]
    fn rank_agrees_with_dagger() {
        let a = m(vec![
            vec![int(1), imag(1, 1), int(0)],
            vec![int(1), imag(1, 1), int(0)],
        ]);
        assert_eq!(a.rank(), a.dagger().rank());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(vec![vec![int(1), int(1)], vec![int(0), imag(1, 1)]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert_eq!(&inv * &a, Matrix::identity(2));
        assert!(m(vec![vec![int(1), int(1)], vec![int(1), int(1)]]).inverse().is_none());
    }

    #[test]
    fn degenerate_products() {
        let tall = Matrix::<Scalar>::zeros(2, 0);
        let wide = Matrix::<Scalar>::zeros(0, 3);
        assert_eq!(&tall * &wide, Matrix::zeros(2, 3));
        assert_eq!(Matrix::<Scalar>::identity(0).rank(), 0);
    }

    #[test]
    #[should_panic(expected = "inner dimensions")]
    fn product_shape_mismatch_panics() {
        let a = Matrix::<Scalar>::identity(2);
        let b = Matrix::<Scalar>::identity(3);
        let _ = &a * &b;
    }
}
