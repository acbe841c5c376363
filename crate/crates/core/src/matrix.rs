//! Small dense integer matrices.
//!
//! Configurations are desk-sized (a handful of rows, at most a few dozen
//! columns), so a flat row-major `Vec<i64>` is all that is needed here.

use std::fmt;

use crate::error::Error;

/// An integer vector. Points of the ambient lattice, witnesses and solutions
/// of integer systems all use this representation.
pub type Point = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    expected: cols,
                    found: row.len(),
                    index: Some(i),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Point {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Point> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, indices.len());
        for (k, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    /// `self * v`, failing on overflow.
    pub fn mul_vec(&self, v: &[i64]) -> Result<Point, Error> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        assert_eq!(self.cols, other.rows);
        let mut m = Matrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.mul_vec(&other.column(j))?;
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

pub(crate) fn checked_sub(a: &[i64], b: &[i64]) -> Result<Point, Error> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn checked_add(a: &[i64], b: &[i64]) -> Result<Point, Error> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> Result<i64, Error> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)
    })
}

/// Componentwise `a <= b`.
pub(crate) fn dominated(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Graded lexicographic order: total sum first, then lexicographic.
pub(crate) fn graded_lex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let sa: i128 = a.iter().map(|&v| v as i128).sum();
    let sb: i128 = b.iter().map(|&v| v as i128).sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_must_agree() {
        assert!(Matrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn column_selection_and_products() {
        let a = Matrix::from_rows(&[[1, 1, 1], [0, 1, 2]]).unwrap();
        assert_eq!(a.column(2), vec![1, 2]);
        let g = a.select_columns(&[2, 0]);
        assert_eq!(g.to_rows(), vec![vec![1, 1], vec![2, 0]]);
        assert_eq!(a.mul_vec(&[1, -2, 1]).unwrap(), vec![0, 0]);
        assert_eq!(a.transpose().rows(), 3);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Matrix::from_rows(&[[i64::MAX, 1]]).unwrap();
        assert!(matches!(a.mul_vec(&[2, 0]), Err(Error::Overflow)));
    }
}
