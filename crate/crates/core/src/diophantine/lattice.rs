//! Exact integer lattice algebra: Smith normal form, integer kernels and
//! lattice membership.
//!
//! Everything here runs on arbitrary-precision integers; results are
//! converted back to `i64` at the boundary and an overflow is reported
//! instead of wrapping.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Point};

type BigMat = Vec<Vec<BigInt>>;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d[(i, i)]).collect()
    }
}

struct BigSmith {
    u: BigMat,
    d: BigMat,
    v: BigMat,
    rank: usize,
}

fn to_big(m: &Matrix) -> BigMat {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn big_identity(n: usize) -> BigMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn from_big(m: &BigMat, rows: usize, cols: usize) -> Result<Matrix> {
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = m[i][j].to_i64().ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

fn swap_cols(m: &mut BigMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[target] -= q * row[source]
fn row_axpy(m: &mut BigMat, target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t -= q * s;
    }
}

/// col[target] -= q * col[source]
fn col_axpy(m: &mut BigMat, target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

fn smith_big(m: &Matrix) -> BigSmith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = to_big(m);
    let mut u = big_identity(rows);
    let mut v = big_identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if d[pi][pj].abs() <= d[i][j].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return BigSmith { u, d, v, rank };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // the pivot has to divide the whole trailing block
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        rank = t + 1;
    }
    BigSmith { u, d, v, rank }
}

/// Smith normal form with both transforms.
pub fn smith_decomposition(m: &Matrix) -> Result<SmithDecomposition> {
    let s = smith_big(m);
    Ok(SmithDecomposition {
        u: from_big(&s.u, m.rows(), m.rows())?,
        d: from_big(&s.d, m.rows(), m.cols())?,
        v: from_big(&s.v, m.cols(), m.cols())?,
        rank: s.rank,
    })
}

pub fn rank(m: &Matrix) -> usize {
    smith_big(m).rank
}

/// A lattice basis of `{x in Z^n : M x = 0}`, one vector per entry.
pub fn kernel_basis(m: &Matrix) -> Result<Vec<Point>> {
    let s = smith_big(m);
    (s.rank..m.cols())
        .map(|j| {
            s.v.iter()
                .map(|row| row[j].to_i64().ok_or(Error::Overflow))
                .collect()
        })
        .collect()
}

/// Some integer `x` with `M x = rhs`, if one exists.
pub fn solve_integer(m: &Matrix, rhs: &[i64]) -> Result<Option<Point>> {
    assert_eq!(rhs.len(), m.rows());
    let s = smith_big(m);
    // D y = U rhs, x = V y
    let urhs: Vec<BigInt> =
        s.u.iter()
            .map(|row| row.iter().zip(rhs).map(|(a, &b)| a * BigInt::from(b)).sum())
            .collect();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, val) in urhs.iter().enumerate() {
        if i < s.rank {
            let (q, r) = val.div_rem(&s.d[i][i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !val.is_zero() {
            return Ok(None);
        }
    }
    let x =
        s.v.iter()
            .map(|row| {
                let v: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                v.to_i64().ok_or(Error::Overflow)
            })
            .collect::<Result<Point>>()?;
    Ok(Some(x))
}

/// Whether `point` lies in the integer span of `vectors`.
///
/// The empty family spans the zero lattice.
pub fn lattice_membership(vectors: &[Point], point: &[i64]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(point.iter().all(|&x| x == 0));
    }
    let m = Matrix::from_columns(point.len(), vectors);
    Ok(solve_integer(&m, point)?.is_some())
}
