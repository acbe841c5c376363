//! Facets, primitive integral support functions and the face lattice of the
//! cone spanned by the columns of a configuration.
//!
//! Facet normals are found exactly: every facet hyperplane is spanned by
//! `r - 1` linearly independent columns (`r` the dimension of the cone), so
//! the candidate normals are the generalized cross products of such column
//! subsets, kept when they are nonnegative on every column.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::diophantine::lattice;
use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix, Point};

/// A linear form `phi_H`, integral, nonnegative on every column, vanishing
/// exactly on the columns listed in `facet`, with coprime coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportFunction {
    pub coefficients: Point,
    /// Sorted 0-based column indices on which the form vanishes.
    pub facet: Vec<usize>,
}

impl SupportFunction {
    pub fn eval(&self, point: &[i64]) -> Result<i64> {
        dot(&self.coefficients, point)
    }
}

/// A face of the configuration, identified by the columns it contains.
/// The empty index set is the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    /// Sorted 0-based column indices.
    pub indices: Vec<usize>,
    /// Positions (into the facet list) of the facets containing this face.
    pub containing_facets: Vec<usize>,
}

impl Face {
    pub fn contains_face(&self, other: &Face) -> bool {
        other
            .indices
            .iter()
            .all(|i| self.indices.binary_search(i).is_ok())
    }
}

fn face_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Fraction-free determinant (Bareiss) of a small square matrix.
fn determinant(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                    .ok_or(Error::Overflow)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// The normal of the hyperplane spanned by `vectors` (r - 1 vectors in Z^r),
/// or zero if they are dependent.
fn cross_product(vectors: &[&Point], r: usize) -> Result<Vec<i128>> {
    (0..r)
        .map(|k| {
            let minor: Vec<Vec<i128>> = (0..r)
                .filter(|&row| row != k)
                .map(|row| vectors.iter().map(|v| v[row] as i128).collect())
                .collect();
            let det = determinant(minor)?;
            Ok(if k % 2 == 0 { det } else { -det })
        })
        .collect()
}

fn primitive(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Coordinates on the linear span of the columns: the first `rank` rows of the
/// left Smith transform. Identity when the columns span the whole space.
fn span_coordinates(matrix: &Matrix) -> Result<(Matrix, usize)> {
    let s = lattice::smith_decomposition(matrix)?;
    if s.rank == matrix.rows() {
        return Ok((Matrix::identity(matrix.rows()), s.rank));
    }
    let rows: Vec<Vec<i64>> = (0..s.rank).map(|i| s.u.row(i).to_vec()).collect();
    Ok((Matrix::from_rows(&rows)?, s.rank))
}

/// One support function per facet, sorted by (facet size, facet indices).
pub fn compute_facets(matrix: &Matrix) -> Result<Vec<SupportFunction>> {
    let n = matrix.cols();
    let (to_span, r) = span_coordinates(matrix)?;
    let projected: Vec<Point> = matrix
        .columns()
        .iter()
        .map(|c| to_span.mul_vec(c))
        .collect::<Result<_>>()?;

    let mut normals: BTreeSet<Vec<i128>> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..r.saturating_sub(1)).collect();
    if r == 0 {
        return Ok(Vec::new());
    }
    loop {
        let vectors: Vec<&Point> = subset.iter().map(|&i| &projected[i]).collect();
        let normal = cross_product(&vectors, r)?;
        if normal.iter().any(|&x| x != 0) {
            let normal = primitive(&normal);
            let values: Vec<i128> = projected
                .iter()
                .map(|p| p.iter().zip(&normal).map(|(&a, &b)| a as i128 * b).sum())
                .collect();
            let nonneg = values.iter().all(|&v| v >= 0);
            let nonpos = values.iter().all(|&v| v <= 0);
            if nonneg && values.iter().any(|&v| v > 0) {
                normals.insert(normal);
            } else if nonpos && values.iter().any(|&v| v < 0) {
                normals.insert(normal.iter().map(|x| -x).collect());
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }

    let mut facets = Vec::with_capacity(normals.len());
    for normal in normals {
        // pull the form back to the ambient coordinates
        let mut coefficients = vec![0i128; matrix.rows()];
        for (k, &c) in normal.iter().enumerate() {
            for (j, coef) in coefficients.iter_mut().enumerate() {
                *coef += c * to_span[(k, j)] as i128;
            }
        }
        let coefficients = primitive(&coefficients)
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
            .collect::<Result<Point>>()?;
        let support = SupportFunction {
            facet: Vec::new(),
            coefficients,
        };
        let mut facet = Vec::new();
        for (i, col) in matrix.columns().iter().enumerate() {
            if support.eval(col)? == 0 {
                facet.push(i);
            }
        }
        facets.push(SupportFunction { facet, ..support });
    }
    facets.sort_by(|a, b| {
        face_order(&a.facet, &b.facet).then_with(|| a.coefficients.cmp(&b.coefficients))
    });
    Ok(facets)
}

/// Advances `subset` to the next k-combination of 0..n in lex order.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    if k == 0 || k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every face, from the origin up to the whole configuration, sorted by
/// (size, indices). Faces are the intersections of facets.
pub fn face_lattice(column_count: usize, facets: &[SupportFunction]) -> Vec<Face> {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert((0..column_count).collect());
    for f in facets {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        for s in current {
            let meet: Vec<usize> = s
                .iter()
                .copied()
                .filter(|i| f.facet.binary_search(i).is_ok())
                .collect();
            sets.insert(meet);
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|indices| {
            let containing_facets = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| indices.iter().all(|i| f.facet.binary_search(i).is_ok()))
                .map(|(k, _)| k)
                .collect();
            Face {
                indices,
                containing_facets,
            }
        })
        .collect();
    faces.sort_by(|a, b| face_order(&a.indices, &b.indices));
    faces
}

/// The face cut out by the facets vanishing on `point`. The caller checks
/// that the point lies in the linear span of the columns.
pub fn smallest_face_containing(
    column_count: usize,
    facets: &[SupportFunction],
    point: &[i64],
) -> Result<Vec<usize>> {
    let mut indices: Vec<usize> = (0..column_count).collect();
    for f in facets {
        let v = f.eval(point)?;
        if v < 0 {
            return Err(Error::OutsideCone {
                point: point.to_vec(),
            });
        }
        if v == 0 {
            indices.retain(|i| f.facet.binary_search(i).is_ok());
        }
    }
    Ok(indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn check_support_conditions(a: &Matrix, facets: &[SupportFunction]) {
        for f in facets {
            let g = f.coefficients.iter().fold(0i64, |g, &x| g.gcd(&x));
            assert_eq!(g, 1, "primitive");
            for (i, col) in a.columns().iter().enumerate() {
                let v = f.eval(col).unwrap();
                assert!(v >= 0);
                assert_eq!(v == 0, f.facet.contains(&i));
            }
        }
    }

    #[test]
    fn orthant_facets() {
        let a = Matrix::identity(2);
        let facets = compute_facets(&a).unwrap();
        assert_eq!(facets.len(), 2);
        assert_eq!(facets[0].coefficients, vec![0, 1]);
        assert_eq!(facets[0].facet, vec![0]);
        assert_eq!(facets[1].coefficients, vec![1, 0]);
        assert_eq!(facets[1].facet, vec![1]);
        check_support_conditions(&a, &facets);
    }

    #[test]
    fn rational_normal_curve_facets() {
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let facets = compute_facets(&a).unwrap();
        assert_eq!(facets.len(), 2);
        assert_eq!(facets[0].coefficients, vec![0, 1]);
        assert_eq!(facets[0].facet, vec![0]);
        assert_eq!(facets[1].coefficients, vec![2, -1]);
        assert_eq!(facets[1].facet, vec![2]);
        check_support_conditions(&a, &facets);
    }

    #[test]
    fn cone_over_a_square() {
        let a = m(&[&[0, 1, 0, 1], &[0, 0, 1, 1], &[1, 1, 1, 1]]);
        let facets = compute_facets(&a).unwrap();
        assert_eq!(facets.len(), 4);
        check_support_conditions(&a, &facets);
        let faces = face_lattice(4, &facets);
        // origin, four rays, four 2-faces, the cone
        assert_eq!(faces.len(), 10);
    }

    #[test]
    fn lower_dimensional_cone() {
        // a 2D cone sitting in the plane z = x + y inside Z^3
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let facets = compute_facets(&a).unwrap();
        assert_eq!(facets.len(), 2);
        check_support_conditions(&a, &facets);
        let faces = face_lattice(2, &facets);
        let sets: Vec<Vec<usize>> = faces.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn one_dimensional_cone() {
        let a = m(&[&[2, 3]]);
        let facets = compute_facets(&a).unwrap();
        assert_eq!(facets.len(), 1);
        assert_eq!(facets[0].coefficients, vec![1]);
        assert!(facets[0].facet.is_empty());
        let faces = face_lattice(2, &facets);
        assert_eq!(faces.len(), 2);
    }

    #[test]
    fn faces_of_the_examples() {
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let facets = compute_facets(&a).unwrap();
        let sets: Vec<Vec<usize>> = face_lattice(3, &facets)
            .into_iter()
            .map(|f| f.indices)
            .collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![2], vec![0, 1, 2]]);

        let a = m(&[
            &[0, 0, 1, 1, 1, 1],
            &[2, 0, 0, 1, 0, 1],
            &[0, 2, 0, 0, 1, 1],
        ]);
        let facets = compute_facets(&a).unwrap();
        check_support_conditions(&a, &facets);
        let sets: Vec<Vec<usize>> = face_lattice(6, &facets)
            .into_iter()
            .map(|f| f.indices)
            .collect();
        assert!(sets.contains(&vec![0, 1]));
        assert!(sets.contains(&vec![0]));
    }

    #[test]
    fn smallest_faces() {
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let facets = compute_facets(&a).unwrap();
        assert_eq!(
            smallest_face_containing(3, &facets, &[2, 1]).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(
            smallest_face_containing(3, &facets, &[0, 0]).unwrap(),
            Vec::<usize>::new()
        );
        assert_eq!(
            smallest_face_containing(3, &facets, &[3, 0]).unwrap(),
            vec![0]
        );
        assert!(matches!(
            smallest_face_containing(3, &facets, &[1, 3]),
            Err(Error::OutsideCone { .. })
        ));
        let id = Matrix::identity(2);
        let facets = compute_facets(&id).unwrap();
        assert_eq!(
            smallest_face_containing(2, &facets, &[3, 0]).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut s = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut s, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
