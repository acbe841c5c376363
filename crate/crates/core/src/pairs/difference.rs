use crate::error::{Error, Result};
use crate::matrix::{checked_add, Matrix, Point};
use crate::polystd::poly_standard_pairs;
use crate::semigroup::{coordinatewise_minimal, Configuration, FaceId, Pair};

use super::Cover;

/// Pairs over faces of `g` whose union is `(b + N g) \ (b2 + N g2)`.
///
/// The result is `{(b, g)}` exactly when the two sets are disjoint; when they
/// meet, every returned face is strictly smaller than `g`.
pub fn pair_difference(
    config: &Configuration,
    b: &[i64],
    g: FaceId,
    b2: &[i64],
    g2: FaceId,
) -> Result<Cover> {
    if !config.face_contains(g2, g) {
        return Err(Error::FaceNotContained {
            inner: config.face(g).indices.clone(),
            outer: config.face(g2).indices.clone(),
        });
    }
    let untouched = || Cover::new(vec![Pair::new(b.to_vec(), g)]);

    // Facets through g are constant on b + N g and can only grow on b2 + N g2.
    for &h in &config.face(g).containing_facets {
        let phi = &config.facets()[h];
        let (x, y) = (phi.eval(b)?, phi.eval(b2)?);
        if x < y || (x != y && config.face(g2).containing_facets.contains(&h)) {
            return Ok(untouched());
        }
    }

    let columns = &config.face(g).indices;
    let gm = config.face_matrix(g);
    let rhs = crate::matrix::checked_sub(b2, b)?;
    let generators = if columns.is_empty() {
        let back = crate::matrix::checked_sub(b, b2)?;
        match config.feasible(config.face_matrix(g2), back)? {
            Some(_) => vec![Vec::new()],
            None => Vec::new(),
        }
    } else {
        // b + G u = b2 + G2 w, projected to u
        let system = gm.hstack(&config.face_matrix(g2).neg());
        let solutions = config.minimal_solutions(system, rhs)?;
        coordinatewise_minimal(
            solutions
                .into_iter()
                .map(|s| s[..columns.len()].to_vec())
                .collect(),
        )
    };
    if generators.is_empty() {
        return Ok(untouched());
    }

    let mut pieces = Vec::new();
    for pp in poly_standard_pairs(columns.len(), &generators)? {
        let root = checked_add(b, &gm.mul_vec(&pp.root)?)?;
        let face: Vec<usize> = pp.free.iter().map(|&k| columns[k]).collect();
        pieces.push(Pair::new(root, config.face_id(&face)?));
    }
    pieces.sort();
    pieces.dedup();
    Ok(Cover::new(pieces))
}

/// The divisibility-minimal points of `(a + RF) ∩ NA`, in graded-lex order.
pub fn minimal_elements_in_translate(
    config: &Configuration,
    a: &[i64],
    f: FaceId,
) -> Result<Vec<Point>> {
    let facets = &config.face(f).containing_facets;
    if facets.is_empty() {
        return Ok(vec![vec![0; config.dimension()]]);
    }
    // columns of F contribute nothing, so only the others are solved for
    let outside: Vec<usize> = (0..config.column_count())
        .filter(|j| config.face(f).indices.binary_search(j).is_err())
        .collect();
    let mut rows = Vec::with_capacity(facets.len());
    let mut rhs = Vec::with_capacity(facets.len());
    for &h in facets {
        let phi = &config.facets()[h];
        rows.push(
            outside
                .iter()
                .map(|&j| phi.eval(config.column(j)))
                .collect::<Result<Vec<i64>>>()?,
        );
        rhs.push(phi.eval(a)?);
    }
    let system = Matrix::from_rows(&rows)?;
    let outside_matrix = config.matrix().select_columns(&outside);
    let mut points: Vec<Point> = config
        .minimal_solutions(system, rhs)?
        .iter()
        .map(|u| outside_matrix.mul_vec(u))
        .collect::<Result<_>>()?;
    points.sort_by(|x, y| crate::matrix::graded_lex(x, y));
    points.dedup();

    let mut minimal = Vec::new();
    for p in &points {
        let mut dominated = false;
        for q in &points {
            if q != p && config.divides(q, p)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            minimal.push(p.clone());
        }
    }
    Ok(minimal)
}
