use crate::error::{Error, Result};
use crate::matrix::{checked_add, checked_sub, Point};
use crate::semigroup::{Configuration, MonomialIdeal, Pair};

use super::{pair_difference, standard_pairs, Cover, Prover, StandardPairSet};

/// Minimal generators of the ideal whose standard pairs are `std`.
pub fn pairs_to_generators(std: &StandardPairSet) -> Result<MonomialIdeal> {
    let config = std.configuration();
    let target = &std.pairs;
    let standard = |p: &[i64]| Cover::covers_point(config, target, p);

    let mut generators: Vec<Point> = Vec::new();
    for candidate in harvest(config, std)? {
        if !standard(&candidate)? {
            let g = descend(config, target, candidate)?;
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
    }

    let budget = config.budget().iterations;
    for _ in 0..budget {
        let ideal = MonomialIdeal::new(config.clone(), generators.clone())?;
        let current = standard_pairs(&ideal)?;
        if current.pairs == *target {
            return Ok(ideal);
        }
        // some pair of the smaller ideal reaches into the target ideal
        let oracle = |p: &[i64]| standard(p);
        let mut prover = Prover::new(config, &oracle);
        let mut witness = None;
        for p in &current.pairs {
            if let Some(w) = prover.uncovered_point(target, &p.root, p.face)? {
                witness = Some(w);
                break;
            }
        }
        let Some(w) = witness else {
            // equal standard monomials but different pairs: not a standard-pair set
            let odd = target
                .iter()
                .find(|p| !current.pairs.contains(p))
                .or(current.pairs.first())
                .map(|p| p.root.clone())
                .unwrap_or_else(|| vec![0; config.dimension()]);
            return Err(Error::NotACover { point: odd });
        };
        generators.push(descend(config, target, w)?);
    }
    Err(Error::BudgetExceeded {
        what: "generator recovery",
        budget,
    })
}

/// Candidates `α + a_i`, `a_i ∉ F`, for the pieces `(α, F')` of each pair in
/// a maximal class once the pairs on larger faces are removed.
fn harvest(config: &Configuration, std: &StandardPairSet) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (&face, classes) in &std.maximal_classes {
        for &c in classes {
            for pair in std.class_pairs(c) {
                let mut pieces = vec![pair.clone()];
                for other in std
                    .pairs
                    .iter()
                    .filter(|q| q.face != face && config.face_contains(q.face, face))
                {
                    let mut next = Vec::new();
                    for p in &pieces {
                        next.extend(
                            pair_difference(config, &p.root, p.face, &other.root, other.face)?
                                .pairs,
                        );
                    }
                    pieces = next;
                }
                for piece in pieces {
                    for j in 0..config.column_count() {
                        if config.face(face).indices.binary_search(&j).is_err() {
                            out.push(checked_add(&piece.root, config.column(j))?);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Walks a point of the ideal down to a minimal generator.
fn descend(config: &Configuration, target: &[Pair], mut point: Point) -> Result<Point> {
    'outer: loop {
        for j in 0..config.column_count() {
            let q = checked_sub(&point, config.column(j))?;
            if config.is_member(&q)?.is_some() && !Cover::covers_point(config, target, &q)? {
                point = q;
                continue 'outer;
            }
        }
        return Ok(point);
    }
}
