//! Cross-check of computed standard pairs on sampled points, using membership
//! by descent instead of the engine's diophantine solver.

use std::collections::HashMap;

use stdpairs::{Configuration, MonomialIdeal, Point, StandardPairSet};

/// Memoized membership in the monoid generated by `generators`.
struct Monoid {
    generators: Vec<Point>,
    memo: HashMap<Point, bool>,
}

impl Monoid {
    fn new(generators: Vec<Point>) -> Self {
        Monoid {
            generators,
            memo: HashMap::new(),
        }
    }

    /// `grade` is positive on every generator, so descent terminates.
    fn contains(&mut self, q: &[i64], grade: &dyn Fn(&[i64]) -> i64) -> bool {
        if q.iter().all(|&x| x == 0) {
            return true;
        }
        if grade(q) <= 0 {
            return false;
        }
        if let Some(&hit) = self.memo.get(q) {
            return hit;
        }
        let mut found = false;
        for k in 0..self.generators.len() {
            let r: Point = q
                .iter()
                .zip(&self.generators[k])
                .map(|(x, y)| x - y)
                .collect();
            if self.contains(&r, grade) {
                found = true;
                break;
            }
        }
        self.memo.insert(q.to_vec(), found);
        found
    }
}

fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// First sampled point where `std` and `ideal` disagree.
pub fn disagreement(
    ideal: &MonomialIdeal,
    std: &StandardPairSet,
    bound: usize,
) -> anyhow::Result<Option<Point>> {
    let config: &Configuration = ideal.configuration();
    let facets = config.facets().to_vec();
    // sum of the support functions: positive on all nonzero points of the cone
    let grade = move |p: &[i64]| -> i64 {
        let mut total = 0i64;
        for h in &facets {
            let v = h.eval(p).unwrap_or(-1);
            if v < 0 {
                return -1;
            }
            total = total.saturating_add(v);
        }
        total
    };
    let mut semigroup = Monoid::new(config.matrix().columns());
    let mut faces: HashMap<usize, Monoid> = HashMap::new();
    let gens = ideal.degrees();
    for p in config.points_up_to(bound)? {
        let in_ideal = gens.iter().any(|g| semigroup.contains(&sub(&p, g), &grade));
        let mut covered = false;
        for pair in &std.pairs {
            let monoid = faces
                .entry(pair.face.0)
                .or_insert_with(|| Monoid::new(config.face_columns(pair.face)));
            if monoid.contains(&sub(&p, &pair.root), &grade) {
                covered = true;
                break;
            }
        }
        if in_ideal == covered {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
