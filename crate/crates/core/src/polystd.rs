//! Standard pairs of monomial ideals in an ordinary polynomial ring
//! `k[x_1, ..., x_n]`, where every face is a coordinate subspace.

use crate::error::{Error, Result};
use crate::matrix::{dominated, graded_lex, Point};

/// `(root, free)`: the monomials `x^(root + v)` with `v` supported on `free`.
/// The root vanishes on `free`, which is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyPair {
    pub root: Point,
    pub free: Vec<usize>,
}

impl PolyPair {
    pub fn contains(&self, u: &[i64]) -> bool {
        u.iter().zip(&self.root).enumerate().all(|(k, (&x, &r))| {
            if self.free.binary_search(&k).is_ok() {
                x >= 0
            } else {
                x == r
            }
        })
    }

    /// `self ≺ other`.
    fn below(&self, other: &PolyPair) -> bool {
        self.free
            .iter()
            .all(|k| other.free.binary_search(k).is_ok())
            && other.contains(&self.root)
    }
}

/// The standard pairs of `<x^g : g in generators>` in `n` variables.
///
/// Sorted by `(free.len(), free, root)`.
pub fn poly_standard_pairs(n: usize, generators: &[Point]) -> Result<Vec<PolyPair>> {
    for g in generators {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                context: "polynomial generator",
                expected: n,
                found: g.len(),
                index: None,
            });
        }
        if g.iter().any(|&x| x < 0) {
            return Err(Error::PointNotInSemigroup { point: g.clone() });
        }
    }
    let active: Vec<usize> = (0..n).collect();
    let mut out = recurse(n, &active, minimal(generators.to_vec()));
    out.sort_by(|a, b| {
        a.free
            .len()
            .cmp(&b.free.len())
            .then_with(|| a.free.cmp(&b.free))
            .then_with(|| graded_lex(&a.root, &b.root))
    });
    Ok(out)
}

fn minimal(mut gens: Vec<Point>) -> Vec<Point> {
    gens.sort_by(|a, b| graded_lex(a, b));
    gens.dedup();
    let mut out: Vec<Point> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| dominated(h, &g)) {
            out.push(g);
        }
    }
    out
}

// `active` lists the variables still in play; generators are zero elsewhere.
fn recurse(n: usize, active: &[usize], gens: Vec<Point>) -> Vec<PolyPair> {
    if gens.is_empty() {
        return vec![PolyPair {
            root: vec![0; n],
            free: active.to_vec(),
        }];
    }
    if gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return Vec::new();
    }
    // split on the variable with the largest exponent
    let (i, m) = active
        .iter()
        .map(|&k| (k, gens.iter().map(|g| g[k]).max().unwrap_or(0)))
        .max_by_key(|&(k, m)| (m, std::cmp::Reverse(k)))
        .expect("a nonzero generator has an active variable");
    let rest: Vec<usize> = active.iter().copied().filter(|&k| k != i).collect();
    let drop_i = |g: &Point| {
        let mut h = g.clone();
        h[i] = 0;
        h
    };

    let mut candidates = Vec::new();
    for j in 0..m {
        let slice: Vec<Point> = gens.iter().filter(|g| g[i] <= j).map(drop_i).collect();
        for mut p in recurse(n, &rest, minimal(slice)) {
            p.root[i] = j;
            candidates.push(p);
        }
    }
    let all: Vec<Point> = gens.iter().map(drop_i).collect();
    for mut p in recurse(n, &rest, minimal(all)) {
        p.free.push(i);
        p.free.sort_unstable();
        candidates.push(p);
    }

    candidates.sort();
    candidates.dedup();
    candidates
        .iter()
        .filter(|p| !candidates.iter().any(|q| q != *p && p.below(q)))
        .cloned()
        .collect()
}
