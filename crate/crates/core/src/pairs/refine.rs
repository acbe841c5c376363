use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{checked_add, Point};
use crate::semigroup::{Configuration, FaceId, Pair};

use super::difference::{minimal_elements_in_translate, pair_difference};
use super::{Cover, StandardPairSet};

/// Decides whether a point of `NA` is a standard monomial.
pub type Oracle<'a> = dyn Fn(&[i64]) -> Result<bool> + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RefineOptions {
    /// When set, every point `A u` with `|u| <= bound` is checked against
    /// the oracle after refinement.
    pub verify_bound: Option<usize>,
}

/// Decides properness of pairs against an exact cover of the standard
/// monomials, producing a non-standard witness whenever a pair is not proper.
///
/// Answers depend only on the covered set, so the memo stays valid while the
/// cover is rewritten into other exact covers of the same set.
pub(crate) struct Prover<'a> {
    config: &'a Configuration,
    oracle: &'a Oracle<'a>,
    memo: HashMap<(Point, FaceId), Option<Point>>,
}

impl<'a> Prover<'a> {
    pub(crate) fn new(config: &'a Configuration, oracle: &'a Oracle<'a>) -> Self {
        Prover {
            config,
            oracle,
            memo: HashMap::new(),
        }
    }

    /// A point of `a + N g` outside every pair of `cover`, if there is one.
    pub(crate) fn uncovered_point(
        &mut self,
        cover: &[Pair],
        a: &Point,
        g: FaceId,
    ) -> Result<Option<Point>> {
        let key = (a.clone(), g);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let found = self.search(cover, a, g)?;
        if let Some(p) = &found {
            if (self.oracle)(p)? {
                return Err(Error::NotACover { point: p.clone() });
            }
        }
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    fn search(&mut self, cover: &[Pair], a: &Point, g: FaceId) -> Result<Option<Point>> {
        let probe = Pair::new(a.clone(), g);
        let above: Vec<&Pair> = cover
            .iter()
            .filter(|p| self.config.face_contains(p.face, g))
            .collect();
        for p in &above {
            if self.config.pair_prec(&probe, p)? {
                return Ok(None);
            }
        }
        for p in &above {
            let rest = pair_difference(self.config, a, g, &p.root, p.face)?;
            if rest.pairs.len() == 1 && rest.pairs[0] == probe {
                continue;
            }
            // the pieces live on faces strictly below g
            for piece in &rest.pairs {
                if let Some(w) = self.uncovered_point(cover, &piece.root, piece.face)? {
                    return Ok(Some(w));
                }
            }
            return Ok(None);
        }

        // Nothing above g meets a + N g. Every other pair meets the ray
        // a + k s (s interior to g) in at most one point.
        let s = self.config.face_interior_point(g);
        let mut point = a.clone();
        for _ in 0..=cover.len() {
            if !Cover::covers_point(self.config, cover, &point)? {
                return Ok(Some(point));
            }
            point = checked_add(&point, &s)?;
        }
        Err(Error::NotACover { point })
    }

    pub(crate) fn is_proper(&mut self, cover: &[Pair], a: &Point, g: FaceId) -> Result<bool> {
        Ok(self.uncovered_point(cover, a, g)?.is_none())
    }
}

/// Turns an exact cover of the oracle's standard monomials into the
/// standard pairs.
pub fn refine_cover(
    config: &Arc<Configuration>,
    cover: Cover,
    oracle: &Oracle<'_>,
    options: RefineOptions,
) -> Result<StandardPairSet> {
    for p in &cover.pairs {
        if config.is_member(&p.root)?.is_none() {
            return Err(Error::PointNotInSemigroup {
                point: p.root.clone(),
            });
        }
        if !oracle(&p.root)? {
            return Err(Error::NotACover {
                point: p.root.clone(),
            });
        }
    }
    let mut prover = Prover::new(config, oracle);
    let mut current = prune(config, cover.pairs.into_iter().collect())?;
    let budget = config.budget().iterations;
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > budget {
            return Err(Error::BudgetExceeded {
                what: "cover refinement",
                budget,
            });
        }
        let lowered = prune(config, lower_roots(config, &current)?)?;
        let widened = prune(config, widen_faces(config, &mut prover, &lowered)?)?;
        if widened == current {
            break;
        }
        current = widened;
    }

    let set = StandardPairSet::from_pairs(config.clone(), current.into_iter().collect())?;
    if let Some(bound) = options.verify_bound {
        verify(config, &set.pairs, oracle, bound)?;
    }
    Ok(set)
}

fn lower_roots(config: &Configuration, pairs: &[Pair]) -> Result<BTreeSet<Pair>> {
    let mut out = BTreeSet::new();
    for p in pairs {
        for b in minimal_elements_in_translate(config, &p.root, p.face)? {
            if config.divides(&b, &p.root)? {
                out.insert(Pair::new(b, p.face));
            }
        }
    }
    Ok(out)
}

fn widen_faces(
    config: &Configuration,
    prover: &mut Prover<'_>,
    pairs: &[Pair],
) -> Result<BTreeSet<Pair>> {
    let mut out = BTreeSet::new();
    for p in pairs {
        let mut proper: Vec<FaceId> = Vec::new();
        let mut improper: Vec<FaceId> = Vec::new();
        // faces come sorted by size, so obstructions are found before supersets
        for g in config.face_ids() {
            if g != p.face && config.face_contains(p.face, g) {
                continue;
            }
            if improper.iter().any(|&h| config.face_contains(g, h)) {
                continue;
            }
            if g == p.face || prover.is_proper(pairs, &p.root, g)? {
                proper.push(g);
            } else {
                improper.push(g);
            }
        }
        for &g in &proper {
            let maximal = !proper.iter().any(|&h| h != g && config.face_contains(h, g));
            if maximal {
                out.insert(Pair::new(p.root.clone(), g));
            }
        }
    }
    Ok(out)
}

/// Drops every pair strictly below another one under `≺`.
fn prune(config: &Configuration, pairs: BTreeSet<Pair>) -> Result<Vec<Pair>> {
    let pairs: Vec<Pair> = pairs.into_iter().collect();
    let mut keep = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        let mut below = false;
        for (j, q) in pairs.iter().enumerate() {
            if i != j && config.pair_prec(p, q)? {
                below = true;
                break;
            }
        }
        if !below {
            keep.push(p.clone());
        }
    }
    Ok(keep)
}

fn verify(config: &Configuration, pairs: &[Pair], oracle: &Oracle<'_>, bound: usize) -> Result<()> {
    for point in config.points_up_to(bound)? {
        if oracle(&point)? != Cover::covers_point(config, pairs, &point)? {
            return Err(Error::NotACover { point });
        }
    }
    Ok(())
}
