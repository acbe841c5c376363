//! Standard pairs of monomial ideals: pair differences, cover refinement,
//! overlap classes, generator recovery and intersections.

mod difference;
mod generators;
mod refine;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::{Configuration, FaceId, MonomialIdeal, Pair};

pub use difference::{minimal_elements_in_translate, pair_difference};
pub use generators::pairs_to_generators;
pub use refine::{refine_cover, Oracle, RefineOptions};

pub(crate) use refine::Prover;

/// A finite family of pairs, read as the union of the sets `a + NF`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cover {
    pub pairs: Vec<Pair>,
}

impl Cover {
    pub fn new(pairs: Vec<Pair>) -> Self {
        Cover { pairs }
    }

    pub fn covers(&self, config: &Configuration, point: &[i64]) -> Result<bool> {
        Self::covers_point(config, &self.pairs, point)
    }

    pub(crate) fn covers_point(
        config: &Configuration,
        pairs: &[Pair],
        point: &[i64],
    ) -> Result<bool> {
        for p in pairs {
            if config.in_translate(point, &p.root, p.face)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// The standard pairs of an ideal together with their overlap classes.
///
/// Pairs are sorted by face, then graded-lex by root; two sets are equal
/// exactly when their ideals are.
#[derive(Clone)]
pub struct StandardPairSet {
    config: Arc<Configuration>,
    pub pairs: Vec<Pair>,
    /// Indices into `pairs`, one entry per overlap class.
    pub classes: Vec<Vec<usize>>,
    /// `(i, j)` when class `i` divides class `j`, `i != j`.
    pub class_order: Vec<(usize, usize)>,
    /// Classes maximal under divisibility among the classes of each face.
    pub maximal_classes: BTreeMap<FaceId, Vec<usize>>,
}

/// Overlap partition, class divisibility and per-face maxima of `pairs`.
pub struct OverlapClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_order: Vec<(usize, usize)>,
    pub maximal_classes: BTreeMap<FaceId, Vec<usize>>,
}

pub fn overlap_classes(config: &Configuration, pairs: &[Pair]) -> Result<OverlapClasses> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        let mut home = None;
        for (k, class) in classes.iter().enumerate() {
            let rep = &pairs[class[0]];
            if rep.face == p.face && config.pair_overlaps(rep, p)? {
                home = Some(k);
                break;
            }
        }
        match home {
            Some(k) => classes[k].push(i),
            None => classes.push(vec![i]),
        }
    }

    let mut class_order = Vec::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            if i != j && config.pair_divides(&pairs[ci[0]], &pairs[cj[0]])? {
                class_order.push((i, j));
            }
        }
    }

    let mut maximal_classes: BTreeMap<FaceId, Vec<usize>> = BTreeMap::new();
    for (i, ci) in classes.iter().enumerate() {
        let face = pairs[ci[0]].face;
        let dominated = class_order
            .iter()
            .any(|&(x, y)| x == i && pairs[classes[y][0]].face == face);
        if !dominated {
            maximal_classes.entry(face).or_default().push(i);
        }
    }
    Ok(OverlapClasses {
        classes,
        class_order,
        maximal_classes,
    })
}

impl StandardPairSet {
    /// Wraps pairs that already are the standard pairs of some ideal.
    pub fn from_pairs(config: Arc<Configuration>, mut pairs: Vec<Pair>) -> Result<Self> {
        pairs.sort();
        pairs.dedup();
        let oc = overlap_classes(&config, &pairs)?;
        Ok(StandardPairSet {
            config,
            pairs,
            classes: oc.classes,
            class_order: oc.class_order,
            maximal_classes: oc.maximal_classes,
        })
    }

    pub fn configuration(&self) -> &Arc<Configuration> {
        &self.config
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// The distinct faces carrying a pair, in face order.
    pub fn faces(&self) -> Vec<FaceId> {
        let mut f: Vec<FaceId> = self.pairs.iter().map(|p| p.face).collect();
        f.dedup();
        f
    }

    /// Class indices whose pairs sit on `face`.
    pub fn classes_on(&self, face: FaceId) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&k| self.pairs[self.classes[k][0]].face == face)
            .collect()
    }

    pub fn class_pairs(&self, class: usize) -> Vec<Pair> {
        self.classes[class]
            .iter()
            .map(|&i| self.pairs[i].clone())
            .collect()
    }

    pub fn maximal_class_count(&self) -> usize {
        self.maximal_classes.values().map(Vec::len).sum()
    }

    /// Whether `point` is a standard monomial.
    pub fn covers(&self, point: &[i64]) -> Result<bool> {
        Cover::covers_point(&self.config, &self.pairs, point)
    }

    pub fn cover(&self) -> Cover {
        Cover::new(self.pairs.clone())
    }
}

impl PartialEq for StandardPairSet {
    fn eq(&self, other: &Self) -> bool {
        self.config.matrix() == other.config.matrix() && self.pairs == other.pairs
    }
}

impl Eq for StandardPairSet {}

impl fmt::Debug for StandardPairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<(&[i64], &[usize])> = self
            .pairs
            .iter()
            .map(|p| (&p.root[..], &self.config.face(p.face).indices[..]))
            .collect();
        f.debug_struct("StandardPairSet")
            .field("pairs", &shown)
            .field("classes", &self.classes)
            .finish()
    }
}

/// The standard pairs of `ideal`, built by subtracting one generator at a
/// time and refining after each step.
pub fn standard_pairs(ideal: &MonomialIdeal) -> Result<StandardPairSet> {
    let config = ideal.configuration();
    let full = config.full_face();
    let origin = vec![0; config.dimension()];
    if ideal.is_unit() {
        return StandardPairSet::from_pairs(config.clone(), Vec::new());
    }
    if ideal.is_zero() {
        return StandardPairSet::from_pairs(config.clone(), vec![Pair::new(origin, full)]);
    }

    let degrees = ideal.degrees();
    let mut current: Vec<Pair> = vec![Pair::new(origin, full)];
    for (k, b) in degrees.iter().enumerate() {
        let mut next = Vec::new();
        for p in &current {
            next.extend(pair_difference(config, &p.root, p.face, b, full)?.pairs);
        }
        let partial = &degrees[..=k];
        let oracle = |x: &[i64]| -> Result<bool> {
            for g in partial {
                if config.divides(g, x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        current = refine_cover(config, Cover::new(next), &oracle, RefineOptions::default())?.pairs;
    }
    StandardPairSet::from_pairs(config.clone(), current)
}

/// `I ∩ J` from the union of the two standard-pair sets.
pub fn intersect(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    if i.configuration().matrix() != j.configuration().matrix() {
        return Err(Error::ConfigurationMismatch);
    }
    let si = standard_pairs(i)?;
    let sj = standard_pairs(j)?;
    let std = intersect_pairs(&si, &sj)?;
    pairs_to_generators(&std)
}

/// Standard pairs of `I ∩ J` from those of `I` and `J`.
pub fn intersect_pairs(si: &StandardPairSet, sj: &StandardPairSet) -> Result<StandardPairSet> {
    if si.config.matrix() != sj.config.matrix() {
        return Err(Error::ConfigurationMismatch);
    }
    let mut union = si.pairs.clone();
    union.extend(sj.pairs.iter().cloned());
    let oracle = |x: &[i64]| -> Result<bool> { Ok(si.covers(x)? || sj.covers(x)?) };
    refine_cover(
        &si.config,
        Cover::new(union),
        &oracle,
        RefineOptions::default(),
    )
}
