//! Associated primes, multiplicities, and primary and irreducible
//! decompositions read off the standard pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{checked_add, checked_sub, Point};
use crate::pairs::{
    intersect_pairs, pairs_to_generators, refine_cover, standard_pairs, Cover, RefineOptions,
    StandardPairSet,
};
use crate::semigroup::{Configuration, FaceId, MonomialIdeal, Pair};

/// Faces `F` whose prime `p_F` is associated: those carrying a standard pair.
pub fn associated_primes(std: &StandardPairSet) -> Vec<FaceId> {
    std.faces()
}

/// The face `F` when the ideal is `p_F`-primary.
pub fn is_primary(std: &StandardPairSet) -> Option<FaceId> {
    match std.faces()[..] {
        [f] => Some(f),
        _ => None,
    }
}

pub fn is_irreducible(std: &StandardPairSet) -> bool {
    is_primary(std).is_some() && std.maximal_class_count() == 1
}

/// Number of overlap classes on each associated face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub entries: BTreeMap<FaceId, usize>,
}

impl MultiplicityTable {
    pub fn get(&self, face: FaceId) -> usize {
        self.entries.get(&face).copied().unwrap_or(0)
    }
}

pub fn multiplicity(std: &StandardPairSet) -> MultiplicityTable {
    let entries = std
        .faces()
        .into_iter()
        .map(|f| (f, std.classes_on(f).len()))
        .collect();
    MultiplicityTable { entries }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionKind {
    Primary,
    Irreducible,
}

impl DecompositionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionKind::Primary => "primary",
            DecompositionKind::Irreducible => "irreducible",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Component {
    pub face: FaceId,
    pub ideal: MonomialIdeal,
    pub standard_pairs: StandardPairSet,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub kind: DecompositionKind,
    pub components: Vec<Component>,
    /// Dropping any single component changes the intersection.
    pub irredundant: bool,
}

/// The ideal whose standard monomials are the divisors of `a + NF` over
/// the given roots `a`, all on the face `face`.
fn divisor_closure(
    config: &Arc<Configuration>,
    roots: &[Point],
    face: FaceId,
) -> Result<(MonomialIdeal, StandardPairSet)> {
    let fm = config.face_matrix(face);
    let system = config.matrix().hstack(&fm.neg());
    // b | a + F w  <=>  A v - F w = a - b has a solution
    let member = |b: &[i64]| -> Result<bool> {
        for a in roots {
            if config
                .feasible(system.clone(), checked_sub(a, b)?)?
                .is_some()
            {
                return Ok(true);
            }
        }
        Ok(false)
    };

    // every point of the set lies in b + NF for some b in N(A \ F) of the set
    let outside: Vec<usize> = (0..config.column_count())
        .filter(|j| config.face(face).indices.binary_search(j).is_err())
        .collect();
    let budget = config.budget().iterations;
    let origin = vec![0; config.dimension()];
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut frontier = Vec::new();
    if member(&origin)? {
        seen.insert(origin.clone());
        frontier.push(origin);
    }
    while let Some(b) = frontier.pop() {
        for &j in &outside {
            let c = checked_add(&b, config.column(j))?;
            if seen.contains(&c) || !member(&c)? {
                continue;
            }
            if seen.len() >= budget {
                return Err(Error::BudgetExceeded {
                    what: "divisor closure",
                    budget,
                });
            }
            seen.insert(c.clone());
            frontier.push(c);
        }
    }

    let cover = Cover::new(seen.into_iter().map(|b| Pair::new(b, face)).collect());
    let oracle = |b: &[i64]| member(b);
    let std = refine_cover(config, cover, &oracle, RefineOptions::default())?;
    let ideal = pairs_to_generators(&std)?;
    Ok((ideal, std))
}

fn class_roots(std: &StandardPairSet, classes: &[usize]) -> Vec<Point> {
    classes
        .iter()
        .flat_map(|&k| std.class_pairs(k))
        .map(|p| p.root)
        .collect()
}

fn face_indices(config: &Configuration, face: FaceId) -> Vec<usize> {
    config.face(face).indices.clone()
}

/// The `p_F`-primary component `C_F`.
pub fn primary_component(std: &StandardPairSet, face: FaceId) -> Result<MonomialIdeal> {
    Ok(primary_component_pairs(std, face)?.ideal)
}

fn primary_component_pairs(std: &StandardPairSet, face: FaceId) -> Result<Component> {
    let config = std.configuration();
    let Some(maximal) = std.maximal_classes.get(&face) else {
        return Err(Error::FaceNotAssociated {
            face: face_indices(config, face),
        });
    };
    let (ideal, standard_pairs) = divisor_closure(config, &class_roots(std, maximal), face)?;
    Ok(Component {
        face,
        ideal,
        standard_pairs,
    })
}

/// One component `C_F` per associated face.
pub fn primary_decomposition(ideal: &MonomialIdeal) -> Result<DecompositionReport> {
    let std = standard_pairs(ideal)?;
    let components = associated_primes(&std)
        .into_iter()
        .map(|f| primary_component_pairs(&std, f))
        .collect::<Result<Vec<_>>>()?;
    report(DecompositionKind::Primary, components, &std)
}

/// One irreducible component per maximal overlap class on each face.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<DecompositionReport> {
    let std = standard_pairs(ideal)?;
    let config = std.configuration();
    let mut components = Vec::new();
    for (&face, classes) in &std.maximal_classes {
        for &k in classes {
            let (ideal, standard_pairs) = divisor_closure(config, &class_roots(&std, &[k]), face)?;
            components.push(Component {
                face,
                ideal,
                standard_pairs,
            });
        }
    }
    report(DecompositionKind::Irreducible, components, &std)
}

fn report(
    kind: DecompositionKind,
    components: Vec<Component>,
    std: &StandardPairSet,
) -> Result<DecompositionReport> {
    let mut irredundant = true;
    if components.len() > 1 {
        for skip in 0..components.len() {
            let mut rest = components
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, c)| c.standard_pairs.clone());
            let first = rest.next().expect("at least one other component");
            let meet = rest.try_fold(first, |acc, s| intersect_pairs(&acc, &s))?;
            if meet == *std {
                irredundant = false;
                break;
            }
        }
    }
    Ok(DecompositionReport {
        kind,
        components,
        irredundant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn config(rows: &[&[i64]]) -> Arc<Configuration> {
        Arc::new(Configuration::from_rows(rows).unwrap())
    }

    fn ideal(c: &Arc<Configuration>, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(c.clone(), gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn degrees(report: &DecompositionReport) -> Vec<(Vec<usize>, Vec<Point>)> {
        let c = report.components[0].ideal.configuration().clone();
        let mut v: Vec<_> = report
            .components
            .iter()
            .map(|k| (c.face(k.face).indices.clone(), k.ideal.sorted_degrees()))
            .collect();
        v.sort();
        v
    }

    fn meet_all(report: &DecompositionReport) -> StandardPairSet {
        let mut it = report.components.iter().map(|c| c.standard_pairs.clone());
        let first = it.next().unwrap();
        it.try_fold(first, |a, s| intersect_pairs(&a, &s)).unwrap()
    }

    #[test]
    fn plane_decomposes_into_three_primes() {
        let c = Arc::new(Configuration::new(Matrix::identity(2)).unwrap());
        let i = ideal(&c, &[&[3, 1], &[1, 2]]);
        let r = primary_decomposition(&i).unwrap();
        assert_eq!(
            degrees(&r),
            vec![
                (vec![], vec![vec![0, 2], vec![3, 0]]),
                (vec![0], vec![vec![0, 1]]),
                (vec![1], vec![vec![1, 0]]),
            ]
        );
        assert!(r.irredundant);
        assert_eq!(meet_all(&r), standard_pairs(&i).unwrap());
    }

    #[test]
    fn components_over_the_curve() {
        let c = config(&[&[1, 1, 1], &[0, 1, 2]]);
        let i = ideal(&c, &[&[2, 2], &[3, 1]]);
        let r = primary_decomposition(&i).unwrap();
        assert_eq!(
            degrees(&r),
            vec![
                (vec![], vec![vec![2, 0], vec![1, 2]]),
                (vec![0], vec![vec![1, 1], vec![1, 2]]),
                (vec![2], vec![vec![1, 0]]),
            ]
        );
    }

    #[test]
    fn ring_ii_is_primary_but_reducible() {
        let c = config(&[&[2, 0, 1], &[0, 1, 1]]);
        let i = ideal(&c, &[&[0, 2], &[1, 2]]);
        let std = standard_pairs(&i).unwrap();
        let f = c.face_id(&[0]).unwrap();
        assert_eq!(is_primary(&std), Some(f));
        assert!(!is_irreducible(&std));
        assert_eq!(multiplicity(&std).get(f), 3);
        let r = irreducible_decomposition(&i).unwrap();
        assert_eq!(
            degrees(&r),
            vec![
                (vec![0], vec![vec![0, 1]]),
                (vec![0], vec![vec![0, 2], vec![1, 1]]),
            ]
        );
        assert!(r.irredundant);
        for k in &r.components {
            assert!(is_irreducible(&k.standard_pairs));
        }
        assert_eq!(
            primary_component(&std, f).unwrap().sorted_degrees(),
            i.sorted_degrees()
        );
    }

    #[test]
    fn unassociated_face_is_an_error() {
        let c = config(&[&[2, 0, 1], &[0, 1, 1]]);
        let std = standard_pairs(&ideal(&c, &[&[0, 2], &[1, 2]])).unwrap();
        assert!(matches!(
            primary_component(&std, c.full_face()),
            Err(Error::FaceNotAssociated { .. })
        ));
    }

    #[test]
    fn degenerate_ideals() {
        let c = config(&[&[1, 1, 1], &[0, 1, 2]]);
        let zero = MonomialIdeal::zero(c.clone());
        let r = primary_decomposition(&zero).unwrap();
        assert_eq!(r.components.len(), 1);
        assert!(r.components[0].ideal.is_zero());
        assert_eq!(r.components[0].face, c.full_face());
        let unit = MonomialIdeal::unit(c.clone());
        assert!(primary_decomposition(&unit).unwrap().components.is_empty());
        assert!(irreducible_decomposition(&unit)
            .unwrap()
            .components
            .is_empty());
        let std = standard_pairs(&unit).unwrap();
        assert_eq!(is_primary(&std), None);
        assert!(multiplicity(&std).entries.is_empty());
    }

    #[test]
    fn prime_ideal_has_multiplicity_one() {
        let c = config(&[&[1, 1, 1], &[0, 1, 2]]);
        // p_F for F = {(1,0)} is generated by xy and xy²
        let p = ideal(&c, &[&[1, 1], &[1, 2]]);
        let std = standard_pairs(&p).unwrap();
        let f = c.face_id(&[0]).unwrap();
        assert_eq!(multiplicity(&std).entries, BTreeMap::from([(f, 1)]));
        assert!(is_irreducible(&std));
    }
}
