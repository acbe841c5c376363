//! Monomial ideals in affine semigroup rings `k[NA]`: standard pairs,
//! overlap classes, associated primes, multiplicities, primary and
//! irreducible decompositions, intersections and generator recovery.
//!
//! ```
//! use std::sync::Arc;
//! use stdpairs::{standard_pairs, Configuration, MonomialIdeal};
//!
//! let a = Arc::new(Configuration::from_rows(&[[1, 1, 1], [0, 1, 2]]).unwrap());
//! let i = MonomialIdeal::new(a, vec![vec![2, 2], vec![3, 1]]).unwrap();
//! assert_eq!(standard_pairs(&i).unwrap().len(), 4);
//! ```

pub mod decomp;
pub mod diophantine;
pub mod error;
pub mod matrix;
pub mod pairs;
pub mod polyhedral;
pub mod polystd;
pub mod semigroup;

pub use decomp::{
    associated_primes, irreducible_decomposition, is_irreducible, is_primary, multiplicity,
    primary_component, primary_decomposition, DecompositionKind, DecompositionReport,
    MultiplicityTable,
};
pub use error::{Error, Result};
pub use matrix::{Matrix, Point};
pub use pairs::{
    intersect, pairs_to_generators, refine_cover, standard_pairs, Cover, RefineOptions,
    StandardPairSet,
};
pub use semigroup::{Budget, Configuration, FaceId, Monomial, MonomialIdeal, Pair};
