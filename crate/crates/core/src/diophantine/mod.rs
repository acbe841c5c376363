//! Integer linear systems `M x = b` with per-variable sign constraints.
//!
//! The kernel is a Contejean–Devie style completion on the homogenized
//! system `M x - b t = 0`: vectors grow one unit at a time, only in
//! directions that decrease the defect `M x - b t`, and anything dominating
//! an already-found solution is pruned. Inhomogeneous minimal solutions are
//! exactly the minimal elements with `t = 1`, so `t` is capped at one.

pub mod lattice;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{dominated, graded_lex, Matrix, Point};

pub use lattice::{kernel_basis, lattice_membership, smith_decomposition, SmithDecomposition};

/// Default number of frontier expansions a single solve may perform.
pub const DEFAULT_SOLVER_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSystem {
    coefficients: Matrix,
    rhs: Point,
    signs: Vec<Sign>,
}

/// Coordinatewise-minimal solutions, sorted graded-lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSolutionSet {
    pub solutions: Vec<Point>,
}

impl DiophantineSystem {
    pub fn new(coefficients: Matrix, rhs: Point, signs: Vec<Sign>) -> Result<Self> {
        if coefficients.cols() != signs.len() {
            return Err(Error::DimensionMismatch {
                context: "sign pattern",
                expected: coefficients.cols(),
                found: signs.len(),
                index: None,
            });
        }
        if coefficients.rows() != rhs.len() {
            return Err(Error::DimensionMismatch {
                context: "right-hand side",
                expected: coefficients.rows(),
                found: rhs.len(),
                index: None,
            });
        }
        Ok(DiophantineSystem {
            coefficients,
            rhs,
            signs,
        })
    }

    /// All variables nonnegative.
    pub fn nonnegative(coefficients: Matrix, rhs: Point) -> Result<Self> {
        let signs = vec![Sign::NonNegative; coefficients.cols()];
        Self::new(coefficients, rhs, signs)
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.coefficients
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.signs.len())
            .filter(|&j| self.signs[j] == Sign::Free)
            .collect()
    }

    /// Whether `x` satisfies every equation and sign constraint.
    pub fn is_solution(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.signs.len() {
            return Ok(false);
        }
        let signs_ok = x
            .iter()
            .zip(&self.signs)
            .all(|(&v, s)| *s == Sign::Free || v >= 0);
        Ok(signs_ok && self.coefficients.mul_vec(x)? == self.rhs)
    }

    /// Splits every free variable `y` into `y+ - y-` so that the completion
    /// only ever sees nonnegative variables. Returns the split matrix and the
    /// free column indices (in order).
    fn split(&self) -> (Matrix, Vec<usize>) {
        let free = self.free_columns();
        let neg = self.coefficients.select_columns(&free).neg();
        (self.coefficients.hstack(&neg), free)
    }

    fn unsplit(&self, x: &[i64], free: &[usize]) -> Point {
        let n = self.signs.len();
        let mut out = x[..n].to_vec();
        for (k, &j) in free.iter().enumerate() {
            out[j] -= x[n + k];
        }
        out
    }

    /// The complete antichain of coordinatewise-minimal solutions.
    ///
    /// Free variables are allowed only when they are determined by the
    /// nonnegative ones, i.e. the free columns are linearly independent.
    pub fn minimal_solutions(&self, budget: usize) -> Result<MinimalSolutionSet> {
        let (split, free) = self.split();
        if !free.is_empty() {
            let free_part = self.coefficients.select_columns(&free);
            if lattice::rank(&free_part) != free.len() {
                return Err(Error::UnboundedFreePart);
            }
        }
        let raw = completion(&split, &self.rhs, false, budget)?;
        let nonneg: Vec<usize> = (0..self.signs.len())
            .filter(|&j| self.signs[j] == Sign::NonNegative)
            .collect();
        let candidates: BTreeSet<Point> = raw.iter().map(|x| self.unsplit(x, &free)).collect();
        let project = |x: &Point| -> Point { nonneg.iter().map(|&j| x[j]).collect() };
        let mut solutions: Vec<Point> = candidates
            .iter()
            .filter(|x| {
                let px = project(x);
                !candidates.iter().any(|y| {
                    let py = project(y);
                    py != px && dominated(&py, &px)
                })
            })
            .cloned()
            .collect();
        solutions.sort_by(|a, b| graded_lex(a, b));
        Ok(MinimalSolutionSet { solutions })
    }

    /// Some solution, if the system has one.
    ///
    /// Purely free systems are decided by lattice algebra; everything else
    /// goes through the completion with early exit.
    pub fn feasible(&self, budget: usize) -> Result<Option<Point>> {
        if self.signs.iter().all(|s| *s == Sign::Free) {
            return lattice::solve_integer(&self.coefficients, &self.rhs);
        }
        let (split, free) = self.split();
        let found = completion(&split, &self.rhs, true, budget)?;
        Ok(found.first().map(|x| self.unsplit(x, &free)))
    }
}

/// Minimal nonnegative solutions of `m x = rhs` (or just the first one found
/// when `first_only` is set). For `rhs = 0` the answer is `{0}`.
pub(crate) fn completion(
    m: &Matrix,
    rhs: &[i64],
    first_only: bool,
    budget: usize,
) -> Result<Vec<Point>> {
    let n = m.cols();
    if rhs.iter().all(|&b| b == 0) {
        return Ok(vec![vec![0; n]]);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows = m.rows();
    let t = n; // index of the homogenizing variable
    let columns: Vec<Point> = m
        .columns()
        .into_iter()
        .chain(std::iter::once(rhs.iter().map(|b| -b).collect()))
        .collect();

    // pairwise column products, needed for the defect criterion
    let mut gram = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            gram[i][j] = crate::matrix::dot(&columns[i], &columns[j])?;
        }
    }

    let mut homogeneous: Vec<Point> = Vec::new();
    let mut solutions: Vec<Point> = Vec::new();
    let mut steps = 0usize;

    // frontier entries: (vector over n+1 variables, defect M x - b t)
    let mut frontier: BTreeSet<(Point, Point)> = (0..=n)
        .map(|j| {
            let mut v = vec![0; n + 1];
            v[j] = 1;
            (v, columns[j].clone())
        })
        .collect();

    while !frontier.is_empty() {
        let mut next: BTreeSet<(Point, Point)> = BTreeSet::new();
        let level: Vec<(Point, Point)> = frontier.into_iter().collect();
        for (v, defect) in &level {
            if defect.iter().all(|&x| x == 0) {
                if v[t] == 1 {
                    solutions.push(v[..n].to_vec());
                    if first_only {
                        return Ok(solutions);
                    }
                } else {
                    homogeneous.push(v.clone());
                }
            }
        }
        for (v, defect) in level {
            if defect.iter().all(|&x| x == 0) {
                continue;
            }
            // <defect, column j> = sum_i v_i <col_i, col_j>
            for j in 0..=n {
                if j == t && v[t] == 1 {
                    continue;
                }
                let mut score = 0i64;
                for (i, &vi) in v.iter().enumerate() {
                    if vi != 0 {
                        score = gram[i][j]
                            .checked_mul(vi)
                            .and_then(|p| score.checked_add(p))
                            .ok_or(Error::Overflow)?;
                    }
                }
                if score >= 0 {
                    continue;
                }
                let mut w = v.clone();
                w[j] += 1;
                if homogeneous.iter().any(|h| dominated(h, &w)) {
                    continue;
                }
                if w[t] == 1 && solutions.iter().any(|s| dominated(s, &w[..n])) {
                    continue;
                }
                steps += 1;
                if steps > budget {
                    return Err(Error::BudgetExceeded {
                        what: "diophantine completion",
                        budget,
                    });
                }
                let mut d = defect.clone();
                for r in 0..rows {
                    d[r] = d[r].checked_add(columns[j][r]).ok_or(Error::Overflow)?;
                }
                next.insert((w, d));
            }
        }
        frontier = next;
    }
    solutions.sort_by(|a, b| graded_lex(a, b));
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rnc() -> Matrix {
        Matrix::from_rows(&[[1, 1, 1], [0, 1, 2]]).unwrap()
    }

    #[test]
    fn worked_example_upstairs_system() {
        // A (u - w) = (2,2), u, w >= 0; minimal projections onto u
        let a = rnc();
        let m = a.hstack(&a.neg());
        let sys = DiophantineSystem::nonnegative(m, vec![2, 2]).unwrap();
        let sols = sys.minimal_solutions(DEFAULT_SOLVER_BUDGET).unwrap();
        let us: BTreeSet<Point> = sols.solutions.iter().map(|x| x[..3].to_vec()).collect();
        let expected: BTreeSet<Point> = [vec![0, 2, 0], vec![1, 0, 1]].into_iter().collect();
        assert_eq!(us, expected);
        for s in &sols.solutions {
            assert!(sys.is_solution(s).unwrap());
        }
    }

    #[test]
    fn strongly_convex_kernel_is_trivial() {
        let sys = DiophantineSystem::nonnegative(rnc(), vec![0, 0]).unwrap();
        let sols = sys.minimal_solutions(1000).unwrap();
        assert_eq!(sols.solutions, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn identity_system() {
        let sys = DiophantineSystem::nonnegative(Matrix::identity(2), vec![1, 1]).unwrap();
        assert_eq!(
            sys.minimal_solutions(1000).unwrap().solutions,
            vec![vec![1, 1]]
        );
    }

    #[test]
    fn feasibility_witnesses() {
        let sys = DiophantineSystem::nonnegative(rnc(), vec![2, 1]).unwrap();
        let w = sys.feasible(1000).unwrap().unwrap();
        assert_eq!(w, vec![1, 1, 0]);
        let sys = DiophantineSystem::nonnegative(rnc(), vec![1, 3]).unwrap();
        assert_eq!(sys.feasible(1000).unwrap(), None);
    }

    #[test]
    fn free_lattice_test() {
        // (0,1,0) in Z{(0,0,1),(0,1,1)}
        let f = Matrix::from_columns(3, &[vec![0, 0, 1], vec![0, 1, 1]]);
        let sys = DiophantineSystem::new(f, vec![0, 1, 0], vec![Sign::Free; 2]).unwrap();
        let w = sys.feasible(1000).unwrap().unwrap();
        assert!(sys.is_solution(&w).unwrap());
    }

    #[test]
    fn mixed_signs() {
        // x - y = 3 with x >= 0, y free: minimal x is 0 (y = -3)
        let m = Matrix::from_rows(&[[1, -1]]).unwrap();
        let sys = DiophantineSystem::new(m, vec![3], vec![Sign::NonNegative, Sign::Free]).unwrap();
        let sols = sys.minimal_solutions(1000).unwrap();
        assert_eq!(sols.solutions, vec![vec![0, -3]]);
        assert_eq!(sys.feasible(1000).unwrap().map(|w| w[0] - w[1]), Some(3));
    }

    #[test]
    fn undetermined_free_part_is_rejected() {
        let m = Matrix::from_rows(&[[1, 1, -1]]).unwrap();
        let sys =
            DiophantineSystem::new(m, vec![1], vec![Sign::NonNegative, Sign::Free, Sign::Free])
                .unwrap();
        assert_eq!(sys.minimal_solutions(1000), Err(Error::UnboundedFreePart));
    }

    #[test]
    fn budget_is_a_hard_error() {
        let a = rnc();
        let m = a.hstack(&a.neg());
        let sys = DiophantineSystem::nonnegative(m, vec![7, 9]).unwrap();
        assert!(matches!(
            sys.minimal_solutions(3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn malformed_systems() {
        assert!(DiophantineSystem::new(rnc(), vec![1], vec![Sign::Free; 3]).is_err());
        assert!(DiophantineSystem::new(rnc(), vec![1, 1], vec![Sign::Free; 2]).is_err());
    }
}
