//! The ambient ring: a validated configuration `A`, membership in the
//! semigroup `NA`, divisibility, monomial ideals and pairs `(a, F)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::diophantine::{lattice, DiophantineSystem, DEFAULT_SOLVER_BUDGET};
use crate::error::{Error, Result};
use crate::matrix::{checked_sub, dominated, graded_lex, Matrix, Point};
use crate::polyhedral::{self, Face, SupportFunction};

/// Step limits for the potentially long loops of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Frontier expansions allowed in a single diophantine solve.
    pub solver_steps: usize,
    /// Rounds allowed in fixpoint loops (cover refinement, generator recovery,
    /// witness searches).
    pub iterations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            solver_steps: DEFAULT_SOLVER_BUDGET,
            iterations: 10_000,
        }
    }
}

/// Index of a face in [`Configuration::faces`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub usize);

/// Re-coordinatization of the group `ZA` as a standard lattice.
///
/// For `p` in `ZA`, its lattice coordinates are
/// `q_i = (transform * p)_i / invariant_factors[i]`, and
/// `p = inverse * (invariant_factors .* q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeChange {
    pub transform: Matrix,
    pub inverse: Matrix,
    pub invariant_factors: Vec<i64>,
}

impl LatticeChange {
    fn from_matrix(a: &Matrix) -> Result<Self> {
        let s = lattice::smith_decomposition(a)?;
        let d = a.rows();
        let factors = s.invariant_factors();
        if s.rank == d && factors.iter().all(|&f| f == 1) {
            return Ok(LatticeChange {
                transform: Matrix::identity(d),
                inverse: Matrix::identity(d),
                invariant_factors: factors,
            });
        }
        let rows: Vec<Vec<i64>> = (0..s.rank).map(|i| s.u.row(i).to_vec()).collect();
        let transform = Matrix::from_rows(&rows)?;
        let mut inverse = Matrix::zeros(d, s.rank);
        for k in 0..s.rank {
            let mut e = vec![0; d];
            e[k] = 1;
            let col = lattice::solve_integer(&s.u, &e)?.ok_or(Error::Overflow)?;
            for (i, v) in col.into_iter().enumerate() {
                inverse[(i, k)] = v;
            }
        }
        Ok(LatticeChange {
            transform,
            inverse,
            invariant_factors: factors,
        })
    }

    /// True when `ZA` already is the full ambient lattice.
    pub fn is_identity(&self) -> bool {
        self.transform.rows() == self.transform.cols()
            && self.transform == Matrix::identity(self.transform.rows())
            && self.invariant_factors.iter().all(|&f| f == 1)
    }

    pub fn to_lattice(&self, p: &[i64]) -> Result<Option<Point>> {
        let image = self.transform.mul_vec(p)?;
        let mut q = Vec::with_capacity(image.len());
        for (v, f) in image.iter().zip(&self.invariant_factors) {
            if v % f != 0 {
                return Ok(None);
            }
            q.push(v / f);
        }
        // p must also lie in the span
        if self.from_lattice(&q)? != p {
            return Ok(None);
        }
        Ok(Some(q))
    }

    pub fn from_lattice(&self, q: &[i64]) -> Result<Point> {
        let scaled: Point = q
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, f)| x.checked_mul(*f).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        self.inverse.mul_vec(&scaled)
    }
}

/// A validated configuration with its facets and face lattice.
///
/// Immutable once built; share it behind an `Arc`.
#[derive(Debug, Clone)]
pub struct Configuration {
    matrix: Matrix,
    columns: Vec<Point>,
    facets: Vec<SupportFunction>,
    faces: Vec<Face>,
    face_index: HashMap<Vec<usize>, FaceId>,
    containment: Vec<Vec<bool>>,
    lattice: LatticeChange,
    budget: Budget,
}

impl Configuration {
    /// Validates `matrix` (nonzero columns, strongly convex cone) and caches
    /// its facets and faces.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.cols() == 0 || matrix.rows() == 0 {
            return Err(Error::EmptyConfiguration);
        }
        let columns = matrix.columns();
        if let Some(column) = columns.iter().position(|c| c.iter().all(|&x| x == 0)) {
            return Err(Error::ZeroColumn { column });
        }
        let budget = Budget::default();
        // a nonzero u >= 0 with A u = 0 exists iff some -a_j lies in NA
        for (j, c) in columns.iter().enumerate() {
            let neg: Point = c.iter().map(|x| -x).collect();
            let sys = DiophantineSystem::nonnegative(matrix.clone(), neg)?;
            if let Some(mut u) = sys.feasible(budget.solver_steps)? {
                u[j] += 1;
                return Err(Error::NotStronglyConvex { certificate: u });
            }
        }

        let facets = polyhedral::compute_facets(&matrix)?;
        let faces = polyhedral::face_lattice(matrix.cols(), &facets);
        let face_index = faces
            .iter()
            .enumerate()
            .map(|(k, f)| (f.indices.clone(), FaceId(k)))
            .collect();
        let containment = faces
            .iter()
            .map(|f| faces.iter().map(|g| f.contains_face(g)).collect())
            .collect();
        let lattice = LatticeChange::from_matrix(&matrix)?;
        Ok(Configuration {
            matrix,
            columns,
            facets,
            faces,
            face_index,
            containment,
            lattice,
            budget,
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Ambient dimension `d`.
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn column_count(&self) -> usize {
        self.matrix.cols()
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.columns[j]
    }

    pub fn facets(&self) -> &[SupportFunction] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.0]
    }

    pub fn lattice_change(&self) -> &LatticeChange {
        &self.lattice
    }

    /// Looks a face up by its (0-based) column indices, in any order.
    pub fn face_id(&self, indices: &[usize]) -> Result<FaceId> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        key.dedup();
        self.face_index
            .get(&key)
            .copied()
            .ok_or(Error::UnknownFace(key))
    }

    pub fn full_face(&self) -> FaceId {
        FaceId(self.faces.len() - 1)
    }

    pub fn origin(&self) -> FaceId {
        FaceId(0)
    }

    /// `outer ⊇ inner`.
    pub fn face_contains(&self, outer: FaceId, inner: FaceId) -> bool {
        self.containment[outer.0][inner.0]
    }

    pub fn face_matrix(&self, id: FaceId) -> Matrix {
        self.matrix.select_columns(&self.faces[id.0].indices)
    }

    pub fn face_columns(&self, id: FaceId) -> Vec<Point> {
        self.faces[id.0]
            .indices
            .iter()
            .map(|&j| self.columns[j].clone())
            .collect()
    }

    fn check_dimension(&self, p: &[i64]) -> Result<()> {
        if p.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                context: "point",
                expected: self.dimension(),
                found: p.len(),
                index: None,
            });
        }
        Ok(())
    }

    pub(crate) fn feasible(&self, m: Matrix, rhs: Point) -> Result<Option<Point>> {
        DiophantineSystem::nonnegative(m, rhs)?.feasible(self.budget.solver_steps)
    }

    pub(crate) fn minimal_solutions(&self, m: Matrix, rhs: Point) -> Result<Vec<Point>> {
        Ok(DiophantineSystem::nonnegative(m, rhs)?
            .minimal_solutions(self.budget.solver_steps)?
            .solutions)
    }

    /// Whether `point` is in the cone (all support functions nonnegative and
    /// the point in the linear span).
    pub fn in_cone(&self, point: &[i64]) -> Result<bool> {
        self.check_dimension(point)?;
        for f in &self.facets {
            if f.eval(point)? < 0 {
                return Ok(false);
            }
        }
        let with_point = self
            .matrix
            .hstack(&Matrix::from_columns(self.dimension(), &[point.to_vec()]));
        Ok(lattice::rank(&with_point) == lattice::rank(&self.matrix))
    }

    /// A witness `u >= 0` with `A u = point`, if the point lies in `NA`.
    pub fn is_member(&self, point: &[i64]) -> Result<Option<Point>> {
        self.check_dimension(point)?;
        for f in &self.facets {
            if f.eval(point)? < 0 {
                return Ok(None);
            }
        }
        self.feasible(self.matrix.clone(), point.to_vec())
    }

    /// `a_prime | a` in the semigroup ring, i.e. `a - a_prime ∈ NA`.
    pub fn divides(&self, a_prime: &[i64], a: &[i64]) -> Result<bool> {
        self.check_dimension(a_prime)?;
        self.check_dimension(a)?;
        Ok(self.is_member(&checked_sub(a, a_prime)?)?.is_some())
    }

    /// `point ∈ root + N F`.
    pub fn in_translate(&self, point: &[i64], root: &[i64], face: FaceId) -> Result<bool> {
        let diff = checked_sub(point, root)?;
        if self.faces[face.0].indices.is_empty() {
            return Ok(diff.iter().all(|&x| x == 0));
        }
        // cheap necessary condition: the facets containing F are constant on root + RF
        for &h in &self.faces[face.0].containing_facets {
            if self.facets[h].eval(&diff)? != 0 {
                return Ok(false);
            }
        }
        Ok(self.feasible(self.face_matrix(face), diff)?.is_some())
    }

    /// The face whose containing facets are exactly those vanishing on `point`.
    pub fn smallest_face_containing(&self, point: &[i64]) -> Result<FaceId> {
        if !self.in_cone(point)? {
            return Err(Error::OutsideCone {
                point: point.to_vec(),
            });
        }
        let indices =
            polyhedral::smallest_face_containing(self.column_count(), &self.facets, point)?;
        self.face_id(&indices)
    }

    /// `(a, F) ≺ (b, G)`: `a + NF ⊆ b + NG`.
    pub fn pair_prec(&self, p: &Pair, q: &Pair) -> Result<bool> {
        if !self.face_contains(q.face, p.face) {
            return Ok(false);
        }
        self.in_translate(&p.root, &q.root, q.face)
    }

    /// `(a, F)` and `(b, F)` overlap: `a - b ∈ ZF`.
    pub fn pair_overlaps(&self, p: &Pair, q: &Pair) -> Result<bool> {
        if p.face != q.face {
            return Err(Error::FaceMismatch);
        }
        let diff = checked_sub(&p.root, &q.root)?;
        lattice::lattice_membership(&self.face_columns(p.face), &diff)
    }

    /// `(a, F)` divides `(b, G)`: `a + c + NF ⊆ b + NG` for some `c ∈ NA`.
    pub fn pair_divides(&self, p: &Pair, q: &Pair) -> Result<bool> {
        if !self.face_contains(q.face, p.face) {
            return Ok(false);
        }
        // a + A u = b + G w
        for &h in &self.faces[q.face.0].containing_facets {
            let f = &self.facets[h];
            if f.eval(&p.root)? > f.eval(&q.root)? {
                return Ok(false);
            }
        }
        let m = self.matrix.hstack(&self.face_matrix(q.face).neg());
        let rhs = checked_sub(&q.root, &p.root)?;
        Ok(self.feasible(m, rhs)?.is_some())
    }

    /// Every point `A u` with `u >= 0` and `|u| <= bound`, in graded-lex order.
    pub fn points_up_to(&self, bound: usize) -> Result<Vec<Point>> {
        let mut seen: std::collections::HashSet<Point> = std::collections::HashSet::new();
        let mut layer = vec![vec![0; self.dimension()]];
        seen.insert(layer[0].clone());
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &layer {
                for c in &self.columns {
                    let q = crate::matrix::checked_add(p, c)?;
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            layer = next;
        }
        let mut all: Vec<Point> = seen.into_iter().collect();
        all.sort_by(|a, b| graded_lex(a, b));
        Ok(all)
    }

    /// Sum of the columns of a face, a point in its relative interior.
    pub(crate) fn face_interior_point(&self, face: FaceId) -> Point {
        let mut s = vec![0; self.dimension()];
        for &j in &self.faces[face.0].indices {
            for (x, y) in s.iter_mut().zip(&self.columns[j]) {
                *x += y;
            }
        }
        s
    }
}

/// A monomial `t^a`: its degree in `NA` together with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub degree: Point,
    pub witness: Point,
}

impl Monomial {
    pub fn new(config: &Configuration, degree: Point) -> Result<Self> {
        match config.is_member(&degree)? {
            Some(witness) => Ok(Monomial { degree, witness }),
            None => Err(Error::PointNotInSemigroup { point: degree }),
        }
    }
}

/// A monomial ideal, stored by a minimal set of monomial generators.
#[derive(Clone)]
pub struct MonomialIdeal {
    config: Arc<Configuration>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes the given generator degrees, keeping input order among the
    /// survivors. Degrees outside `NA` are rejected.
    pub fn new(config: Arc<Configuration>, degrees: Vec<Point>) -> Result<Self> {
        let mut monomials: Vec<Monomial> = Vec::with_capacity(degrees.len());
        for degree in degrees {
            config.check_dimension(&degree)?;
            match config.is_member(&degree)? {
                Some(witness) => monomials.push(Monomial { degree, witness }),
                None => return Err(Error::GeneratorOutsideSemigroup { degree }),
            }
        }
        let generators = minimalize(&config, monomials)?;
        Ok(MonomialIdeal { config, generators })
    }

    pub fn zero(config: Arc<Configuration>) -> Self {
        MonomialIdeal {
            config,
            generators: Vec::new(),
        }
    }

    pub fn unit(config: Arc<Configuration>) -> Self {
        let d = config.dimension();
        let n = config.column_count();
        MonomialIdeal {
            config,
            generators: vec![Monomial {
                degree: vec![0; d],
                witness: vec![0; n],
            }],
        }
    }

    pub fn configuration(&self) -> &Arc<Configuration> {
        &self.config
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<Point> {
        self.generators.iter().map(|m| m.degree.clone()).collect()
    }

    /// Generator degrees in graded-lex order.
    pub fn sorted_degrees(&self) -> Vec<Point> {
        let mut d = self.degrees();
        d.sort_by(|a, b| graded_lex(a, b));
        d
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.degree.iter().all(|&x| x == 0))
    }

    /// `t^point ∈ I`.
    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        if self.config.is_member(point)?.is_none() {
            return Err(Error::PointNotInSemigroup {
                point: point.to_vec(),
            });
        }
        self.contains_member(point)
    }

    /// Membership for a point already known to be in `NA`.
    pub(crate) fn contains_member(&self, point: &[i64]) -> Result<bool> {
        for g in &self.generators {
            if self.config.divides(&g.degree, point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialIdeal")
            .field("generators", &self.degrees())
            .finish()
    }
}

fn minimalize(config: &Configuration, monomials: Vec<Monomial>) -> Result<Vec<Monomial>> {
    let mut kept: Vec<Monomial> = Vec::new();
    for (i, m) in monomials.iter().enumerate() {
        let mut redundant = false;
        for (j, other) in monomials.iter().enumerate() {
            if i == j {
                continue;
            }
            if other.degree == m.degree {
                // keep the first copy only
                if j < i {
                    redundant = true;
                    break;
                }
                continue;
            }
            if config.divides(&other.degree, &m.degree)? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            kept.push(m.clone());
        }
    }
    Ok(kept)
}

/// A pair `(a, F)`, standing for the translated monoid `a + NF`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    pub root: Point,
    pub face: FaceId,
}

impl Pair {
    pub fn new(root: Point, face: FaceId) -> Self {
        Pair { root, face }
    }

    /// Checked constructor: the root has to lie in `NA`.
    pub fn checked(config: &Configuration, root: Point, face: FaceId) -> Result<Self> {
        if config.is_member(&root)?.is_none() {
            return Err(Error::PointNotInSemigroup { point: root });
        }
        if face.0 >= config.faces().len() {
            return Err(Error::UnknownFace(vec![face.0]));
        }
        Ok(Pair { root, face })
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.face
            .cmp(&other.face)
            .then_with(|| graded_lex(&self.root, &other.root))
    }
}

/// Keeps only the componentwise-minimal vectors (duplicates collapse).
pub(crate) fn coordinatewise_minimal(mut vs: Vec<Point>) -> Vec<Point> {
    vs.sort_by(|a, b| graded_lex(a, b));
    vs.dedup();
    let mut out: Vec<Point> = Vec::new();
    for v in vs {
        if !out.iter().any(|w| dominated(w, &v)) {
            out.push(v);
        }
    }
    out
}
