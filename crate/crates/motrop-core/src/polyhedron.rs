//! Exact rational polyhedra in H-representation.
//!
//! A [`QPolyhedron`] is an intersection of closed halfspaces `a . x <= c`
//! with integer normals `a` and rational bounds `c`, in a fixed ambient
//! dimension. Feasibility is decided at construction time by exact LP and an
//! infeasible polyhedron is normalized to the canonical empty value.
//! Relative openness is carried by [`Cell`], not by the polyhedron itself.
//!
//! Face enumeration is deliberately capped at ambient dimension 3: the
//! constructions that rely on it live in the plane (tropical curves) and on
//! the line (intervals), and the cap avoids a general double-description
//! engine.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::lp::{LpOutcome, LpProblem};

/// The closed halfspace `normal . x <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub bound: BigRational,
}

impl Halfspace {
    pub fn new(normal: Vec<i64>, bound: BigRational) -> Self {
        Halfspace {
            normal: normal.into_iter().map(BigInt::from).collect(),
            bound,
        }
    }

    fn normal_rat(&self) -> Vec<BigRational> {
        self.normal.iter().map(|a| BigRational::from(a.clone())).collect()
    }

    fn is_zero_normal(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }
}

/// Errors from polyhedral operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// The operation requires a nonempty polyhedron.
    Empty,
    /// Face enumeration is only supported up to ambient dimension 3.
    AmbientTooLarge { ambient_dim: usize },
    /// A halfspace normal does not match the ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Empty => write!(f, "operation requires a nonempty polyhedron"),
            PolyError::AmbientTooLarge { ambient_dim } => write!(
                f,
                "face enumeration is limited to ambient dimension 3, got {ambient_dim}"
            ),
            PolyError::DimensionMismatch { expected, got } => {
                write!(f, "halfspace normal has length {got}, ambient dimension is {expected}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// A rational polyhedron `{ x : A x <= c }` with cached feasibility.
#[derive(Clone, Debug)]
pub struct QPolyhedron {
    ambient_dim: usize,
    halfspaces: Vec<Halfspace>,
    feasible: bool,
}

impl QPolyhedron {
    /// Build a polyhedron from halfspaces, deciding feasibility immediately.
    /// Trivial rows (`0 . x <= c` with `c >= 0`) are dropped; an infeasible
    /// system collapses to the canonical empty polyhedron.
    pub fn from_halfspaces(
        ambient_dim: usize,
        halfspaces: Vec<Halfspace>,
    ) -> Result<Self, PolyError> {
        let mut kept = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            if h.normal.len() != ambient_dim {
                return Err(PolyError::DimensionMismatch {
                    expected: ambient_dim,
                    got: h.normal.len(),
                });
            }
            if h.is_zero_normal() {
                if h.bound.is_negative() {
                    return Ok(QPolyhedron::empty(ambient_dim));
                }
                continue;
            }
            kept.push(h);
        }
        let candidate = QPolyhedron { ambient_dim, halfspaces: kept, feasible: true };
        if candidate.lp().is_feasible() {
            Ok(candidate)
        } else {
            Ok(QPolyhedron::empty(ambient_dim))
        }
    }

    /// Convenience constructor from integer normals and rational bounds.
    pub fn from_ints(ambient_dim: usize, rows: &[(&[i64], BigRational)]) -> Result<Self, PolyError> {
        let halfspaces = rows
            .iter()
            .map(|(a, c)| Halfspace::new(a.to_vec(), c.clone()))
            .collect();
        QPolyhedron::from_halfspaces(ambient_dim, halfspaces)
    }

    /// The canonical empty polyhedron in the given ambient dimension.
    pub fn empty(ambient_dim: usize) -> Self {
        QPolyhedron {
            ambient_dim,
            halfspaces: vec![Halfspace {
                normal: vec![BigInt::zero(); ambient_dim],
                bound: -BigRational::one(),
            }],
            feasible: false,
        }
    }

    /// The whole ambient space (no constraints). For `ambient_dim = 0` this
    /// is the one-point space.
    pub fn full_space(ambient_dim: usize) -> Self {
        QPolyhedron { ambient_dim, halfspaces: Vec::new(), feasible: true }
    }

    /// A single rational point.
    pub fn point(coords: &[BigRational]) -> Self {
        let n = coords.len();
        let mut halfspaces = Vec::with_capacity(2 * n);
        for (i, c) in coords.iter().enumerate() {
            let mut pos = vec![BigInt::zero(); n];
            pos[i] = BigInt::one();
            let mut neg = vec![BigInt::zero(); n];
            neg[i] = -BigInt::one();
            // Scale to integer normals: x_i <= c and -x_i <= -c.
            halfspaces.push(Halfspace { normal: pos, bound: c.clone() });
            halfspaces.push(Halfspace { normal: neg, bound: -c.clone() });
        }
        QPolyhedron { ambient_dim: n, halfspaces, feasible: true }
    }

    /// The closed interval `[lo, hi]` on the line.
    pub fn interval(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        QPolyhedron {
            ambient_dim: 1,
            halfspaces: vec![
                Halfspace { normal: vec![BigInt::one()], bound: hi },
                Halfspace { normal: vec![-BigInt::one()], bound: -lo },
            ],
            feasible: true,
        }
    }

    /// The closed ray `[lo, +inf)` on the line.
    pub fn ray_from(lo: BigRational) -> Self {
        QPolyhedron {
            ambient_dim: 1,
            halfspaces: vec![Halfspace { normal: vec![-BigInt::one()], bound: -lo }],
            feasible: true,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn is_empty(&self) -> bool {
        !self.feasible
    }

    fn lp(&self) -> LpProblem {
        let mut p = LpProblem::new(self.ambient_dim);
        for h in &self.halfspaces {
            p.add_constraint(h.normal_rat(), h.bound.clone());
        }
        p
    }

    /// Exact membership test.
    pub fn contains_point(&self, x: &[BigRational]) -> bool {
        debug_assert_eq!(x.len(), self.ambient_dim);
        self.feasible
            && self.halfspaces.iter().all(|h| {
                let lhs: BigRational = h
                    .normal
                    .iter()
                    .zip(x)
                    .map(|(a, xi)| BigRational::from(a.clone()) * xi)
                    .sum();
                lhs <= h.bound
            })
    }

    /// Indices of halfspaces that hold with equality on the whole polyhedron.
    /// The affine hull is the intersection of these hyperplanes.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        if !self.feasible {
            return Vec::new();
        }
        let lp = self.lp();
        let mut out = Vec::new();
        for (i, h) in self.halfspaces.iter().enumerate() {
            match lp.minimize(&h.normal_rat()) {
                LpOutcome::Optimal { value, .. } if value == h.bound => out.push(i),
                _ => {}
            }
        }
        out
    }

    /// Affine dimension of a nonempty polyhedron.
    pub fn dimension(&self) -> Result<usize, PolyError> {
        if !self.feasible {
            return Err(PolyError::Empty);
        }
        let implicit = self.implicit_equalities();
        let rows: Vec<Vec<BigRational>> = implicit
            .iter()
            .map(|&i| self.halfspaces[i].normal_rat())
            .collect();
        Ok(self.ambient_dim - linalg::rank(&rows))
    }

    /// Dimension of the lineality space of the recession cone.
    pub fn lineality_dim(&self) -> usize {
        let rows: Vec<Vec<BigRational>> =
            self.halfspaces.iter().map(Halfspace::normal_rat).collect();
        self.ambient_dim - linalg::rank(&rows)
    }

    /// Whether the recession cone is strictly larger than its lineality
    /// space, i.e. the polyhedron has an unbounded pointed part.
    pub fn has_unbounded_pointed_part(&self) -> bool {
        if !self.feasible {
            return false;
        }
        let n = self.ambient_dim;
        let mut cone = LpProblem::new(n);
        for h in &self.halfspaces {
            cone.add_constraint(h.normal_rat(), BigRational::zero());
        }
        // Box the cone so each subproblem is a bounded LP; scaling makes the
        // box harmless for sign questions.
        for i in 0..n {
            let mut pos = vec![BigRational::zero(); n];
            pos[i] = BigRational::one();
            let neg: Vec<BigRational> = pos.iter().map(|x| -x).collect();
            cone.add_constraint(pos, BigRational::one());
            cone.add_constraint(neg, BigRational::one());
        }
        for h in &self.halfspaces {
            match cone.minimize(&h.normal_rat()) {
                LpOutcome::Optimal { value, .. } if value.is_negative() => return true,
                _ => {}
            }
        }
        false
    }

    /// Boundedness of the recession cone, decided by exact LP over the cone
    /// `{ d : A d <= 0 }` (maximize each `+-d_i` inside a unit box). The
    /// empty polyhedron counts as bounded.
    pub fn is_bounded(&self) -> bool {
        if !self.feasible {
            return true;
        }
        let n = self.ambient_dim;
        let mut cone = LpProblem::new(n);
        for h in &self.halfspaces {
            cone.add_constraint(h.normal_rat(), BigRational::zero());
        }
        for i in 0..n {
            let mut pos = vec![BigRational::zero(); n];
            pos[i] = BigRational::one();
            let neg: Vec<BigRational> = pos.iter().map(|x| -x).collect();
            cone.add_constraint(pos.clone(), BigRational::one());
            cone.add_constraint(neg.clone(), BigRational::one());
        }
        for i in 0..n {
            let mut obj = vec![BigRational::zero(); n];
            obj[i] = BigRational::one();
            for sign in [1i64, -1] {
                let o: Vec<BigRational> = obj
                    .iter()
                    .map(|x| x * BigRational::from(BigInt::from(sign)))
                    .collect();
                if let LpOutcome::Optimal { value, .. } = cone.maximize(&o) {
                    if value.is_positive() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether `self` is contained in `other` as a point set.
    pub fn is_subset_of(&self, other: &QPolyhedron) -> bool {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if !self.feasible {
            return true;
        }
        if !other.feasible {
            return false;
        }
        let lp = self.lp();
        other.halfspaces.iter().all(|h| match lp.maximize(&h.normal_rat()) {
            LpOutcome::Optimal { value, .. } => value <= h.bound,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => true,
        })
    }

    /// Set equality of two polyhedra (mutual inclusion).
    pub fn set_eq(&self, other: &QPolyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// The translate `P + b`.
    pub fn translate(&self, b: &[BigRational]) -> QPolyhedron {
        debug_assert_eq!(b.len(), self.ambient_dim);
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let shift: BigRational = h
                    .normal
                    .iter()
                    .zip(b)
                    .map(|(a, bi)| BigRational::from(a.clone()) * bi)
                    .sum();
                Halfspace { normal: h.normal.clone(), bound: &h.bound + shift }
            })
            .collect();
        QPolyhedron { ambient_dim: self.ambient_dim, halfspaces, feasible: self.feasible }
    }

    /// The Cartesian product `P x Q` in the concatenated ambient space.
    pub fn product(&self, other: &QPolyhedron) -> QPolyhedron {
        let n = self.ambient_dim;
        let m = other.ambient_dim;
        if !self.feasible || !other.feasible {
            return QPolyhedron::empty(n + m);
        }
        let mut halfspaces = Vec::with_capacity(self.halfspaces.len() + other.halfspaces.len());
        for h in &self.halfspaces {
            let mut normal = h.normal.clone();
            normal.extend(core::iter::repeat_n(BigInt::zero(), m));
            halfspaces.push(Halfspace { normal, bound: h.bound.clone() });
        }
        for h in &other.halfspaces {
            let mut normal = vec![BigInt::zero(); n];
            normal.extend(h.normal.iter().cloned());
            halfspaces.push(Halfspace { normal, bound: h.bound.clone() });
        }
        QPolyhedron { ambient_dim: n + m, halfspaces, feasible: true }
    }

    /// The intersection of two polyhedra in the same ambient space.
    pub fn intersect(&self, other: &QPolyhedron) -> Result<QPolyhedron, PolyError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        QPolyhedron::from_halfspaces(self.ambient_dim, halfspaces)
    }

    /// Drop constraints implied by the others; keeps the point set.
    fn irredundant_rows(&self) -> Vec<Halfspace> {
        let mut rows: Vec<Halfspace> = self.halfspaces.clone();
        // Exact duplicates (up to positive scaling) first.
        let mut seen: Vec<(Vec<BigInt>, BigRational)> = Vec::new();
        rows.retain(|h| {
            let key = normalize_row(h);
            if seen.contains(&key) {
                false
            } else {
                seen.push(key);
                true
            }
        });
        let mut i = 0;
        while i < rows.len() {
            let mut lp = LpProblem::new(self.ambient_dim);
            for (j, h) in rows.iter().enumerate() {
                if j != i {
                    lp.add_constraint(h.normal_rat(), h.bound.clone());
                }
            }
            let redundant = match lp.maximize(&rows[i].normal_rat()) {
                LpOutcome::Optimal { value, .. } => value <= rows[i].bound,
                _ => false,
            };
            if redundant {
                rows.remove(i);
            } else {
                i += 1;
            }
        }
        rows
    }

    /// All nonempty faces, including the polyhedron itself, each in
    /// H-representation. Capped at ambient dimension 3.
    pub fn faces(&self) -> Result<Vec<QPolyhedron>, PolyError> {
        if !self.feasible {
            return Err(PolyError::Empty);
        }
        if self.ambient_dim > 3 {
            return Err(PolyError::AmbientTooLarge { ambient_dim: self.ambient_dim });
        }
        let rows = self.irredundant_rows();
        let m = rows.len();
        let mut seen_tight: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << m) {
            let forced: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            let mut lp = LpProblem::new(self.ambient_dim);
            for h in &rows {
                lp.add_constraint(h.normal_rat(), h.bound.clone());
            }
            for &i in &forced {
                let neg: Vec<BigRational> =
                    rows[i].normal_rat().iter().map(|x| -x).collect();
                lp.add_constraint(neg, -rows[i].bound.clone());
            }
            if !lp.is_feasible() {
                continue;
            }
            // Close up: which constraints are tight on the whole face?
            let mut tight = Vec::new();
            for (i, h) in rows.iter().enumerate() {
                if forced.contains(&i) {
                    tight.push(i);
                    continue;
                }
                if let LpOutcome::Optimal { value, .. } = lp.minimize(&h.normal_rat()) {
                    if value == h.bound {
                        tight.push(i);
                    }
                }
            }
            if seen_tight.contains(&tight) {
                continue;
            }
            let mut halfspaces = rows.clone();
            for &i in &tight {
                halfspaces.push(Halfspace {
                    normal: rows[i].normal.iter().map(|a| -a).collect(),
                    bound: -rows[i].bound.clone(),
                });
            }
            seen_tight.push(tight);
            out.push(QPolyhedron {
                ambient_dim: self.ambient_dim,
                halfspaces,
                feasible: true,
            });
        }
        Ok(out)
    }

    /// Whether the polyhedron equals its own relative interior (it is an
    /// affine subspace, a point, or the whole space).
    pub fn is_relatively_open(&self) -> bool {
        self.feasible && self.implicit_equalities().len() == self.halfspaces.len()
    }

    /// Strict/equality split describing the relative interior.
    fn relint_system(&self) -> (Vec<usize>, Vec<usize>) {
        let implicit = self.implicit_equalities();
        let strict: Vec<usize> = (0..self.halfspaces.len())
            .filter(|i| !implicit.contains(i))
            .collect();
        (implicit, strict)
    }

    fn describe(&self) -> String {
        format!("polyhedron in R^{} with {} halfspaces", self.ambient_dim, self.halfspaces.len())
    }
}

/// Scale a halfspace to a canonical form for duplicate detection.
fn normalize_row(h: &Halfspace) -> (Vec<BigInt>, BigRational) {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for a in &h.normal {
        g = g.gcd(a);
    }
    if g.is_zero() {
        return (h.normal.clone(), h.bound.clone());
    }
    let normal: Vec<BigInt> = h.normal.iter().map(|a| a / &g).collect();
    let bound = &h.bound / BigRational::from(g);
    (normal, bound)
}

/// A polyhedron together with an openness flag: `open = true` stands for the
/// relative interior of the support.
#[derive(Clone, Debug)]
pub struct Cell {
    support: QPolyhedron,
    open: bool,
}

impl Cell {
    /// A closed cell.
    pub fn closed(support: QPolyhedron) -> Self {
        Cell { support, open: false }
    }

    /// The relative interior of a nonempty polyhedron.
    pub fn open(support: QPolyhedron) -> Result<Self, PolyError> {
        if support.is_empty() {
            return Err(PolyError::Empty);
        }
        Ok(Cell { support, open: true })
    }

    pub fn support(&self) -> &QPolyhedron {
        &self.support
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn ambient_dim(&self) -> usize {
        self.support.ambient_dim()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn dimension(&self) -> Result<usize, PolyError> {
        self.support.dimension()
    }

    pub fn translate(&self, b: &[BigRational]) -> Cell {
        Cell { support: self.support.translate(b), open: self.open }
    }

    /// Cartesian product of cells. The relative interior of a product is the
    /// product of relative interiors, so two open cells multiply to an open
    /// cell; a genuinely closed factor must be decomposed first (see
    /// [`Cell::open_pieces`]).
    pub fn product(&self, other: &Cell) -> Cell {
        Cell {
            support: self.support.product(&other.support),
            open: self.open || other.open,
        }
    }

    /// Whether the cell, as a point set, equals the relative interior of its
    /// support no matter the flag (affine subspaces and points).
    pub fn is_flag_neutral(&self) -> bool {
        self.support.is_relatively_open()
    }

    /// Decompose the cell into relatively open cells: an open cell is its own
    /// decomposition, a closed cell splits into the relative interiors of its
    /// faces.
    pub fn open_pieces(&self) -> Result<Vec<Cell>, PolyError> {
        if self.support.is_empty() {
            return Ok(Vec::new());
        }
        if self.open || self.is_flag_neutral() {
            return Ok(vec![Cell { support: self.support.clone(), open: true }]);
        }
        let faces = self.support.faces()?;
        Ok(faces
            .into_iter()
            .map(|f| Cell { support: f, open: true })
            .collect())
    }

    /// Whether two cells intersect as point sets, honoring openness exactly.
    pub fn intersects(&self, other: &Cell) -> bool {
        debug_assert_eq!(self.ambient_dim(), other.ambient_dim());
        if self.is_empty() || other.is_empty() {
            return false;
        }
        let n = self.ambient_dim();
        // Variables (x, t); strict constraints become a.x + t <= c, and we
        // ask whether t can be made positive.
        let mut lp = LpProblem::new(n + 1);
        let add_side = |cell: &Cell, lp: &mut LpProblem| {
            let (implicit, strict) = cell.support.relint_system();
            let treat_all_closed = !cell.open;
            for (idx, h) in cell.support.halfspaces().iter().enumerate() {
                let mut row = h.normal_rat();
                let strict_row = !treat_all_closed && strict.contains(&idx);
                row.push(if strict_row { BigRational::one() } else { BigRational::zero() });
                lp.add_constraint(row, h.bound.clone());
            }
            if !treat_all_closed {
                for &idx in &implicit {
                    let h = &cell.support.halfspaces()[idx];
                    let mut row: Vec<BigRational> =
                        h.normal_rat().iter().map(|x| -x).collect();
                    row.push(BigRational::zero());
                    lp.add_constraint(row, -h.bound.clone());
                }
            }
        };
        add_side(self, &mut lp);
        add_side(other, &mut lp);
        let mut cap = vec![BigRational::zero(); n];
        cap.push(BigRational::one());
        lp.add_constraint(cap.clone(), BigRational::one());
        let mut obj = vec![BigRational::zero(); n];
        obj.push(BigRational::one());
        match lp.maximize(&obj) {
            LpOutcome::Optimal { value, .. } => value.is_positive(),
            LpOutcome::Unbounded => true,
            LpOutcome::Infeasible => false,
        }
    }

    pub fn describe(&self) -> String {
        let openness = if self.open { "open" } else { "closed" };
        format!("{} {}", openness, self.support.describe())
    }
}
