//! Tropicalization of plane curves over Puiseux-coefficient polynomials.
//!
//! A [`PuiseuxPoly`] records, for each exponent in the plane, the exact
//! valuation of its coefficient (and optionally the leading complex
//! coefficient as a pair of rationals). Tropicalization takes the corner
//! locus of `x -> min_m (w_m + m . x)` — the min convention matches a
//! valuation with `v(t) = 1 > 0` — and couples it with the dual Newton
//! subdivision induced by the lower hull of the lifted support.
//!
//! The duality is inclusion-reversing: 2-cells correspond to curve vertices,
//! interior edges to bounded curve edges, and boundary edges to rays (with
//! weight the lattice length of the dual edge). A collinear support is
//! accepted and produces a degenerate curve whose cells are full lines; the
//! volume bookkeeping stays consistent because a full line has `chi_prime`
//! equal to 1 rather than 0.
//!
//! Initial degeneration classes use the standard non-degenerate curve
//! dictionary: the stratum over a vertex is a smooth curve of genus equal to
//! the interior lattice point count of the dual cell minus one puncture per
//! boundary lattice point, and the stratum over an edge consists of as many
//! reduced points as the dual lattice length. This imported dictionary is
//! validated by the Euler-characteristic cross-check in the test suite.

mod multiplicity;
mod schoen;

pub use multiplicity::quantum_integer;
pub use schoen::{SchoenReport, SchoenStatus};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice::{self, LatticeError, LatticePoint, LatticePolygon};
use crate::motivic::MotivicClass;
use crate::polyhedron::{Cell, PolyError, QPolyhedron};
use crate::subdivision::{self, LiftedPoint, Subdivision, SubdivisionError};
use crate::vf::{VFClass, VFError};

/// One term of a polynomial over the Puiseux field: an exponent, the exact
/// valuation of its coefficient, and optionally the leading complex
/// coefficient `re + im * i` as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxTerm {
    pub m: LatticePoint,
    pub w: BigRational,
    pub lead: Option<(BigRational, BigRational)>,
}

/// A polynomial over the Puiseux field, recorded through tropical data.
#[derive(Clone, Debug)]
pub struct PuiseuxPoly {
    terms: Vec<PuiseuxTerm>,
}

/// Errors from the tropical layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TropError {
    EmptySupport,
    DuplicateExponent { m: LatticePoint },
    ZeroLeadCoefficient { m: LatticePoint },
    TooFewPoints { got: usize },
    /// The schoen report did not pass and no override was requested.
    SchoenRefused { status: SchoenStatus, detail: String },
    NonTrivalentVertex { vertex: usize, valence: usize },
    /// The curve is not simple: the dual subdivision is not a triangulation.
    NotSimple { detail: String },
    Lattice(LatticeError),
    Poly(PolyError),
    VF(VFError),
}

impl fmt::Display for TropError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropError::EmptySupport => write!(f, "polynomial support is empty"),
            TropError::DuplicateExponent { m } => {
                write!(f, "duplicate exponent ({}, {})", m.0, m.1)
            }
            TropError::ZeroLeadCoefficient { m } => {
                write!(f, "leading coefficient at exponent ({}, {}) is zero", m.0, m.1)
            }
            TropError::TooFewPoints { got } => {
                write!(f, "tropicalization needs at least 2 support points, got {got}")
            }
            TropError::SchoenRefused { status, detail } => {
                write!(f, "schoen check returned {status:?}: {detail}")
            }
            TropError::NonTrivalentVertex { vertex, valence } => {
                write!(f, "vertex {vertex} has valence {valence}, expected 3")
            }
            TropError::NotSimple { detail } => write!(f, "curve is not simple: {detail}"),
            TropError::Lattice(e) => write!(f, "{e}"),
            TropError::Poly(e) => write!(f, "{e}"),
            TropError::VF(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TropError {}

impl From<LatticeError> for TropError {
    fn from(e: LatticeError) -> Self {
        TropError::Lattice(e)
    }
}

impl From<PolyError> for TropError {
    fn from(e: PolyError) -> Self {
        TropError::Poly(e)
    }
}

impl From<VFError> for TropError {
    fn from(e: VFError) -> Self {
        TropError::VF(e)
    }
}

impl From<SubdivisionError> for TropError {
    fn from(e: SubdivisionError) -> Self {
        match e {
            SubdivisionError::TooFewPoints { got } => TropError::TooFewPoints { got },
            SubdivisionError::DuplicateExponent { m } => TropError::DuplicateExponent { m },
        }
    }
}

impl PuiseuxPoly {
    pub fn new(terms: Vec<PuiseuxTerm>) -> Result<Self, TropError> {
        if terms.is_empty() {
            return Err(TropError::EmptySupport);
        }
        let mut seen: Vec<LatticePoint> = Vec::new();
        for t in &terms {
            if seen.contains(&t.m) {
                return Err(TropError::DuplicateExponent { m: t.m });
            }
            if let Some((re, im)) = &t.lead {
                if re.is_zero() && im.is_zero() {
                    return Err(TropError::ZeroLeadCoefficient { m: t.m });
                }
            }
            seen.push(t.m);
        }
        let mut terms = terms;
        terms.sort_by_key(|t| t.m);
        Ok(PuiseuxPoly { terms })
    }

    /// Convenience constructor without leading coefficients.
    pub fn from_support(support: &[(LatticePoint, BigRational)]) -> Result<Self, TropError> {
        PuiseuxPoly::new(
            support
                .iter()
                .map(|(m, w)| PuiseuxTerm { m: *m, w: w.clone(), lead: None })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[PuiseuxTerm] {
        &self.terms
    }

    pub fn has_all_leads(&self) -> bool {
        self.terms.iter().all(|t| t.lead.is_some())
    }

    fn lifted(&self) -> Vec<LiftedPoint> {
        self.terms
            .iter()
            .map(|t| LiftedPoint { m: t.m, w: t.w.clone() })
            .collect()
    }

    /// The term with the given exponent, if present.
    pub fn term_at(&self, m: LatticePoint) -> Option<&PuiseuxTerm> {
        self.terms.iter().find(|t| t.m == m)
    }
}

/// Exact rational position in the tropical plane.
pub type TropPoint = (BigRational, BigRational);

/// Edge shape of a tropical plane curve.
#[derive(Clone, Debug)]
pub enum TropEdgeKind {
    /// Bounded edge between two vertices.
    Segment { from: usize, to: usize },
    /// Unbounded edge leaving a vertex in a primitive direction.
    Ray { from: usize, direction: (i64, i64) },
    /// A full affine line (degenerate curves only).
    Line { point: TropPoint, direction: (i64, i64) },
}

/// An edge of the curve with its weight and a reference to the dual object:
/// the subdivision edge for segments and rays, the subdivision cell for
/// degenerate lines.
#[derive(Clone, Debug)]
pub struct TropEdge {
    pub kind: TropEdgeKind,
    pub weight: i64,
    pub dual: usize,
}

/// A weighted balanced 1-complex in the plane, dual to a Newton subdivision.
#[derive(Clone, Debug)]
pub struct TropicalPlaneCurve {
    pub vertices: Vec<TropPoint>,
    pub edges: Vec<TropEdge>,
    /// First Betti number of the union of vertices and bounded edges.
    pub first_betti_bounded: usize,
    /// Set when the support was collinear and the curve is a union of lines.
    pub degenerate: bool,
}

/// Reference to a cell of the tropical curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveCell {
    Vertex(usize),
    Edge(usize),
}

/// The dual pair produced by tropicalization, with everything needed to
/// evaluate initial degeneration classes and volumes.
#[derive(Clone, Debug)]
pub struct Tropicalization {
    pub poly: PuiseuxPoly,
    pub subdivision: Subdivision,
    pub curve: TropicalPlaneCurve,
}

/// Tropicalize a plane curve: corner locus of the min-plus evaluation plus
/// the dual subdivision. A support of fewer than two points is rejected; a
/// collinear support yields a degenerate (line union) curve.
pub fn tropicalize(poly: &PuiseuxPoly) -> Result<Tropicalization, TropError> {
    let subdiv = subdivision::regular_subdivision(&poly.lifted())?;
    let curve = if subdiv.degenerate {
        degenerate_curve(&subdiv)
    } else {
        planar_curve(&subdiv)
    };
    let trop = Tropicalization { poly: poly.clone(), subdivision: subdiv, curve };
    debug_assert!(trop.is_balanced(), "tropical curves are balanced by duality");
    Ok(trop)
}

fn planar_curve(subdiv: &Subdivision) -> TropicalPlaneCurve {
    let vertices: Vec<TropPoint> = subdiv
        .cells
        .iter()
        .map(|c| c.plane.dual_position())
        .collect();

    // Interior reference point of the Newton polygon for orienting rays.
    let hull = subdiv
        .newton_polygon()
        .expect("planar subdivisions have a Newton polygon");
    let k = BigInt::from(hull.vertices().len() as i64);
    let centroid = (
        BigRational::new(
            BigInt::from(hull.vertices().iter().map(|v| v.0).sum::<i64>()),
            k.clone(),
        ),
        BigRational::new(
            BigInt::from(hull.vertices().iter().map(|v| v.1).sum::<i64>()),
            k,
        ),
    );

    let mut edges = Vec::with_capacity(subdiv.edges.len());
    for (j, e) in subdiv.edges.iter().enumerate() {
        let weight = e.lattice_length;
        match e.cells {
            (c1, Some(c2)) => {
                edges.push(TropEdge {
                    kind: TropEdgeKind::Segment { from: c1, to: c2 },
                    weight,
                    dual: j,
                });
            }
            (c, None) => {
                let dir = inner_normal(e.endpoints.0, e.endpoints.1, &centroid);
                edges.push(TropEdge {
                    kind: TropEdgeKind::Ray { from: c, direction: dir },
                    weight,
                    dual: j,
                });
            }
        }
    }

    let first_betti_bounded = betti_of_bounded_part(vertices.len(), &edges);
    TropicalPlaneCurve { vertices, edges, first_betti_bounded, degenerate: false }
}

fn degenerate_curve(subdiv: &Subdivision) -> TropicalPlaneCurve {
    let mut edges = Vec::with_capacity(subdiv.cells.len());
    for (ci, cell) in subdiv.cells.iter().enumerate() {
        let (a, b) = (cell.polygon[0], cell.polygon[1]);
        let dir = lattice::primitive_direction(a, b);
        edges.push(TropEdge {
            kind: TropEdgeKind::Line {
                point: cell.plane.dual_position(),
                direction: (-dir.1, dir.0),
            },
            weight: lattice::lattice_length(a, b),
            dual: ci,
        });
    }
    TropicalPlaneCurve {
        vertices: Vec::new(),
        edges,
        first_betti_bounded: 0,
        degenerate: true,
    }
}

/// Primitive inner normal of the Newton polygon along a boundary edge.
fn inner_normal(a: LatticePoint, b: LatticePoint, interior: &TropPoint) -> (i64, i64) {
    let d = lattice::primitive_direction(a, b);
    let n = (-d.1, d.0);
    let toward = (
        &interior.0 - BigRational::from(BigInt::from(a.0)),
        &interior.1 - BigRational::from(BigInt::from(a.1)),
    );
    let dot = BigRational::from(BigInt::from(n.0)) * toward.0
        + BigRational::from(BigInt::from(n.1)) * toward.1;
    debug_assert!(!dot.is_zero(), "the reference point is interior");
    if dot.is_positive() {
        n
    } else {
        (-n.0, -n.1)
    }
}

fn betti_of_bounded_part(num_vertices: usize, edges: &[TropEdge]) -> usize {
    if num_vertices == 0 {
        return 0;
    }
    let mut parent: Vec<usize> = (0..num_vertices).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut bounded_edges = 0usize;
    for e in edges {
        if let TropEdgeKind::Segment { from, to } = e.kind {
            bounded_edges += 1;
            let (a, b) = (find(&mut parent, from), find(&mut parent, to));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let components = (0..num_vertices)
        .filter(|&v| find(&mut parent, v) == v)
        .count();
    bounded_edges + components - num_vertices
}

impl Tropicalization {
    /// All cells of the curve: vertices first, then edges.
    pub fn cells(&self) -> Vec<CurveCell> {
        let mut out: Vec<CurveCell> =
            (0..self.curve.vertices.len()).map(CurveCell::Vertex).collect();
        out.extend((0..self.curve.edges.len()).map(CurveCell::Edge));
        out
    }

    pub fn cell_dimension(&self, cell: CurveCell) -> usize {
        match cell {
            CurveCell::Vertex(_) => 0,
            CurveCell::Edge(_) => 1,
        }
    }

    pub fn cell_is_bounded(&self, cell: CurveCell) -> bool {
        match cell {
            CurveCell::Vertex(_) => true,
            CurveCell::Edge(e) => {
                matches!(self.curve.edges[e].kind, TropEdgeKind::Segment { .. })
            }
        }
    }

    /// The dual lattice polygon of a vertex.
    pub fn dual_cell_polygon(&self, vertex: usize) -> Result<LatticePolygon, TropError> {
        Ok(LatticePolygon::new(self.subdivision.cells[vertex].polygon.clone())?)
    }

    /// The class of the stratum sitting over a cell of the curve: a curve
    /// minus its punctures for vertices, a finite set of reduced points for
    /// edges.
    pub fn stratum_class(&self, cell: CurveCell) -> Result<MotivicClass, TropError> {
        match cell {
            CurveCell::Vertex(v) => {
                let counts = self.dual_cell_polygon(v)?.lattice_counts();
                let genus = counts.interior as usize;
                let punctures = BigInt::from(counts.boundary);
                Ok(MotivicClass::smooth_proper_curve(genus)
                    - MotivicClass::constant(punctures))
            }
            CurveCell::Edge(e) => {
                Ok(MotivicClass::constant(self.curve.edges[e].weight))
            }
        }
    }

    /// The class of the initial degeneration over a cell: equal to the
    /// stratum class for vertices, and a torus bundle over the stratum for
    /// edges (the dual lattice length times the torus class).
    pub fn initial_class(&self, cell: CurveCell) -> Result<MotivicClass, TropError> {
        match cell {
            CurveCell::Vertex(_) => self.stratum_class(cell),
            CurveCell::Edge(_) => {
                Ok(self.stratum_class(cell)? * MotivicClass::torus(1))
            }
        }
    }

    /// The schoen non-degeneracy report for the defining polynomial.
    pub fn schoen_report(&self) -> SchoenReport {
        schoen::schoen_report(self)
    }

    fn gate_schoen(&self, assume_schoen: bool) -> Result<(), TropError> {
        if assume_schoen {
            return Ok(());
        }
        let report = self.schoen_report();
        match report.status {
            SchoenStatus::Pass | SchoenStatus::ConditionalPass => Ok(()),
            status => Err(TropError::SchoenRefused {
                status,
                detail: report.notes.join("; "),
            }),
        }
    }

    /// The class of the curve's points in the Theta-algebra: the sum over
    /// cells of `Theta(stratum, 1 - dim) * Theta(open cell, dim)`.
    pub fn vf_class(&self, assume_schoen: bool) -> Result<VFClass, TropError> {
        self.gate_schoen(assume_schoen)?;
        let mut out = VFClass::zero();
        for cell in self.cells() {
            let stratum = self.stratum_class(cell)?;
            let dim = self.cell_dimension(cell);
            let var = VFClass::theta_var(stratum, 1 - dim)?;
            let poly_cell = match cell {
                CurveCell::Vertex(_) => Cell::closed(QPolyhedron::full_space(0)),
                CurveCell::Edge(e) => self.edge_interval_cell(e)?,
            };
            let poly = VFClass::theta_poly(poly_cell, dim)?;
            out = out.add(&var.mul(&poly));
        }
        Ok(out)
    }

    /// The relatively open 1-cell of an edge, re-embedded on the line: a
    /// bounded edge of primitive length `lambda` becomes `(0, lambda)`, a ray
    /// becomes `(0, +inf)`, a degenerate line the whole line.
    fn edge_interval_cell(&self, e: usize) -> Result<Cell, TropError> {
        let edge = &self.curve.edges[e];
        match &edge.kind {
            TropEdgeKind::Segment { from, to } => {
                let lambda = self.primitive_length(*from, *to);
                let support = QPolyhedron::interval(BigRational::zero(), lambda);
                Ok(Cell::open(support)?)
            }
            TropEdgeKind::Ray { .. } => {
                let support = QPolyhedron::ray_from(BigRational::zero());
                Ok(Cell::open(support)?)
            }
            TropEdgeKind::Line { .. } => Ok(Cell::closed(QPolyhedron::full_space(1))),
        }
    }

    /// Rational length of a bounded edge in units of its primitive direction.
    fn primitive_length(&self, from: usize, to: usize) -> BigRational {
        let a = &self.curve.vertices[from];
        let b = &self.curve.vertices[to];
        let dx = &b.0 - &a.0;
        let dy = &b.1 - &a.1;
        let dir = self.primitive_edge_direction(from, to);
        if dir.0 != 0 {
            dx / BigRational::from(BigInt::from(dir.0))
        } else {
            dy / BigRational::from(BigInt::from(dir.1))
        }
    }

    /// Primitive integer direction of a bounded edge, from one vertex toward
    /// the other.
    pub fn primitive_edge_direction(&self, from: usize, to: usize) -> (i64, i64) {
        let a = &self.curve.vertices[from];
        let b = &self.curve.vertices[to];
        let dx = &b.0 - &a.0;
        let dy = &b.1 - &a.1;
        primitive_of_rational(&dx, &dy)
    }

    /// The motivic volume of the curve's points: the alternating sum of
    /// initial degeneration classes over bounded cells, with full lines (the
    /// degenerate case) entering positively because their `chi_prime` is 1.
    pub fn motivic_volume(&self, assume_schoen: bool) -> Result<MotivicClass, TropError> {
        self.gate_schoen(assume_schoen)?;
        let mut out = MotivicClass::zero();
        for cell in self.cells() {
            let is_line = matches!(
                cell,
                CurveCell::Edge(e)
                    if matches!(self.curve.edges[e].kind, TropEdgeKind::Line { .. })
            );
            if is_line {
                out = out + self.initial_class(cell)?;
                continue;
            }
            if !self.cell_is_bounded(cell) {
                continue;
            }
            let contribution = self.initial_class(cell)?;
            out = if self.cell_dimension(cell) % 2 == 0 {
                out + contribution
            } else {
                out - contribution
            };
        }
        Ok(out)
    }

    /// Weighted primitive directions of the edges leaving a vertex.
    pub fn directions_at_vertex(&self, v: usize) -> Vec<((i64, i64), i64)> {
        let mut out = Vec::new();
        for e in &self.curve.edges {
            match &e.kind {
                TropEdgeKind::Segment { from, to } if *from == v => {
                    out.push((self.primitive_edge_direction(*from, *to), e.weight));
                }
                TropEdgeKind::Segment { from, to } if *to == v => {
                    out.push((self.primitive_edge_direction(*to, *from), e.weight));
                }
                TropEdgeKind::Ray { from, direction } if *from == v => {
                    out.push((*direction, e.weight));
                }
                _ => {}
            }
        }
        out
    }

    /// Balancing: the weighted primitive directions around every vertex sum
    /// to zero.
    pub fn is_balanced(&self) -> bool {
        (0..self.curve.vertices.len()).all(|v| {
            let (mut sx, mut sy) = (0i64, 0i64);
            for ((dx, dy), w) in self.directions_at_vertex(v) {
                sx += w * dx;
                sy += w * dy;
            }
            sx == 0 && sy == 0
        })
    }

    /// Mikhalkin vertex multiplicity of a trivalent vertex: the absolute
    /// determinant of two of its weighted primitive directions (the choice
    /// does not matter, by balancing).
    pub fn vertex_multiplicity(&self, v: usize) -> Result<i64, TropError> {
        multiplicity::vertex_multiplicity(self, v)
    }

    /// Product of vertex multiplicities of a simple curve.
    pub fn mikhalkin_multiplicity(&self) -> Result<BigInt, TropError> {
        multiplicity::mikhalkin_multiplicity(self)
    }

    /// Product of quantum vertex multiplicities of a simple curve, a Laurent
    /// polynomial in a half power of `y` specializing to the Mikhalkin
    /// multiplicity at `y = 1`.
    pub fn bg_multiplicity(&self) -> Result<crate::motivic::LaurentY, TropError> {
        multiplicity::bg_multiplicity(self)
    }
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction.
fn primitive_of_rational(dx: &BigRational, dy: &BigRational) -> (i64, i64) {
    use num_integer::Integer;
    let lcm = dx.denom().lcm(dy.denom());
    let ix = (dx * BigRational::from(lcm.clone())).to_integer();
    let iy = (dy * BigRational::from(lcm)).to_integer();
    let g = ix.gcd(&iy);
    debug_assert!(!g.is_zero(), "edges have distinct endpoints");
    let px: BigInt = &ix / &g;
    let py: BigInt = &iy / &g;
    (
        i64::try_from(&px).expect("primitive directions are small"),
        i64::try_from(&py).expect("primitive directions are small"),
    )
}
