//! Regular subdivisions of lifted plane supports.
//!
//! Given finitely many lattice points `m` with rational weights `w`, the
//! lower convex hull of the lifted points `(m, w)` in 3-space projects to a
//! polygonal subdivision of the convex hull of the `m`. Each maximal cell
//! carries the affine function `w = g . m + c` supporting its lower face; the
//! corresponding dual (tropical) vertex sits at `-g`, where the minimum
//! `min_m (w_m + m . x)` is attained by every point of the cell.
//!
//! Ties are kept: a non-generic lift producing a quadrilateral (or larger)
//! lower face yields a polygonal cell, not a perturbed triangulation. A
//! support whose points are all collinear is flagged degenerate and still
//! produces the 1-dimensional subdivision of the segment; its cells are dual
//! to full lines in the plane.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use crate::lattice::{self, LatticePoint, LatticePolygon};
use crate::linalg;

/// A lattice exponent with the valuation of its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPoint {
    pub m: LatticePoint,
    pub w: BigRational,
}

/// Errors from subdivision construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubdivisionError {
    TooFewPoints { got: usize },
    DuplicateExponent { m: LatticePoint },
}

impl fmt::Display for SubdivisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubdivisionError::TooFewPoints { got } => {
                write!(f, "a subdivision needs at least 2 distinct points, got {got}")
            }
            SubdivisionError::DuplicateExponent { m } => {
                write!(f, "duplicate exponent ({}, {})", m.0, m.1)
            }
        }
    }
}

impl core::error::Error for SubdivisionError {}

/// The supporting affine function `w = g . m + c` of a lower face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPlane {
    pub gradient: (BigRational, BigRational),
    pub offset: BigRational,
}

impl SupportPlane {
    fn eval(&self, m: LatticePoint) -> BigRational {
        &self.gradient.0 * BigRational::from(BigInt::from(m.0))
            + &self.gradient.1 * BigRational::from(BigInt::from(m.1))
            + &self.offset
    }

    /// The dual position `-g` where all points of the face attain the
    /// minimum of `w_m + m . x`.
    pub fn dual_position(&self) -> (BigRational, BigRational) {
        (-self.gradient.0.clone(), -self.gradient.1.clone())
    }
}

/// A maximal cell of the subdivision. In the planar case the cell is a
/// lattice polygon; in the degenerate (collinear) case it is a segment and
/// `polygon` holds its two endpoints.
#[derive(Clone, Debug)]
pub struct SubdivCell {
    /// Indices into `Subdivision::points` of the lifted points on the face.
    pub support: Vec<usize>,
    /// Hull vertices of the cell, counterclockwise (two points for segments).
    pub polygon: Vec<LatticePoint>,
    pub plane: SupportPlane,
}

/// A 1-face of the lower hull in the planar case.
#[derive(Clone, Debug)]
pub struct SubdivEdge {
    /// Endpoints in lexicographic order.
    pub endpoints: (LatticePoint, LatticePoint),
    /// Indices of lifted points on the edge's lower face.
    pub support: Vec<usize>,
    /// Incident cell indices; boundary edges have exactly one.
    pub cells: (usize, Option<usize>),
    pub lattice_length: i64,
}

impl SubdivEdge {
    pub fn is_boundary(&self) -> bool {
        self.cells.1.is_none()
    }
}

/// A regular subdivision of the convex hull of a plane support.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub points: Vec<LiftedPoint>,
    pub cells: Vec<SubdivCell>,
    pub edges: Vec<SubdivEdge>,
    /// Set when the support is collinear; the subdivision is 1-dimensional.
    pub degenerate: bool,
}

/// Compute the regular subdivision induced by the lower hull of the lifted
/// points. Input order is irrelevant; the result is deterministic (cells and
/// edges sorted by their vertex lists).
pub fn regular_subdivision(points: &[LiftedPoint]) -> Result<Subdivision, SubdivisionError> {
    let mut seen: Vec<LatticePoint> = Vec::new();
    for p in points {
        if seen.contains(&p.m) {
            return Err(SubdivisionError::DuplicateExponent { m: p.m });
        }
        seen.push(p.m);
    }
    if points.len() < 2 {
        return Err(SubdivisionError::TooFewPoints { got: points.len() });
    }
    let mut pts: Vec<LiftedPoint> = points.to_vec();
    pts.sort_by_key(|p| p.m);

    if is_collinear(&pts) {
        collinear_subdivision(pts)
    } else {
        planar_subdivision(pts)
    }
}

fn is_collinear(pts: &[LiftedPoint]) -> bool {
    let a = pts[0].m;
    let Some(b) = pts.iter().map(|p| p.m).find(|&m| m != a) else {
        return true;
    };
    pts.iter().all(|p| {
        let m = p.m;
        ((b.0 - a.0) as i128) * ((m.1 - a.1) as i128)
            == ((b.1 - a.1) as i128) * ((m.0 - a.0) as i128)
    })
}

fn planar_subdivision(pts: Vec<LiftedPoint>) -> Result<Subdivision, SubdivisionError> {
    let n = pts.len();
    let mut faces: Vec<(Vec<usize>, SupportPlane)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some(plane) = plane_through(&pts[i], &pts[j], &pts[k]) else {
                    continue;
                };
                let mut lower = true;
                let mut support = Vec::new();
                for (idx, p) in pts.iter().enumerate() {
                    let lift = plane.eval(p.m);
                    if p.w < lift {
                        lower = false;
                        break;
                    }
                    if p.w == lift {
                        support.push(idx);
                    }
                }
                if lower && !faces.iter().any(|(s, _)| *s == support) {
                    faces.push((support, plane));
                }
            }
        }
    }

    let mut cells: Vec<SubdivCell> = faces
        .into_iter()
        .map(|(support, plane)| {
            let face_pts: Vec<LatticePoint> = support.iter().map(|&i| pts[i].m).collect();
            let polygon = LatticePolygon::hull(&face_pts)
                .expect("a lower facet spans two dimensions")
                .vertices()
                .to_vec();
            SubdivCell { support, polygon, plane }
        })
        .collect();
    cells.sort_by(|a, b| a.polygon.cmp(&b.polygon));

    // Collect 1-faces from the cell polygons.
    let mut edge_map: BTreeMap<(LatticePoint, LatticePoint), (Vec<usize>, Vec<usize>)> =
        BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let k = cell.polygon.len();
        for e in 0..k {
            let a = cell.polygon[e];
            let b = cell.polygon[(e + 1) % k];
            let key = if a <= b { (a, b) } else { (b, a) };
            let on_edge: Vec<usize> = cell
                .support
                .iter()
                .copied()
                .filter(|&i| on_segment(pts[i].m, key.0, key.1))
                .collect();
            let entry = edge_map.entry(key).or_insert_with(|| (on_edge.clone(), Vec::new()));
            debug_assert_eq!(entry.0, on_edge, "edge support must agree across cells");
            entry.1.push(ci);
        }
    }
    let edges: Vec<SubdivEdge> = edge_map
        .into_iter()
        .map(|((a, b), (support, cell_ids))| {
            debug_assert!(cell_ids.len() <= 2, "an edge bounds at most two cells");
            SubdivEdge {
                endpoints: (a, b),
                support,
                cells: (cell_ids[0], cell_ids.get(1).copied()),
                lattice_length: lattice::lattice_length(a, b),
            }
        })
        .collect();

    Ok(Subdivision { points: pts, cells, edges, degenerate: false })
}

fn plane_through(p: &LiftedPoint, q: &LiftedPoint, r: &LiftedPoint) -> Option<SupportPlane> {
    let row = |m: LatticePoint| {
        vec![
            BigRational::from(BigInt::from(m.0)),
            BigRational::from(BigInt::from(m.1)),
            BigRational::from(BigInt::from(1)),
        ]
    };
    let a = vec![row(p.m), row(q.m), row(r.m)];
    let b = vec![p.w.clone(), q.w.clone(), r.w.clone()];
    let sol = linalg::solve(&a, &b)?;
    let mut it = sol.into_iter();
    Some(SupportPlane {
        gradient: (it.next().unwrap(), it.next().unwrap()),
        offset: it.next().unwrap(),
    })
}

fn on_segment(m: LatticePoint, a: LatticePoint, b: LatticePoint) -> bool {
    let cross = ((b.0 - a.0) as i128) * ((m.1 - a.1) as i128)
        - ((b.1 - a.1) as i128) * ((m.0 - a.0) as i128);
    if cross != 0 {
        return false;
    }
    m.0 >= a.0.min(b.0) && m.0 <= a.0.max(b.0) && m.1 >= a.1.min(b.1) && m.1 <= a.1.max(b.1)
}

fn collinear_subdivision(pts: Vec<LiftedPoint>) -> Result<Subdivision, SubdivisionError> {
    // Parametrize the support line by primitive steps from its lex-smallest
    // point, then take the 1-dimensional lower hull of (t, w).
    let base = pts[0].m;
    let far = pts.iter().map(|p| p.m).max_by_key(|m| {
        ((m.0 - base.0) as i128).pow(2) + ((m.1 - base.1) as i128).pow(2)
    });
    let far = far.expect("nonempty support");
    debug_assert_ne!(far, base, "distinct points are guaranteed by validation");
    let dir = lattice::primitive_direction(base, far);
    let param = |m: LatticePoint| -> i64 {
        if dir.0 != 0 {
            (m.0 - base.0) / dir.0
        } else {
            (m.1 - base.1) / dir.1
        }
    };
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&i| param(pts[i].m));

    // Lower hull over (t, w) with strictly increasing slopes.
    let mut hull: Vec<usize> = Vec::new();
    for &i in &order {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let ta = BigRational::from(BigInt::from(param(pts[a].m)));
            let tb = BigRational::from(BigInt::from(param(pts[b].m)));
            let ti = BigRational::from(BigInt::from(param(pts[i].m)));
            // Keep b only if it lies strictly below the chord a -> i.
            let lhs = (&pts[b].w - &pts[a].w) * (&ti - &ta);
            let rhs = (&pts[i].w - &pts[a].w) * (&tb - &ta);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }

    let dir_sq = BigRational::from(BigInt::from(
        dir.0 as i128 * dir.0 as i128 + dir.1 as i128 * dir.1 as i128,
    ));
    let mut cells = Vec::new();
    for seg in hull.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let (ta, tb) = (param(pts[a].m), param(pts[b].m));
        let slope = (&pts[b].w - &pts[a].w)
            / BigRational::from(BigInt::from(tb - ta));
        // A gradient with g . dir = slope; the dual locus is the full line
        // { x : dir . x = -slope } through -g.
        let g = (
            &slope * BigRational::from(BigInt::from(dir.0)) / &dir_sq,
            &slope * BigRational::from(BigInt::from(dir.1)) / &dir_sq,
        );
        let offset = &pts[a].w - &g.0 * BigRational::from(BigInt::from(pts[a].m.0))
            - &g.1 * BigRational::from(BigInt::from(pts[a].m.1));
        let plane = SupportPlane { gradient: g, offset };
        let support: Vec<usize> = (0..pts.len())
            .filter(|&i| {
                param(pts[i].m) >= ta
                    && param(pts[i].m) <= tb
                    && pts[i].w == plane.eval(pts[i].m)
            })
            .collect();
        cells.push(SubdivCell {
            support,
            polygon: vec![pts[a].m.min(pts[b].m), pts[a].m.max(pts[b].m)],
            plane,
        });
    }
    cells.sort_by(|a, b| a.polygon.cmp(&b.polygon));
    Ok(Subdivision { points: pts, cells, edges: Vec::new(), degenerate: true })
}

impl Subdivision {
    /// The Newton polygon (hull of the support); `None` when degenerate.
    pub fn newton_polygon(&self) -> Option<LatticePolygon> {
        if self.degenerate {
            return None;
        }
        let pts: Vec<LatticePoint> = self.points.iter().map(|p| p.m).collect();
        LatticePolygon::hull(&pts).ok()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = (usize, &SubdivEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| !e.is_boundary())
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = (usize, &SubdivEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.is_boundary())
    }
}
