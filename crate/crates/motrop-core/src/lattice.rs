//! Lattice polygons in the plane and their exact point counts.
//!
//! Counting is by direct enumeration over the bounding box, which is all the
//! desk-scale inputs here need; the shoelace area and Pick's identity
//! `area = interior + boundary/2 - 1` are computed independently and
//! cross-checked on every call.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// An integer point in the plane.
pub type LatticePoint = (i64, i64);

/// Construction failures for [`LatticePolygon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    TooFewVertices { got: usize },
    NotConvex,
    CollinearVertices,
    DuplicateVertex,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::TooFewVertices { got } => {
                write!(f, "a lattice polygon needs at least 3 vertices, got {got}")
            }
            LatticeError::NotConvex => write!(f, "vertices are not in convex position"),
            LatticeError::CollinearVertices => {
                write!(f, "three consecutive vertices are collinear")
            }
            LatticeError::DuplicateVertex => write!(f, "duplicate vertex"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// A convex lattice polygon with vertices stored counterclockwise, starting
/// from the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// Exact lattice data of a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCounts {
    pub interior: u64,
    pub boundary: u64,
    pub area: BigRational,
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Number of lattice points on the open segment between two lattice points.
pub fn interior_lattice_points_on_segment(p: LatticePoint, q: LatticePoint) -> u64 {
    (gcd64(q.0 - p.0, q.1 - p.1) - 1).max(0) as u64
}

/// Lattice length of a segment: the number of primitive steps.
pub fn lattice_length(p: LatticePoint, q: LatticePoint) -> i64 {
    gcd64(q.0 - p.0, q.1 - p.1)
}

/// Primitive integer vector in the direction from `p` to `q`.
pub fn primitive_direction(p: LatticePoint, q: LatticePoint) -> (i64, i64) {
    let g = gcd64(q.0 - p.0, q.1 - p.1);
    debug_assert!(g > 0);
    ((q.0 - p.0) / g, (q.1 - p.1) / g)
}

impl LatticePolygon {
    /// Accepts vertices in either orientation, normalizes to a canonical
    /// counterclockwise order, and verifies strict convexity.
    pub fn new(mut vertices: Vec<LatticePoint>) -> Result<Self, LatticeError> {
        if vertices.len() < 3 {
            return Err(LatticeError::TooFewVertices { got: vertices.len() });
        }
        {
            let mut sorted = vertices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vertices.len() {
                return Err(LatticeError::DuplicateVertex);
            }
        }
        // Signed area decides orientation.
        let twice_area: i128 = {
            let n = vertices.len();
            (0..n)
                .map(|i| {
                    let p = vertices[i];
                    let q = vertices[(i + 1) % n];
                    (p.0 as i128) * (q.1 as i128) - (q.0 as i128) * (p.1 as i128)
                })
                .sum()
        };
        if twice_area == 0 {
            return Err(LatticeError::NotConvex);
        }
        if twice_area < 0 {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if c == 0 {
                return Err(LatticeError::CollinearVertices);
            }
            if c < 0 {
                return Err(LatticeError::NotConvex);
            }
        }
        // Canonical starting vertex.
        let start = (0..n)
            .min_by_key(|&i| vertices[i])
            .expect("nonempty vertex list");
        vertices.rotate_left(start);
        Ok(LatticePolygon { vertices })
    }

    /// Convex hull of a finite set of lattice points. Collinear input is
    /// rejected.
    pub fn hull(points: &[LatticePoint]) -> Result<Self, LatticeError> {
        let mut pts: Vec<LatticePoint> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 3 {
            return Err(LatticeError::TooFewVertices { got: pts.len() });
        }
        let hull = convex_hull(&pts);
        LatticePolygon::new(hull)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Twice the (positive) area, as an integer.
    pub fn twice_area(&self) -> i128 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % n];
                (p.0 as i128) * (q.1 as i128) - (q.0 as i128) * (p.1 as i128)
            })
            .sum()
    }

    /// Exact membership: `1` on the boundary, `2` in the interior, `0`
    /// outside.
    fn locate(&self, p: LatticePoint) -> u8 {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = cross(a, b, p);
            if c < 0 {
                return 0;
            }
            if c == 0 {
                // On the supporting line; inside the segment's bounding box?
                let in_x = p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0);
                let in_y = p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1);
                return if in_x && in_y { 1 } else { 0 };
            }
        }
        2
    }

    /// Interior and boundary lattice point counts plus the exact area,
    /// obtained by enumeration over the bounding box. Pick's identity is
    /// asserted on the result.
    pub fn lattice_counts(&self) -> LatticeCounts {
        let xs: Vec<i64> = self.vertices.iter().map(|v| v.0).collect();
        let ys: Vec<i64> = self.vertices.iter().map(|v| v.1).collect();
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let mut interior = 0u64;
        let mut boundary = 0u64;
        for x in x0..=x1 {
            for y in y0..=y1 {
                match self.locate((x, y)) {
                    1 => boundary += 1,
                    2 => interior += 1,
                    _ => {}
                }
            }
        }
        let area = BigRational::new(BigInt::from(self.twice_area()), BigInt::from(2));
        let pick = BigRational::new(
            BigInt::from(2 * interior as i128 + boundary as i128 - 2),
            BigInt::from(2),
        );
        assert_eq!(area, pick, "Pick's identity must hold for a lattice polygon");
        LatticeCounts { interior, boundary, area }
    }

    /// All lattice points of the polygon (boundary and interior), in
    /// lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let xs: Vec<i64> = self.vertices.iter().map(|v| v.0).collect();
        let ys: Vec<i64> = self.vertices.iter().map(|v| v.1).collect();
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.locate((x, y)) != 0 {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Andrew's monotone chain on sorted, deduplicated points; returns hull
/// vertices counterclockwise without collinear points.
pub fn convex_hull(sorted: &[LatticePoint]) -> Vec<LatticePoint> {
    let n = sorted.len();
    if n < 3 {
        return sorted.to_vec();
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in sorted {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn counts(vertices: &[LatticePoint]) -> LatticeCounts {
        LatticePolygon::new(vertices.to_vec()).unwrap().lattice_counts()
    }

    #[test]
    fn unit_triangle() {
        let c = counts(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!((c.interior, c.boundary), (0, 3));
        assert_eq!(c.area, rat(1, 2));
    }

    #[test]
    fn dilated_triangle() {
        // Newton polygon of degree-3 plane curves.
        let c = counts(&[(0, 0), (3, 0), (0, 3)]);
        assert_eq!((c.interior, c.boundary), (1, 9));
        assert_eq!(c.area, rat(9, 2));
    }

    #[test]
    fn unit_square() {
        let c = counts(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!((c.interior, c.boundary), (0, 4));
        assert_eq!(c.area, rat(1, 1));
    }

    #[test]
    fn orientation_is_normalized() {
        let cw = LatticePolygon::new(vec![(0, 1), (1, 0), (0, 0)]).unwrap();
        let ccw = LatticePolygon::new(vec![(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(cw, ccw);
        assert!(cw.twice_area() > 0);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(
            LatticePolygon::new(vec![(0, 0), (1, 1)]),
            Err(LatticeError::TooFewVertices { got: 2 })
        ));
        assert!(matches!(
            LatticePolygon::new(vec![(0, 0), (1, 1), (2, 2)]),
            Err(LatticeError::NotConvex)
        ));
        assert!(matches!(
            LatticePolygon::new(vec![(0, 0), (1, 0), (2, 0), (0, 1)]),
            Err(LatticeError::CollinearVertices)
        ));
        assert!(matches!(
            LatticePolygon::new(vec![(0, 0), (1, 0), (1, 0), (0, 1)]),
            Err(LatticeError::DuplicateVertex)
        ));
        // Non-convex quadrilateral.
        assert!(matches!(
            LatticePolygon::new(vec![(0, 0), (2, 0), (1, 1), (2, 2)]),
            Err(LatticeError::NotConvex)
        ));
    }

    #[test]
    fn hull_strips_interior_points() {
        let poly = LatticePolygon::hull(&[(0, 0), (3, 0), (0, 3), (1, 1), (2, 0)]).unwrap();
        assert_eq!(poly.vertices(), &[(0, 0), (3, 0), (0, 3)]);
    }

    #[test]
    fn segment_lattice_length() {
        assert_eq!(lattice_length((0, 0), (2, 2)), 2);
        assert_eq!(lattice_length((1, 1), (4, 3)), 1);
        assert_eq!(interior_lattice_points_on_segment((0, 0), (3, 0)), 2);
        assert_eq!(primitive_direction((0, 0), (4, 2)), (2, 1));
    }

    #[test]
    fn lattice_points_of_triangle() {
        let poly = LatticePolygon::new(vec![(0, 0), (2, 0), (0, 2)]).unwrap();
        let pts = poly.lattice_points();
        assert_eq!(pts.len(), 6);
    }
}
