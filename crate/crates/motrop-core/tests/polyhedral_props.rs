//! Property suite for the polyhedral layer: chi_prime on random polyhedra,
//! partition independence, boundedness against a vertex-enumeration oracle,
//! Pick's identity, and subdivision tiling.

use motrop_core::complex::{chi_prime, chi_prime_open_cell};
use motrop_core::lattice::LatticePolygon;
use motrop_core::polyhedron::{Cell, Halfspace, QPolyhedron};
use motrop_core::subdivision::{regular_subdivision, LiftedPoint};
use motrop_core::{rat, rat_int};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BigRational> {
    (0..dim).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=2))).collect()
}

/// A random nonempty polyhedron containing a chosen center; optionally boxed
/// to force boundedness, optionally given a componentwise lower bound to
/// force a pointed recession cone.
fn random_polyhedron(
    rng: &mut ChaCha8Rng,
    dim: usize,
    boxed: bool,
    pointed: bool,
) -> QPolyhedron {
    let center = random_point(rng, dim);
    let mut rows: Vec<Halfspace> = Vec::new();
    let extra = rng.gen_range(1..=3);
    for _ in 0..extra {
        let normal: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        if normal.iter().all(|&a| a == 0) {
            continue;
        }
        let at_center: BigRational = normal
            .iter()
            .zip(&center)
            .map(|(&a, x)| BigRational::from(BigInt::from(a)) * x)
            .sum();
        let slack = rat_int(rng.gen_range(0..=3));
        rows.push(Halfspace::new(normal, at_center + slack));
    }
    if boxed {
        for i in 0..dim {
            let mut plus = vec![0i64; dim];
            plus[i] = 1;
            let mut minus = vec![0i64; dim];
            minus[i] = -1;
            rows.push(Halfspace::new(plus, &center[i] + rat_int(rng.gen_range(1..=4))));
            rows.push(Halfspace::new(minus, -(&center[i] - rat_int(rng.gen_range(1..=4)))));
        }
    } else if pointed {
        for i in 0..dim {
            let mut minus = vec![0i64; dim];
            minus[i] = -1;
            rows.push(Halfspace::new(minus, -(&center[i] - rat_int(rng.gen_range(1..=4)))));
        }
    }
    QPolyhedron::from_halfspaces(dim, rows).unwrap()
}

#[test]
fn chi_prime_of_closed_polyhedra_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    // Bounded instances across dimensions 1..=3.
    for dim in 1..=3usize {
        let rounds = match dim {
            1 => 12,
            2 => 10,
            _ => 6,
        };
        for _ in 0..rounds {
            let p = random_polyhedron(&mut rng, dim, true, false);
            assert!(!p.is_empty());
            assert!(p.is_bounded());
            assert_eq!(chi_prime(&[Cell::closed(p)]).unwrap(), 1, "bounded dim {dim}");
            checked += 1;
        }
    }
    // Unbounded instances with a pointed recession cone (they have a vertex).
    for dim in 1..=3usize {
        let rounds = match dim {
            1 => 10,
            2 => 8,
            _ => 4,
        };
        for _ in 0..rounds {
            let p = random_polyhedron(&mut rng, dim, false, true);
            assert!(!p.is_empty());
            assert_eq!(chi_prime(&[Cell::closed(p)]).unwrap(), 1, "pointed dim {dim}");
            checked += 1;
        }
    }
    assert!(checked >= 50, "need at least 50 random instances, got {checked}");
}

#[test]
fn chi_prime_of_open_cells() {
    // chi'(R_{>0}) = 0.
    let open_ray = Cell::open(QPolyhedron::ray_from(rat_int(0))).unwrap();
    assert_eq!(chi_prime(&[open_ray]).unwrap(), 0);
    // Bounded open n-cell: (-1)^n.
    let boxes = [
        QPolyhedron::interval(rat_int(0), rat_int(2)),
        QPolyhedron::from_ints(
            2,
            &[
                (&[1, 0], rat_int(1)),
                (&[-1, 0], rat_int(0)),
                (&[0, 1], rat_int(1)),
                (&[0, -1], rat_int(0)),
            ],
        )
        .unwrap(),
        QPolyhedron::from_ints(
            3,
            &[
                (&[1, 0, 0], rat_int(1)),
                (&[-1, 0, 0], rat_int(0)),
                (&[0, 1, 0], rat_int(1)),
                (&[0, -1, 0], rat_int(0)),
                (&[0, 0, 1], rat_int(1)),
                (&[0, 0, -1], rat_int(0)),
            ],
        )
        .unwrap(),
    ];
    for (n, p) in boxes.into_iter().enumerate() {
        let expected = if (n + 1) % 2 == 0 { 1 } else { -1 };
        assert_eq!(chi_prime_open_cell(&p).unwrap(), expected);
    }
}

#[test]
fn chi_prime_partition_independence_on_intervals() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..12 {
        let len = rng.gen_range(2..=6);
        // Whole closed interval [0, len].
        let whole = Cell::closed(QPolyhedron::interval(rat_int(0), rat_int(len)));
        // Partition at integer cuts: closed left piece, then open pieces with
        // their right endpoints.
        let mut cells = Vec::new();
        let mut cuts: Vec<i64> = (1..len).filter(|_| rng.gen_bool(0.6)).collect();
        cuts.push(len);
        cells.push(Cell::closed(QPolyhedron::interval(rat_int(0), rat_int(cuts[0]))));
        let mut prev = cuts[0];
        for &cut in &cuts[1..] {
            cells.push(
                Cell::open(QPolyhedron::interval(rat_int(prev), rat_int(cut))).unwrap(),
            );
            cells.push(Cell::closed(QPolyhedron::point(&[rat_int(cut)])));
            prev = cut;
        }
        let fine = chi_prime(&cells).unwrap();
        let coarse = chi_prime(&[whole]).unwrap();
        assert_eq!(fine, coarse);
        assert_eq!(coarse, 1);
    }
}

#[test]
fn chi_prime_partition_independence_on_square() {
    // Unit square as one cell vs. two triangles glued along the diagonal.
    let square = QPolyhedron::from_ints(
        2,
        &[
            (&[1, 0], rat_int(1)),
            (&[-1, 0], rat_int(0)),
            (&[0, 1], rat_int(1)),
            (&[0, -1], rat_int(0)),
        ],
    )
    .unwrap();
    let lower = QPolyhedron::from_ints(
        2,
        &[
            (&[-1, 0], rat_int(0)),
            (&[0, -1], rat_int(0)),
            (&[1, 1], rat_int(1)),
        ],
    )
    .unwrap();
    let upper = QPolyhedron::from_ints(
        2,
        &[
            (&[1, 0], rat_int(1)),
            (&[0, 1], rat_int(1)),
            (&[-1, -1], rat_int(-1)),
        ],
    )
    .unwrap();
    let top_edge = QPolyhedron::from_ints(
        2,
        &[
            (&[1, 0], rat_int(1)),
            (&[-1, 0], rat_int(0)),
            (&[0, 1], rat_int(1)),
            (&[0, -1], rat_int(-1)),
        ],
    )
    .unwrap();
    let right_edge = QPolyhedron::from_ints(
        2,
        &[
            (&[0, 1], rat_int(1)),
            (&[0, -1], rat_int(0)),
            (&[1, 0], rat_int(1)),
            (&[-1, 0], rat_int(-1)),
        ],
    )
    .unwrap();
    let corner = QPolyhedron::point(&[rat_int(1), rat_int(1)]);
    let fine = chi_prime(&[
        Cell::closed(lower),
        Cell::open(upper).unwrap(),
        Cell::open(top_edge).unwrap(),
        Cell::open(right_edge).unwrap(),
        Cell::closed(corner),
    ])
    .unwrap();
    assert_eq!(fine, chi_prime(&[Cell::closed(square)]).unwrap());
    assert_eq!(fine, 1);
}

// ---------------------------------------------------------------------------
// Boundedness against a 2D vertex-enumeration oracle.

type QPoint = (BigRational, BigRational);

fn oracle_vertices(p: &QPolyhedron) -> Vec<QPoint> {
    let rows = p.halfspaces();
    let mut out: Vec<QPoint> = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, b) = (&rows[i], &rows[j]);
            let a0 = BigRational::from(a.normal[0].clone());
            let a1 = BigRational::from(a.normal[1].clone());
            let b0 = BigRational::from(b.normal[0].clone());
            let b1 = BigRational::from(b.normal[1].clone());
            let det = &a0 * &b1 - &a1 * &b0;
            if det.is_zero() {
                continue;
            }
            let x = (&a.bound * &b1 - &a1 * &b.bound) / &det;
            let y = (&a0 * &b.bound - &a.bound * &b0) / &det;
            if p.contains_point(&[x.clone(), y.clone()]) && !out.contains(&(x.clone(), y.clone())) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Convex hull of exact rational points in the plane.
fn rational_hull(points: &[QPoint]) -> Vec<QPoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &QPoint, a: &QPoint, b: &QPoint| -> BigRational {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<QPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Vertex-enumeration boundedness oracle for 2D polyhedra whose recession
/// cone is pointed: bounded exactly when the polyhedron equals the convex
/// hull of its vertices. Returns `None` when the polyhedron has no vertex
/// (then it is unbounded whenever nonempty).
fn oracle_is_bounded(p: &QPolyhedron) -> Option<bool> {
    if p.is_empty() {
        return Some(true);
    }
    let verts = oracle_vertices(p);
    if verts.is_empty() {
        return Some(false);
    }
    let hull = rational_hull(&verts);
    // Build an H-representation of the hull and compare as sets.
    let mut rows: Vec<Halfspace> = Vec::new();
    if hull.len() == 1 {
        return Some(p.set_eq(&QPolyhedron::point(&[hull[0].0.clone(), hull[0].1.clone()])));
    }
    if hull.len() == 2 {
        // A segment: equality of supporting line plus the two end bounds.
        let (a, b) = (&hull[0], &hull[1]);
        let dir = (&b.0 - &a.0, &b.1 - &a.1);
        let normal = (-dir.1.clone(), dir.0.clone());
        let scale = normal.0.denom().lcm(normal.1.denom());
        let n0 = (&normal.0 * BigRational::from(scale.clone())).to_integer();
        let n1 = (&normal.1 * BigRational::from(scale.clone())).to_integer();
        let level = BigRational::from(n0.clone()) * &a.0 + BigRational::from(n1.clone()) * &a.1;
        let seg = QPolyhedron::from_halfspaces(
            2,
            vec![
                Halfspace { normal: vec![n0.clone(), n1.clone()], bound: level.clone() },
                Halfspace { normal: vec![-n0, -n1], bound: -level },
                // Bounds along the direction.
                dir_bound(&dir, b, false),
                dir_bound(&dir, a, true),
            ],
        )
        .unwrap();
        return Some(p.set_eq(&seg));
    }
    let k = hull.len();
    for i in 0..k {
        let (a, b) = (&hull[i], &hull[(i + 1) % k]);
        // Outward normal of the ccw edge a -> b is (dy, -dx).
        let dir = (&b.0 - &a.0, &b.1 - &a.1);
        let normal = (dir.1.clone(), -dir.0.clone());
        let scale = normal.0.denom().lcm(normal.1.denom());
        let n0 = (&normal.0 * BigRational::from(scale.clone())).to_integer();
        let n1 = (&normal.1 * BigRational::from(scale)).to_integer();
        let level = BigRational::from(n0.clone()) * &a.0 + BigRational::from(n1.clone()) * &a.1;
        rows.push(Halfspace { normal: vec![n0, n1], bound: level });
    }
    let hull_poly = QPolyhedron::from_halfspaces(2, rows).unwrap();
    Some(p.set_eq(&hull_poly))
}

fn dir_bound(dir: &(BigRational, BigRational), at: &QPoint, lower: bool) -> Halfspace {
    let scale = dir.0.denom().lcm(dir.1.denom());
    let mut d0 = (&dir.0 * BigRational::from(scale.clone())).to_integer();
    let mut d1 = (&dir.1 * BigRational::from(scale)).to_integer();
    if lower {
        d0 = -d0;
        d1 = -d1;
    }
    let bound = BigRational::from(d0.clone()) * &at.0 + BigRational::from(d1.clone()) * &at.1;
    Halfspace { normal: vec![d0, d1], bound }
}

use num_integer::Integer;

#[test]
fn boundedness_of_diagonal_segment() {
    // x + y = 5, x >= 0, y >= 0: bounded by the vertex-enumeration oracle.
    let p = QPolyhedron::from_ints(
        2,
        &[
            (&[1, 1], rat_int(5)),
            (&[-1, -1], rat_int(-5)),
            (&[-1, 0], rat_int(0)),
            (&[0, -1], rat_int(0)),
        ],
    )
    .unwrap();
    assert_eq!(oracle_is_bounded(&p), Some(true));
    assert!(p.is_bounded());
}

#[test]
fn boundedness_matches_vertex_oracle_on_random_2d() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut agreements = 0;
    for round in 0..40 {
        let boxed = round % 2 == 0;
        let pointed = !boxed && round % 4 == 1;
        let p = random_polyhedron(&mut rng, 2, boxed, pointed);
        if p.is_empty() {
            continue;
        }
        let Some(expected) = oracle_is_bounded(&p) else {
            continue;
        };
        assert_eq!(p.is_bounded(), expected, "round {round}");
        agreements += 1;
    }
    assert!(agreements >= 30, "oracle applied to too few cases: {agreements}");
}

#[test]
fn picks_identity_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut built = 0;
    while built < 30 {
        let n = rng.gen_range(3..=7);
        let pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(-4..=4), rng.gen_range(-4..=4)))
            .collect();
        let Ok(poly) = LatticePolygon::hull(&pts) else {
            continue;
        };
        // lattice_counts asserts Pick's identity internally.
        let counts = poly.lattice_counts();
        assert!(counts.area.is_positive());
        built += 1;
    }
}

#[test]
fn subdivision_cells_tile_the_polygon() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut built = 0;
    while built < 25 {
        let n = rng.gen_range(4..=8);
        let mut pts: Vec<(i64, i64)> = Vec::new();
        for _ in 0..n {
            let m = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            if !pts.contains(&m) {
                pts.push(m);
            }
        }
        let lifted: Vec<LiftedPoint> = pts
            .iter()
            .map(|&m| LiftedPoint {
                m,
                w: rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
            })
            .collect();
        let Ok(s) = regular_subdivision(&lifted) else {
            continue;
        };
        if s.degenerate {
            continue;
        }
        let hull = s.newton_polygon().unwrap();
        let total: i128 = s
            .cells
            .iter()
            .map(|c| LatticePolygon::new(c.polygon.clone()).unwrap().twice_area())
            .sum();
        assert_eq!(total, hull.twice_area(), "areas must tile");
        // Every interior edge is shared by exactly two cells; every boundary
        // edge lies on the hull boundary.
        for e in &s.edges {
            match e.cells {
                (_, Some(_)) => {
                    let mid_on_boundary = on_polygon_boundary(&hull, e.endpoints);
                    assert!(!mid_on_boundary, "interior edge on the boundary");
                }
                (_, None) => {
                    assert!(on_polygon_boundary(&hull, e.endpoints), "boundary edge off the boundary");
                }
            }
        }
        built += 1;
    }
}

fn on_polygon_boundary(poly: &LatticePolygon, seg: ((i64, i64), (i64, i64))) -> bool {
    let verts = poly.vertices();
    let k = verts.len();
    (0..k).any(|i| {
        let a = verts[i];
        let b = verts[(i + 1) % k];
        collinear(a, b, seg.0) && collinear(a, b, seg.1) && within(a, b, seg.0) && within(a, b, seg.1)
    })
}

fn collinear(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    ((b.0 - a.0) as i128) * ((p.1 - a.1) as i128) == ((b.1 - a.1) as i128) * ((p.0 - a.0) as i128)
}

fn within(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}
