//! Non-degeneracy report for tropicalized plane curves.
//!
//! The report has four outcomes:
//!
//! * `Pass` — purely combinatorial: every 2-cell of the dual subdivision is
//!   supported by exactly three lifted points (a trinomial whose Newton
//!   polygon is a triangle is smooth in the torus in characteristic zero)
//!   and every edge is supported by exactly two (binomial initial forms are
//!   smooth). No coefficients are needed.
//! * `ConditionalPass` — leading coefficients were supplied and every
//!   non-combinatorial initial form passed an exact check: squarefreeness
//!   over the Gaussian rationals for edges, and torus-smoothness of the
//!   plane initial form (decided by a Groebner basis of the Jacobian ideal
//!   saturated at the coordinates) for 2-cells.
//! * `Fail` — an exact check found a genuinely degenerate initial form.
//! * `Unknown` — the combinatorial test is inconclusive and no coefficients
//!   were supplied. Callers may override.
//!
//! This is a report, not a gate; the volume operations refuse to proceed on
//! `Fail` or `Unknown` unless explicitly overridden.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{self, LatticePoint};

use super::Tropicalization;

/// Outcome of the non-degeneracy check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchoenStatus {
    Pass,
    ConditionalPass,
    Fail,
    Unknown,
}

/// The report: a status plus human-readable notes naming the cells that
/// decided it.
#[derive(Clone, Debug)]
pub struct SchoenReport {
    pub status: SchoenStatus,
    pub notes: Vec<String>,
}

pub(super) fn schoen_report(t: &Tropicalization) -> SchoenReport {
    let mut inconclusive: Vec<String> = Vec::new();

    // Combinatorial pass: trinomial triangle cells and binomial edges.
    if t.curve.degenerate {
        for (i, cell) in t.subdivision.cells.iter().enumerate() {
            if cell.support.len() != 2 {
                inconclusive.push(format!(
                    "segment cell {i} carries {} supported points",
                    cell.support.len()
                ));
            }
        }
    } else {
        for (i, cell) in t.subdivision.cells.iter().enumerate() {
            if cell.support.len() != 3 {
                inconclusive.push(format!(
                    "cell {i} carries {} supported points",
                    cell.support.len()
                ));
            }
        }
        for (j, edge) in t.subdivision.edges.iter().enumerate() {
            if edge.support.len() != 2 {
                inconclusive.push(format!(
                    "edge {j} carries {} supported points",
                    edge.support.len()
                ));
            }
        }
    }
    if inconclusive.is_empty() {
        return SchoenReport {
            status: SchoenStatus::Pass,
            notes: vec![String::from(
                "all cells are trinomial triangles and all edges are binomial",
            )],
        };
    }
    if !t.poly.has_all_leads() {
        inconclusive.push(String::from("no leading coefficients supplied"));
        return SchoenReport { status: SchoenStatus::Unknown, notes: inconclusive };
    }

    // Exact pass on the supplied leading coefficients.
    let mut notes = Vec::new();
    if t.curve.degenerate {
        for (i, cell) in t.subdivision.cells.iter().enumerate() {
            if cell.support.len() == 2 {
                continue;
            }
            let g = segment_initial_form(t, &cell.support, cell.polygon[0], cell.polygon[1]);
            if !is_squarefree(&g) {
                return SchoenReport {
                    status: SchoenStatus::Fail,
                    notes: vec![format!("initial form of segment cell {i} is not squarefree")],
                };
            }
            notes.push(format!("segment cell {i}: squarefree"));
        }
    } else {
        for (j, edge) in t.subdivision.edges.iter().enumerate() {
            if edge.support.len() == 2 {
                continue;
            }
            let g = segment_initial_form(t, &edge.support, edge.endpoints.0, edge.endpoints.1);
            if !is_squarefree(&g) {
                return SchoenReport {
                    status: SchoenStatus::Fail,
                    notes: vec![format!("initial form of edge {j} is not squarefree")],
                };
            }
            notes.push(format!("edge {j}: squarefree"));
        }
        for (i, cell) in t.subdivision.cells.iter().enumerate() {
            if cell.support.len() == 3 {
                continue;
            }
            if !cell_initial_form_smooth(t, &cell.support) {
                return SchoenReport {
                    status: SchoenStatus::Fail,
                    notes: vec![format!("initial form of cell {i} is singular in the torus")],
                };
            }
            notes.push(format!("cell {i}: smooth in the torus"));
        }
    }
    SchoenReport { status: SchoenStatus::ConditionalPass, notes }
}

// ---------------------------------------------------------------------------
// Gaussian rational arithmetic.

/// An element of `Q(i)`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) struct GaussQ {
    re: BigRational,
    im: BigRational,
}

impl GaussQ {
    fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    fn zero() -> Self {
        GaussQ::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        GaussQ::new(BigRational::one(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &GaussQ) -> GaussQ {
        GaussQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn scale(&self, k: i64) -> GaussQ {
        let k = BigRational::from_integer(k.into());
        GaussQ::new(&self.re * &k, &self.im * &k)
    }

    fn inv(&self) -> GaussQ {
        debug_assert!(!self.is_zero());
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussQ::new(&self.re / &norm, -(&self.im / &norm))
    }

    fn div(&self, o: &GaussQ) -> GaussQ {
        self.mul(&o.inv())
    }
}

// ---------------------------------------------------------------------------
// Univariate squarefreeness over Q(i).

/// Dense univariate polynomial, ascending coefficients.
type UniPoly = Vec<GaussQ>;

fn uni_trim(p: &mut UniPoly) {
    while p.last().is_some_and(GaussQ::is_zero) {
        p.pop();
    }
}

fn uni_deg(p: &UniPoly) -> Option<usize> {
    if p.is_empty() { None } else { Some(p.len() - 1) }
}

fn uni_derivative(p: &UniPoly) -> UniPoly {
    let mut out: UniPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(k as i64))
        .collect();
    uni_trim(&mut out);
    out
}

fn uni_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    debug_assert!(!b.is_empty());
    let mut r = a.clone();
    uni_trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r.last().unwrap().div(lead);
        for k in 0..=db {
            let delta = factor.mul(&b[k]);
            r[dr - db + k] = r[dr - db + k].sub(&delta);
        }
        uni_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        let r = uni_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Exact squarefreeness over a characteristic-zero field: the gcd with the
/// derivative must be constant.
fn is_squarefree(p: &UniPoly) -> bool {
    let mut p = p.clone();
    uni_trim(&mut p);
    match uni_deg(&p) {
        None | Some(0) => true,
        Some(_) => {
            let d = uni_derivative(&p);
            let g = uni_gcd(&p, &d);
            uni_deg(&g) == Some(0)
        }
    }
}

/// The univariate restriction of the initial form along a segment: supported
/// leads placed at their primitive-step positions from the first endpoint.
fn segment_initial_form(
    t: &Tropicalization,
    support: &[usize],
    a: LatticePoint,
    b: LatticePoint,
) -> UniPoly {
    let dir = lattice::primitive_direction(a, b);
    let len = lattice::lattice_length(a, b) as usize;
    let mut g: UniPoly = vec![GaussQ::zero(); len + 1];
    for &p in support {
        let m = t.subdivision.points[p].m;
        let step = if dir.0 != 0 {
            (m.0 - a.0) / dir.0
        } else {
            (m.1 - a.1) / dir.1
        };
        let (re, im) = lead_of(t, m);
        g[step as usize] = GaussQ::new(re, im);
    }
    g
}

fn lead_of(t: &Tropicalization, m: LatticePoint) -> (BigRational, BigRational) {
    let term = t
        .poly
        .term_at(m)
        .expect("supported points come from the polynomial");
    let (re, im) = term
        .lead
        .clone()
        .expect("exact checks require leading coefficients");
    (re, im)
}

// ---------------------------------------------------------------------------
// Torus-smoothness of a plane initial form, by Groebner basis over Q(i).
//
// The initial form f of a 2-cell is smooth in the two-torus exactly when the
// ideal (f, x f_x, y f_y, x y t - 1) in Q(i)[x, y, t] is the unit ideal.

/// Monomial in (x, y, t).
type Mono = [u32; 3];

fn mono_total(m: &Mono) -> u64 {
    m.iter().map(|&e| e as u64).sum()
}

/// Graded reverse lexicographic comparison.
fn mono_cmp(a: &Mono, b: &Mono) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    match mono_total(a).cmp(&mono_total(b)) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for k in (0..3).rev() {
        match a[k].cmp(&b[k]) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    core::cmp::Ordering::Equal
}

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_div(a: &Mono, b: &Mono) -> Mono {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

/// Sparse polynomial over Q(i) in three variables.
#[derive(Clone, Debug)]
struct MPoly {
    terms: Vec<(Mono, GaussQ)>,
}

impl MPoly {
    fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    fn normalize(mut terms: BTreeMap<Mono, GaussQ>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let mut v: Vec<(Mono, GaussQ)> = terms.into_iter().collect();
        v.sort_by(|(a, _), (b, _)| mono_cmp(b, a));
        MPoly { terms: v }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Mono, GaussQ) {
        &self.terms[0]
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && mono_total(&self.terms[0].0) == 0
    }

    fn add_scaled(&self, other: &MPoly, mono: &Mono, coeff: &GaussQ) -> MPoly {
        let mut map: BTreeMap<Mono, GaussQ> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            let key = mono_mul(m, mono);
            let delta = c.mul(coeff);
            let entry = map.entry(key).or_insert_with(GaussQ::zero);
            *entry = entry.add(&delta);
        }
        MPoly::normalize(map)
    }
}

/// Full reduction of `f` modulo the basis.
fn normal_form(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rem_terms: BTreeMap<Mono, GaussQ> = BTreeMap::new();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = work.lead().clone();
        for g in basis {
            let (gm, gc) = g.lead();
            if mono_divides(gm, &lm) {
                let q = mono_div(&lm, gm);
                let factor = lc.div(gc);
                let neg = GaussQ::zero().sub(&factor);
                work = work.add_scaled(g, &q, &neg);
                continue 'outer;
            }
        }
        // Leading term is irreducible; move it to the remainder.
        let entry = rem_terms.entry(lm).or_insert_with(GaussQ::zero);
        *entry = entry.add(&lc);
        let neg = GaussQ::zero().sub(&lc);
        work = work.add_scaled(&MPoly { terms: vec![(lm, GaussQ::one())] }, &[0, 0, 0], &neg);
    }
    MPoly::normalize(rem_terms)
}

/// `S(f, g) = f * (lcm / lm(f)) / lc(f) - g * (lcm / lm(g)) / lc(g)`.
fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = mono_lcm(fm, gm);
    let left = MPoly::zero().add_scaled(f, &mono_div(&l, fm), &fc.inv());
    let right = MPoly::zero().add_scaled(g, &mono_div(&l, gm), &gc.inv());
    let neg_one = GaussQ::zero().sub(&GaussQ::one());
    left.add_scaled(&right, &[0, 0, 0], &neg_one)
}

/// Buchberger's algorithm, small-scale: returns true when the ideal is the
/// unit ideal.
fn ideal_is_unit(gens: Vec<MPoly>) -> bool {
    let mut basis: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if basis.iter().any(MPoly::is_constant) {
        return true;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fm, _) = basis[i].lead();
        let (gm, _) = basis[j].lead();
        // Buchberger's first criterion: coprime leading monomials reduce to
        // zero.
        if mono_lcm(fm, gm) == mono_mul(fm, gm) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return true;
        }
        let k = basis.len();
        for i in 0..k {
            pairs.push((i, k));
        }
        basis.push(r);
    }
    basis.iter().any(MPoly::is_constant)
}

/// Exact torus-smoothness of the initial form of a 2-cell.
fn cell_initial_form_smooth(t: &Tropicalization, support: &[usize]) -> bool {
    // Shift exponents into the positive quadrant; a monomial unit does not
    // change the vanishing locus in the torus.
    let min_x = support.iter().map(|&p| t.subdivision.points[p].m.0).min().unwrap();
    let min_y = support.iter().map(|&p| t.subdivision.points[p].m.1).min().unwrap();
    let mut f: BTreeMap<Mono, GaussQ> = BTreeMap::new();
    let mut xfx: BTreeMap<Mono, GaussQ> = BTreeMap::new();
    let mut yfy: BTreeMap<Mono, GaussQ> = BTreeMap::new();
    for &p in support {
        let m = t.subdivision.points[p].m;
        let key: Mono = [(m.0 - min_x) as u32, (m.1 - min_y) as u32, 0];
        let (re, im) = lead_of(t, m);
        let c = GaussQ::new(re, im);
        f.insert(key, c.clone());
        let cx = c.scale(m.0 - min_x);
        if !cx.is_zero() {
            xfx.insert(key, cx);
        }
        let cy = c.scale(m.1 - min_y);
        if !cy.is_zero() {
            yfy.insert(key, cy);
        }
    }
    let mut sat: BTreeMap<Mono, GaussQ> = BTreeMap::new();
    sat.insert([1, 1, 1], GaussQ::one());
    let neg_one = GaussQ::zero().sub(&GaussQ::one());
    sat.insert([0, 0, 0], neg_one);
    ideal_is_unit(vec![
        MPoly::normalize(f),
        MPoly::normalize(xfx),
        MPoly::normalize(yfy),
        MPoly::normalize(sat),
    ])
}
