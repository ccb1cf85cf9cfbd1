//! Vertex multiplicities of simple tropical plane curves and their quantum
//! refinement.
//!
//! The multiplicity of a trivalent vertex is the absolute determinant of two
//! of its weighted primitive edge directions; balancing makes the choice of
//! pair irrelevant. The quantum refinement replaces each integer `m` by the
//! symmetric Laurent polynomial
//! `[m] = (y^(m/2) - y^(-m/2)) / (y^(1/2) - y^(-1/2))`,
//! which specializes to `m` at `y = 1`. Individual factors may live in half
//! powers of `y`; integrality is a property of the product and is only
//! asserted when it holds.

use alloc::format;

use num_bigint::BigInt;
use num_traits::One;

use crate::motivic::LaurentY;

use super::{TropError, Tropicalization};

/// The quantum integer `[m]`: `y^(-(m-1)/2) * (1 + y + ... + y^(m-1))`.
pub fn quantum_integer(m: i64) -> LaurentY {
    debug_assert!(m >= 1);
    let mut out = LaurentY::zero();
    for k in 0..m {
        out = out + LaurentY::monomial_half(2 * k - (m - 1), 1);
    }
    out
}

pub(super) fn vertex_multiplicity(t: &Tropicalization, v: usize) -> Result<i64, TropError> {
    let dirs = t.directions_at_vertex(v);
    if dirs.len() != 3 {
        return Err(TropError::NonTrivalentVertex { vertex: v, valence: dirs.len() });
    }
    let ((d1, w1), (d2, w2)) = (dirs[0], dirs[1]);
    let det = (w1 as i128 * d1.0 as i128) * (w2 as i128 * d2.1 as i128)
        - (w1 as i128 * d1.1 as i128) * (w2 as i128 * d2.0 as i128);
    debug_assert_ne!(det, 0, "trivalent tropical vertices span the plane");
    Ok(det.unsigned_abs() as i64)
}

fn require_simple(t: &Tropicalization) -> Result<(), TropError> {
    if t.curve.degenerate {
        return Err(TropError::NotSimple {
            detail: format!(
                "support is collinear; the dual subdivision has no 2-cells ({} segments)",
                t.subdivision.cells.len()
            ),
        });
    }
    for (i, cell) in t.subdivision.cells.iter().enumerate() {
        if cell.polygon.len() != 3 {
            return Err(TropError::NotSimple {
                detail: format!(
                    "dual cell {i} is a {}-gon; a simple curve needs a triangulation",
                    cell.polygon.len()
                ),
            });
        }
    }
    Ok(())
}

pub(super) fn mikhalkin_multiplicity(t: &Tropicalization) -> Result<BigInt, TropError> {
    require_simple(t)?;
    let mut out = BigInt::one();
    for v in 0..t.curve.vertices.len() {
        out *= BigInt::from(vertex_multiplicity(t, v)?);
    }
    Ok(out)
}

pub(super) fn bg_multiplicity(t: &Tropicalization) -> Result<LaurentY, TropError> {
    require_simple(t)?;
    let mut out = LaurentY::one();
    for v in 0..t.curve.vertices.len() {
        out = out * quantum_integer(vertex_multiplicity(t, v)?);
    }
    Ok(out)
}
