//! Exact arithmetic for motivic invariants of non-archimedean semialgebraic data.
//!
//! The crate is organized around five layers:
//!
//! * [`motivic`] — classes of varieties in their two-variable polynomial
//!   realization, with the `chi_y` and Euler specializations.
//! * [`polyhedron`], [`complex`], [`lattice`], [`subdivision`] — exact rational
//!   polyhedra, face enumeration, the additive invariant `chi_prime`, lattice
//!   polygons, and regular subdivisions of lifted plane supports.
//! * [`vf`] — the formal Theta-class algebra of semialgebraic classes, the
//!   volume homomorphism, and the strictly semistable model formulas.
//! * [`tropical`] — plane tropical curves, dual Newton subdivisions, initial
//!   degeneration classes, and refined vertex multiplicities.
//! * [`zeta`] — truncated motivic series, Hilbert zeta bookkeeping, and the
//!   extraction of refined invariants.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere. All values are immutable after
//! construction and all operations are pure functions, so they can be shared
//! and evaluated in parallel without coordination.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complex;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod motivic;
pub mod polyhedron;
pub mod subdivision;
pub mod tropical;
pub mod vf;
pub mod zeta;

pub use motivic::{LaurentY, MotivicClass};
pub use polyhedron::{Cell, QPolyhedron};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for building an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(num: i64) -> BigRational {
    BigRational::from(BigInt::from(num))
}
