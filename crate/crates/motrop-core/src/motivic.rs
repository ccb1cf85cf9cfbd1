//! Classes of varieties in their two-variable polynomial realization.
//!
//! A [`MotivicClass`] is an integer polynomial in two formal variables `u`, `v`
//! recording the Hodge-Deligne realization of a variety class. The class of
//! the affine line is `uv` ([`MotivicClass::lefschetz`]), the class of the
//! `n`-torus is `(uv - 1)^n`, and so on. Two specializations are provided:
//! `chi_y` (substitute `u -> y`, `v -> 1`, landing in Laurent polynomials in
//! `y^(1/2)`) and the Euler characteristic (evaluate at `u = v = 1`).
//!
//! [`LaurentY`] is the target ring of `chi_y`: Laurent polynomials in a
//! half-integer power of `y`, stored with exponents in units of one half so
//! that per-vertex refined multiplicity factors such as `y^(1/2) + y^(-1/2)`
//! are representable. Whether a value lies in the subring of integer powers
//! is detectable with [`LaurentY::is_integral`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An integer polynomial in `u`, `v`: a finite map from exponent pairs
/// `(i, j)` to nonzero coefficients. No zero coefficient is ever stored, so
/// equality is coefficient-wise.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MotivicClass {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl MotivicClass {
    /// The zero class.
    pub fn zero() -> Self {
        MotivicClass { terms: BTreeMap::new() }
    }

    /// The unit class (the class of a point).
    pub fn one() -> Self {
        MotivicClass::constant(BigInt::one())
    }

    /// A constant class.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = c.into();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        MotivicClass { terms }
    }

    /// The monomial `c * u^i * v^j`.
    pub fn monomial(i: u32, j: u32, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = c.into();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        MotivicClass { terms }
    }

    /// The class `uv` of the affine line.
    pub fn lefschetz() -> Self {
        MotivicClass::monomial(1, 1, 1)
    }

    /// The class `(uv - 1)^n` of the split `n`-torus.
    pub fn torus(n: usize) -> Self {
        let gm = MotivicClass::lefschetz() - MotivicClass::one();
        gm.pow(n)
    }

    /// The class `1 + uv + ... + (uv)^n` of `n`-dimensional projective space.
    pub fn projective_space(n: usize) -> Self {
        let mut out = MotivicClass::zero();
        for i in 0..=n {
            out = out + MotivicClass::monomial(i as u32, i as u32, 1);
        }
        out
    }

    /// The class `1 - g u - g v + uv` of a smooth proper curve of genus `g`.
    pub fn smooth_proper_curve(g: usize) -> Self {
        let g = BigInt::from(g);
        MotivicClass::one() + MotivicClass::lefschetz()
            - MotivicClass::monomial(1, 0, g.clone())
            - MotivicClass::monomial(0, 1, g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `u^i v^j` (zero if absent).
    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// Total degree in `(u, v)`, or `None` for the zero class.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Whether `terms(i, j) = terms(j, i)` for all exponent pairs. Geometric
    /// constructors produce symmetric classes and the ring operations
    /// preserve symmetry of symmetric inputs.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(i, j), c)| self.coeff(j, i) == *c)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = MotivicClass::one();
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    /// Substitute `u -> y`, `v -> 1`. This is a ring homomorphism and lands
    /// in integer powers of `y`.
    pub fn chi_y(&self) -> LaurentY {
        let mut out = LaurentY::zero();
        for (&(i, _), c) in &self.terms {
            out = out + LaurentY::monomial_half(2 * i as i64, c.clone());
        }
        out
    }

    /// Evaluate at `u = v = 1`; agrees with `chi_y` at `y = 1`.
    pub fn euler(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn insert_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Add for MotivicClass {
    type Output = MotivicClass;
    fn add(self, rhs: MotivicClass) -> MotivicClass {
        let mut out = self;
        for (key, c) in rhs.terms {
            out.insert_term(key, c);
        }
        out
    }
}

impl Sub for MotivicClass {
    type Output = MotivicClass;
    fn sub(self, rhs: MotivicClass) -> MotivicClass {
        self + (-rhs)
    }
}

impl Neg for MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        MotivicClass {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: MotivicClass) -> MotivicClass {
        let mut out = MotivicClass::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.insert_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Mul<BigInt> for MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: BigInt) -> MotivicClass {
        if rhs.is_zero() {
            return MotivicClass::zero();
        }
        MotivicClass {
            terms: self.terms.into_iter().map(|(k, c)| (k, c * &rhs)).collect(),
        }
    }
}

impl fmt::Display for MotivicClass {
    /// Human-readable rendering, e.g. `u^2*v^2 - 2*u*v + 1`. Terms are listed
    /// in descending lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let mono = monomial_string(i, j);
            write_term(f, &mut first, c, &mono)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotivicClass({self})")
    }
}

fn monomial_string(i: u32, j: u32) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    if i == 1 {
        s.push('u');
    } else if i > 1 {
        let _ = write!(s, "u^{i}");
    }
    if j >= 1 && !s.is_empty() {
        s.push('*');
    }
    if j == 1 {
        s.push('v');
    } else if j > 1 {
        let _ = write!(s, "v^{j}");
    }
    s
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &BigInt,
    mono: &str,
) -> fmt::Result {
    let abs = c.abs();
    if *first {
        if c.is_negative() {
            write!(f, "-")?;
        }
        *first = false;
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}

/// A Laurent polynomial in `y^(1/2)` with integer coefficients. Exponents are
/// stored in units of one half: the key `h` stands for `y^(h/2)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentY {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentY {
    pub fn zero() -> Self {
        LaurentY { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentY::monomial_half(0, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentY::monomial_half(0, c)
    }

    /// The monomial `c * y^(half_exp / 2)`.
    pub fn monomial_half(half_exp: i64, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = c.into();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        LaurentY { terms }
    }

    /// The monomial `c * y^e` for an integer exponent `e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        LaurentY::monomial_half(2 * e, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `y^(half_exp / 2)`.
    pub fn coeff_half(&self, half_exp: i64) -> BigInt {
        self.terms.get(&half_exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending half-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    /// Whether the value lies in the subring of integer powers of `y`.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|h| h % 2 == 0)
    }

    /// Evaluate at `y = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn insert_term(&mut self, half_exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(half_exp) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Add for LaurentY {
    type Output = LaurentY;
    fn add(self, rhs: LaurentY) -> LaurentY {
        let mut out = self;
        for (h, c) in rhs.terms {
            out.insert_term(h, c);
        }
        out
    }
}

impl Sub for LaurentY {
    type Output = LaurentY;
    fn sub(self, rhs: LaurentY) -> LaurentY {
        self + (-rhs)
    }
}

impl Neg for LaurentY {
    type Output = LaurentY;
    fn neg(self) -> LaurentY {
        LaurentY {
            terms: self.terms.into_iter().map(|(h, c)| (h, -c)).collect(),
        }
    }
}

impl Mul for LaurentY {
    type Output = LaurentY;
    fn mul(self, rhs: LaurentY) -> LaurentY {
        let mut out = LaurentY::zero();
        for (&h1, c1) in &self.terms {
            for (&h2, c2) in &rhs.terms {
                out.insert_term(h1 + h2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentY {
    /// Renders e.g. `y^-1 + 1 + y` or `y^(1/2) + y^(-1/2)`, ascending powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&h, c) in &self.terms {
            let mono = half_power_string(h);
            write_term(f, &mut first, c, &mono)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentY({self})")
    }
}

fn half_power_string(h: i64) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    if h == 0 {
        return s;
    }
    if h == 2 {
        s.push('y');
    } else if h % 2 == 0 {
        let _ = write!(s, "y^{}", h / 2);
    } else {
        let _ = write!(s, "y^({h}/2)");
    }
    s
}

/// Collects the lattice points `(i, j)` of a class's support; exposed for
/// deterministic serialization downstream.
pub fn support(c: &MotivicClass) -> Vec<(u32, u32)> {
    c.terms().map(|(&k, _)| k).collect()
}
