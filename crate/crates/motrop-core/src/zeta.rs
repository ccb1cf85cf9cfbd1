//! Truncated motivic series and refined curve-counting invariants.
//!
//! A [`MotivicSeries`] is a power series in one variable `q` with
//! [`MotivicClass`] coefficients, truncated at an explicit order `M`
//! (coefficients of `q^0 .. q^M` are stored; arithmetic between series of
//! different truncations truncates to the minimum). There are no lazy
//! streams: exactness and determinism over elegance.
//!
//! The refined invariants `N_i` of a Hilbert-type series `Z(q)` are defined
//! by the change of variables `s = q / ((1 - q)(1 - q L))` through
//!
//! ```text
//! q^(1-g) Z(q) = sum_i N_i s^(i+1-g),
//! ```
//!
//! equivalently `sum_i N_i s^i = Z(q) * ((1 - q)(1 - q L))^(1-g)`. Negative
//! powers of `s` never materialize: multiplying through by the denominator
//! keeps everything inside the ordinary power-series ring. Setting `q = 0`
//! shows `N_0` equals the constant coefficient of `Z`. The coefficients are
//! extracted iteratively, which is valid because `s^j = q^j (1 + O(q))`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::motivic::{LaurentY, MotivicClass};

/// Errors from series manipulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaError {
    /// The series has no coefficients at all.
    EmptySeries,
    /// The constant coefficient vanishes where a unit is required.
    ZeroConstantTerm,
    /// Inversion needs constant coefficient 1 or -1.
    NotInvertible,
}

impl fmt::Display for ZetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaError::EmptySeries => write!(f, "series has no coefficients"),
            ZetaError::ZeroConstantTerm => {
                write!(f, "constant coefficient must be nonzero")
            }
            ZetaError::NotInvertible => {
                write!(f, "series inversion requires constant coefficient 1 or -1")
            }
        }
    }
}

impl core::error::Error for ZetaError {}

/// A truncated power series in `q` with motivic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicSeries {
    coeffs: Vec<MotivicClass>,
}

impl MotivicSeries {
    /// The zero series truncated at order `trunc`.
    pub fn zero(trunc: usize) -> Self {
        MotivicSeries { coeffs: vec![MotivicClass::zero(); trunc + 1] }
    }

    /// The constant series 1.
    pub fn one(trunc: usize) -> Self {
        let mut s = MotivicSeries::zero(trunc);
        s.coeffs[0] = MotivicClass::one();
        s
    }

    /// Wrap explicit coefficients `q^0 .. q^M`.
    pub fn from_coeffs(coeffs: Vec<MotivicClass>) -> Result<Self, ZetaError> {
        if coeffs.is_empty() {
            return Err(ZetaError::EmptySeries);
        }
        Ok(MotivicSeries { coeffs })
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MotivicClass] {
        &self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> MotivicClass {
        self.coeffs.get(i).cloned().unwrap_or_else(MotivicClass::zero)
    }

    /// Restrict to a smaller truncation order.
    pub fn truncate(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(trunc + 1);
        while coeffs.len() < trunc + 1 {
            coeffs.push(MotivicClass::zero());
        }
        MotivicSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.truncation().min(other.truncation());
        let coeffs = (0..=trunc)
            .map(|i| self.coeff(i) + other.coeff(i))
            .collect();
        MotivicSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let trunc = self.truncation().min(other.truncation());
        let coeffs = (0..=trunc)
            .map(|i| self.coeff(i) - other.coeff(i))
            .collect();
        MotivicSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.truncation().min(other.truncation());
        let mut coeffs = vec![MotivicClass::zero(); trunc + 1];
        for i in 0..=trunc.min(self.truncation()) {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..=(trunc - i).min(other.truncation()) {
                let b = other.coeff(j);
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = core::mem::take(&mut coeffs[i + j]) + a.clone() * b;
            }
        }
        MotivicSeries { coeffs }
    }

    pub fn scale(&self, c: &MotivicClass) -> Self {
        MotivicSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Multiply by `q^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let trunc = self.truncation();
        let mut coeffs = vec![MotivicClass::zero(); trunc + 1];
        for i in 0..=trunc.saturating_sub(k) {
            coeffs[i + k] = self.coeff(i);
        }
        MotivicSeries { coeffs }
    }

    /// Multiplicative inverse; the constant coefficient must be 1 or -1.
    pub fn invert(&self) -> Result<Self, ZetaError> {
        let c0 = self.coeff(0);
        let unit = if c0.is_one() {
            BigInt::one()
        } else if (-c0.clone()).is_one() {
            -BigInt::one()
        } else {
            return Err(ZetaError::NotInvertible);
        };
        let trunc = self.truncation();
        let mut inv = vec![MotivicClass::zero(); trunc + 1];
        inv[0] = MotivicClass::constant(unit.clone());
        for n in 1..=trunc {
            let mut acc = MotivicClass::zero();
            for k in 1..=n {
                acc = acc + self.coeff(k) * inv[n - k].clone();
            }
            inv[n] = -(acc * MotivicClass::constant(unit.clone()));
        }
        Ok(MotivicSeries { coeffs: inv })
    }

    /// Whether all coefficients of index strictly greater than `d` vanish
    /// within the truncation.
    pub fn vanishes_beyond(&self, d: usize) -> bool {
        self.coeffs.iter().skip(d + 1).all(MotivicClass::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MotivicClass::is_zero)
    }
}

/// The denominator factor `(1 - q)(1 - q L)` truncated at `trunc`.
pub fn denominator(trunc: usize) -> MotivicSeries {
    let mut s = MotivicSeries::zero(trunc);
    s = s.add(&MotivicSeries::one(trunc));
    if trunc >= 1 {
        let mut c1 = MotivicSeries::zero(trunc);
        c1.coeffs[1] = -(MotivicClass::one() + MotivicClass::lefschetz());
        s = s.add(&c1);
    }
    if trunc >= 2 {
        let mut c2 = MotivicSeries::zero(trunc);
        c2.coeffs[2] = MotivicClass::lefschetz();
        s = s.add(&c2);
    }
    s
}

/// `1 / ((1 - q)(1 - q L))`: the coefficient of `q^n` is the class of
/// `n`-dimensional projective space.
pub fn denominator_inverse(trunc: usize) -> MotivicSeries {
    MotivicSeries {
        coeffs: (0..=trunc).map(MotivicClass::projective_space).collect(),
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// The zeta series of symmetric powers of a smooth proper curve of genus
/// `g`:
///
/// ```text
/// sum_n [Sym^n C] q^n = (1 - uq)^g (1 - vq)^g / ((1 - q)(1 - uv q)),
/// ```
///
/// truncated at `q^trunc`. Used as the desk oracle for smooth-curve input.
pub fn macdonald_curve_series(g: usize, trunc: usize) -> MotivicSeries {
    let mut numerator = MotivicSeries::zero(trunc);
    for i in 0..=g.min(trunc) {
        for j in 0..=g.min(trunc - i) {
            let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let c = binomial(g, i) * binomial(g, j) * sign;
            let class = MotivicClass::monomial(i as u32, j as u32, c);
            let mut term = MotivicSeries::zero(trunc);
            term.coeffs[i + j] = class;
            numerator = numerator.add(&term);
        }
    }
    numerator.mul(&denominator_inverse(trunc))
}

/// The truncated product `(1 - q)(1 - q L) Z(q)`. For the zeta series of a
/// smooth proper curve of genus `g` this is a polynomial of degree `2g`,
/// which callers can confirm with [`MotivicSeries::vanishes_beyond`].
pub fn kapranov_numerator(hilb: &MotivicSeries) -> MotivicSeries {
    hilb.mul(&denominator(hilb.truncation()))
}

/// The refined invariants of a family: the motivic coefficients `N_i`
/// together with their `chi_y` and Euler realizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedInvariants {
    genus: usize,
    motivic: Vec<MotivicClass>,
    chi: Vec<LaurentY>,
    euler: Vec<BigInt>,
}

impl RefinedInvariants {
    fn new(genus: usize, motivic: Vec<MotivicClass>) -> Self {
        let chi = motivic.iter().map(MotivicClass::chi_y).collect();
        let euler = motivic.iter().map(MotivicClass::euler).collect();
        RefinedInvariants { genus, motivic, chi, euler }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The classes `N_0 .. N_M`.
    pub fn motivic(&self) -> &[MotivicClass] {
        &self.motivic
    }

    /// `chi_y` realizations, index by index.
    pub fn chi(&self) -> &[LaurentY] {
        &self.chi
    }

    /// Euler realizations, index by index.
    pub fn euler(&self) -> &[BigInt] {
        &self.euler
    }
}

/// Extract the refined invariants `N_0 .. N_M` from a Hilbert-type series of
/// truncation `M` and arithmetic genus `g`. The constant coefficient must be
/// nonzero (it is the class of the base, and equals `N_0`).
pub fn refined_from_hilb(
    hilb: &MotivicSeries,
    genus: usize,
) -> Result<RefinedInvariants, ZetaError> {
    if hilb.coeff(0).is_zero() {
        return Err(ZetaError::ZeroConstantTerm);
    }
    let trunc = hilb.truncation();
    let den = denominator(trunc);
    let den_inv = denominator_inverse(trunc);

    // P = Z * ((1 - q)(1 - q L))^(1 - g) as an ordinary power series.
    let mut p = hilb.clone();
    if genus == 0 {
        p = p.mul(&den);
    } else {
        for _ in 1..genus {
            p = p.mul(&den_inv);
        }
    }

    let s = den_inv.shift(1);
    let mut remainder = p;
    let mut s_power = MotivicSeries::one(trunc);
    let mut motivic = Vec::with_capacity(trunc + 1);
    for i in 0..=trunc {
        if i > 0 {
            s_power = s_power.mul(&s);
        }
        let n_i = remainder.coeff(i);
        remainder = remainder.sub(&s_power.scale(&n_i));
        motivic.push(n_i);
    }
    Ok(RefinedInvariants::new(genus, motivic))
}

/// Rebuild the Hilbert-type series of truncation `trunc` from refined
/// invariants; exact inverse of [`refined_from_hilb`] up to truncation.
pub fn hilb_from_refined(
    invariants: &[MotivicClass],
    genus: usize,
    trunc: usize,
) -> MotivicSeries {
    let den = denominator(trunc);
    let den_inv = denominator_inverse(trunc);
    let s = den_inv.shift(1);
    let mut sum = MotivicSeries::zero(trunc);
    let mut s_power = MotivicSeries::one(trunc);
    for (i, n_i) in invariants.iter().enumerate() {
        if i > 0 {
            s_power = s_power.mul(&s);
        }
        if i > trunc {
            break;
        }
        sum = sum.add(&s_power.scale(n_i));
    }
    if genus == 0 {
        sum.mul(&den_inv)
    } else {
        let mut out = sum;
        for _ in 1..genus {
            out = out.mul(&den);
        }
        out
    }
}
