//! The formal Theta-class algebra of semialgebraic classes and the volume
//! homomorphism.
//!
//! A [`VFClass`] is a formal integer combination of products
//! `Theta(X, n) * Theta(Gamma, m)`, where the variety part `X` is recorded
//! through its two-variable class and the polyhedral part `Gamma` is a
//! rational cell. This is a free representation: no normal forms modulo the
//! deeper relations between Theta-classes are computed, and equality of
//! semialgebraic classes is only certified through [`vol`](VFClass::vol).
//!
//! Polyhedral parts are normalized to relatively open cells at construction:
//! a closed polyhedron splits into the relative interiors of its faces, which
//! is harmless (the class of a cell is additive under scissor decompositions)
//! and makes products and the volume evaluation entirely term-local.
//!
//! The volume of a term is
//! `coeff * var_part * chi_prime(cell) * (uv - 1)^poly_dim`,
//! extending the two defining rules: the volume of the tube around `X` is the
//! class of `X`, and the volume of the tropical preimage of a closed
//! `n`-dimensional polyhedron is `(uv - 1)^n`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::chi_prime_open_cell;
use crate::motivic::MotivicClass;
use crate::polyhedron::{Cell, PolyError, QPolyhedron};

/// Errors from Theta-class construction and evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VFError {
    /// The variety part violates `total_degree <= 2 * var_dim`.
    DimensionBound { degree: u32, var_dim: usize },
    /// The cell does not live in the ambient space named by the grading.
    AmbientMismatch { cell_dim: usize, grading: usize },
    /// Invalid stratified special fiber data.
    InvalidStrata(String),
    Poly(PolyError),
}

impl fmt::Display for VFError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VFError::DimensionBound { degree, var_dim } => write!(
                f,
                "variety class of total degree {degree} exceeds the bound 2 * {var_dim}"
            ),
            VFError::AmbientMismatch { cell_dim, grading } => {
                write!(f, "cell lives in R^{cell_dim} but the grading is {grading}")
            }
            VFError::InvalidStrata(msg) => write!(f, "invalid strata: {msg}"),
            VFError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for VFError {}

impl From<PolyError> for VFError {
    fn from(e: PolyError) -> Self {
        VFError::Poly(e)
    }
}

/// One summand `coeff * Theta(var_part, var_dim) * Theta(cell, poly_dim)`.
/// The cell is always relatively open (or an affine subspace, where open and
/// closed coincide); `poly_dim` is its ambient dimension.
#[derive(Clone, Debug)]
pub struct VFTerm {
    pub coeff: BigInt,
    pub var_part: MotivicClass,
    pub var_dim: usize,
    pub cell: Cell,
}

impl VFTerm {
    pub fn poly_dim(&self) -> usize {
        self.cell.ambient_dim()
    }
}

/// A formal integer combination of Theta-products.
#[derive(Clone, Debug, Default)]
pub struct VFClass {
    terms: Vec<VFTerm>,
}

impl VFClass {
    pub fn zero() -> Self {
        VFClass { terms: Vec::new() }
    }

    /// The class of a point: trivial variety and polyhedral parts.
    pub fn one() -> Self {
        VFClass {
            terms: alloc::vec![VFTerm {
                coeff: BigInt::one(),
                var_part: MotivicClass::one(),
                var_dim: 0,
                cell: Cell::closed(QPolyhedron::full_space(0)),
            }],
        }
    }

    pub fn terms(&self) -> &[VFTerm] {
        &self.terms
    }

    pub fn is_zero_representation(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Theta(X, n)` for a variety class `X` of dimension at most `n`. The
    /// stored class must satisfy the necessary degree bound
    /// `total_degree(X) <= 2n`.
    pub fn theta_var(class: MotivicClass, var_dim: usize) -> Result<Self, VFError> {
        if let Some(degree) = class.total_degree() {
            if degree as usize > 2 * var_dim {
                return Err(VFError::DimensionBound { degree, var_dim });
            }
        }
        if class.is_zero() {
            return Ok(VFClass::zero());
        }
        Ok(VFClass {
            terms: alloc::vec![VFTerm {
                coeff: BigInt::one(),
                var_part: class,
                var_dim,
                cell: Cell::closed(QPolyhedron::full_space(0)),
            }],
        })
    }

    /// `Theta(Gamma, n)` for a cell `Gamma` in `R^n`. A genuinely closed cell
    /// is decomposed into the relative interiors of its faces.
    pub fn theta_poly(cell: Cell, grading: usize) -> Result<Self, VFError> {
        if cell.ambient_dim() != grading {
            return Err(VFError::AmbientMismatch {
                cell_dim: cell.ambient_dim(),
                grading,
            });
        }
        let pieces = cell.open_pieces()?;
        Ok(VFClass {
            terms: pieces
                .into_iter()
                .map(|cell| VFTerm {
                    coeff: BigInt::one(),
                    var_part: MotivicClass::one(),
                    var_dim: 0,
                    cell,
                })
                .collect(),
        })
    }

    pub fn add(&self, other: &VFClass) -> VFClass {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        VFClass { terms }
    }

    pub fn neg(&self) -> VFClass {
        VFClass {
            terms: self
                .terms
                .iter()
                .map(|t| VFTerm { coeff: -t.coeff.clone(), ..t.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &VFClass) -> VFClass {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> VFClass {
        let k = k.into();
        if k.is_zero() {
            return VFClass::zero();
        }
        VFClass {
            terms: self
                .terms
                .iter()
                .map(|t| VFTerm { coeff: &t.coeff * &k, ..t.clone() })
                .collect(),
        }
    }

    /// Bilinear product: variety parts multiply (gradings add) and polyhedral
    /// parts take Cartesian products. All stored cells are relatively open,
    /// so the product of cells is again a single relatively open cell.
    pub fn mul(&self, other: &VFClass) -> VFClass {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let coeff = &a.coeff * &b.coeff;
                let var_part = a.var_part.clone() * b.var_part.clone();
                if var_part.is_zero() {
                    continue;
                }
                terms.push(VFTerm {
                    coeff,
                    var_part,
                    var_dim: a.var_dim + b.var_dim,
                    cell: a.cell.product(&b.cell),
                });
            }
        }
        VFClass { terms }
    }

    /// The volume homomorphism into variety classes.
    pub fn vol(&self) -> Result<MotivicClass, VFError> {
        let mut out = MotivicClass::zero();
        for t in &self.terms {
            let chi = chi_prime_open_cell(t.cell.support())?;
            if chi == 0 {
                continue;
            }
            let factor = MotivicClass::torus(t.poly_dim()) * MotivicClass::constant(chi);
            out = out + t.var_part.clone() * factor * MotivicClass::constant(t.coeff.clone());
        }
        Ok(out)
    }
}

/// The special fiber of a strictly semistable model, recorded through the
/// classes of its open strata. `components` is the number of irreducible
/// components, `rel_dim` the relative dimension `d`, and `strata` maps each
/// nonempty subset `J` (1-based, sorted) to the class of `E_J^o`; absent
/// subsets are empty strata.
#[derive(Clone, Debug)]
pub struct StratifiedSpecialFiber {
    components: usize,
    rel_dim: usize,
    strata: BTreeMap<Vec<usize>, MotivicClass>,
}

impl StratifiedSpecialFiber {
    pub fn new(
        components: usize,
        rel_dim: usize,
        strata: impl IntoIterator<Item = (Vec<usize>, MotivicClass)>,
    ) -> Result<Self, VFError> {
        let mut map = BTreeMap::new();
        for (mut j, class) in strata {
            j.sort_unstable();
            let before = j.len();
            j.dedup();
            if j.len() != before {
                return Err(VFError::InvalidStrata(String::from(
                    "subset J contains a repeated index",
                )));
            }
            if j.is_empty() {
                return Err(VFError::InvalidStrata(String::from("subset J is empty")));
            }
            if j.iter().any(|&i| i == 0 || i > components) {
                return Err(VFError::InvalidStrata(alloc::format!(
                    "subset J = {j:?} has indices outside 1..={components}"
                )));
            }
            if j.len() > rel_dim + 1 {
                return Err(VFError::InvalidStrata(alloc::format!(
                    "subset J = {j:?} has {} elements but the relative dimension is {rel_dim}",
                    j.len()
                )));
            }
            if let Some(degree) = class.total_degree() {
                let bound = 2 * (rel_dim + 1 - j.len());
                if degree as usize > bound {
                    return Err(VFError::InvalidStrata(alloc::format!(
                        "stratum J = {j:?} has class of degree {degree}, bound is {bound}"
                    )));
                }
            }
            if class.is_zero() {
                continue;
            }
            if map.insert(j.clone(), class).is_some() {
                return Err(VFError::InvalidStrata(alloc::format!(
                    "subset J = {j:?} appears twice"
                )));
            }
        }
        Ok(StratifiedSpecialFiber { components, rel_dim, strata: map })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn rel_dim(&self) -> usize {
        self.rel_dim
    }

    pub fn strata(&self) -> impl Iterator<Item = (&Vec<usize>, &MotivicClass)> {
        self.strata.iter()
    }

    /// The class of the model's integral points: the alternating sum
    /// `sum_J (-1)^(|J|-1) Theta(E_J^o, d-|J|+1) * Theta(origin in R^(|J|-1), |J|-1)`.
    pub fn semistable_class(&self) -> Result<VFClass, VFError> {
        let mut out = VFClass::zero();
        for (j, class) in &self.strata {
            let size = j.len();
            let var = VFClass::theta_var(class.clone(), self.rel_dim + 1 - size)?;
            let origin: Vec<BigRational> = alloc::vec![BigRational::zero(); size - 1];
            let cell = Cell::closed(QPolyhedron::point(&origin));
            let poly = VFClass::theta_poly(cell, size - 1)?;
            let sign = if size % 2 == 1 { 1 } else { -1 };
            out = out.add(&var.mul(&poly).scale(sign));
        }
        Ok(out)
    }

    /// The closed-form volume `sum_J [E_J^o] (1 - L)^(|J|-1)`; agrees with
    /// `semistable_class().vol()`.
    pub fn semistable_volume(&self) -> MotivicClass {
        let one_minus_l = MotivicClass::one() - MotivicClass::lefschetz();
        let mut out = MotivicClass::zero();
        for (j, class) in &self.strata {
            out = out + class.clone() * one_minus_l.pow(j.len() - 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn gm_class() -> MotivicClass {
        MotivicClass::torus(1)
    }

    fn origin_cell() -> Cell {
        Cell::closed(QPolyhedron::point(&[rat_int(0)]))
    }

    #[test]
    fn theta_var_accepts_and_rejects_by_degree() {
        assert!(VFClass::theta_var(gm_class(), 1).is_ok());
        assert!(VFClass::theta_var(MotivicClass::one(), 0).is_ok());
        // Genus-1 curve class has degree 2 <= 2.
        assert!(VFClass::theta_var(MotivicClass::smooth_proper_curve(1), 1).is_ok());
        let err = VFClass::theta_var(MotivicClass::lefschetz(), 0).unwrap_err();
        assert_eq!(err, VFError::DimensionBound { degree: 2, var_dim: 0 });
    }

    #[test]
    fn theta_poly_counts_terms() {
        // A point cell gives one term.
        let t = VFClass::theta_poly(origin_cell(), 1).unwrap();
        assert_eq!(t.terms().len(), 1);
        // An open interval gives one term.
        let open = Cell::open(QPolyhedron::interval(rat_int(0), rat_int(1))).unwrap();
        let t = VFClass::theta_poly(open, 1).unwrap();
        assert_eq!(t.terms().len(), 1);
        // A closed interval decomposes into two endpoints and the interior.
        let closed = Cell::closed(QPolyhedron::interval(rat_int(0), rat_int(1)));
        let t = VFClass::theta_poly(closed, 1).unwrap();
        assert_eq!(t.terms().len(), 3);
        // Ambient mismatch is refused.
        let err = VFClass::theta_poly(origin_cell(), 2).unwrap_err();
        assert_eq!(err, VFError::AmbientMismatch { cell_dim: 1, grading: 2 });
    }

    #[test]
    fn vol_of_basic_relations() {
        // vol(Theta(Delta_0, 1)) = uv - 1 = vol(Theta(G_m, 1)).
        let lhs = VFClass::theta_poly(origin_cell(), 1).unwrap().vol().unwrap();
        let rhs = VFClass::theta_var(gm_class(), 1).unwrap().vol().unwrap();
        assert_eq!(lhs, gm_class());
        assert_eq!(lhs, rhs);

        // vol(Theta(pt,0) + Theta(R_{>0},1)) = 1 = vol(Theta(pt,1)).
        let pt0 = VFClass::theta_var(MotivicClass::one(), 0).unwrap();
        let open_ray = Cell::open(QPolyhedron::ray_from(rat_int(0))).unwrap();
        let ray = VFClass::theta_poly(open_ray, 1).unwrap();
        let disk = pt0.add(&ray);
        assert_eq!(disk.vol().unwrap(), MotivicClass::one());
        let pt1 = VFClass::theta_var(MotivicClass::one(), 1).unwrap();
        assert_eq!(pt1.vol().unwrap(), MotivicClass::one());
    }

    #[test]
    fn vol_of_closed_interval_is_torus() {
        // The closed interval [0, v(a)] maps to uv - 1.
        let seg = Cell::closed(QPolyhedron::interval(rat_int(0), rat_int(3)));
        let class = VFClass::theta_poly(seg, 1).unwrap();
        assert_eq!(class.vol().unwrap(), gm_class());
    }

    #[test]
    fn products_multiply_volumes() {
        let a = VFClass::theta_var(gm_class(), 1).unwrap();
        let open = Cell::open(QPolyhedron::interval(rat_int(0), rat_int(2))).unwrap();
        let b = VFClass::theta_poly(open, 1).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.terms().len(), 1);
        assert_eq!(prod.terms()[0].poly_dim(), 1);
        let vol_prod = prod.vol().unwrap();
        let expected = a.vol().unwrap() * b.vol().unwrap();
        assert_eq!(vol_prod, expected);
    }

    #[test]
    fn additive_identity() {
        let a = VFClass::theta_var(gm_class(), 1).unwrap();
        assert_eq!(a.add(&VFClass::zero()).vol().unwrap(), a.vol().unwrap());
        assert!(a.sub(&a).vol().unwrap().is_zero());
    }

    fn example_fiber() -> StratifiedSpecialFiber {
        StratifiedSpecialFiber::new(
            2,
            1,
            [
                (alloc::vec![1], gm_class()),
                (alloc::vec![2], gm_class()),
                (alloc::vec![1, 2], MotivicClass::one()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn semistable_two_lines() {
        let f = example_fiber();
        // [E_1^o] + [E_2^o] - (L - 1) = (L - 1).
        assert_eq!(f.semistable_volume(), gm_class());
        let class = f.semistable_class().unwrap();
        assert_eq!(class.vol().unwrap(), gm_class());
    }

    #[test]
    fn semistable_single_component() {
        let f = StratifiedSpecialFiber::new(
            1,
            2,
            [(alloc::vec![1], MotivicClass::projective_space(2))],
        )
        .unwrap();
        assert_eq!(f.semistable_volume(), MotivicClass::projective_space(2));
        let class = f.semistable_class().unwrap();
        assert_eq!(class.terms().len(), 1);
        assert_eq!(class.vol().unwrap(), MotivicClass::projective_space(2));
    }

    #[test]
    fn semistable_empty_strata() {
        let f = StratifiedSpecialFiber::new(3, 1, []).unwrap();
        assert!(f.semistable_volume().is_zero());
        assert!(f.semistable_class().unwrap().vol().unwrap().is_zero());
    }

    #[test]
    fn semistable_cycle_of_lines() {
        // A cycle of N projective lines: N torus strata and N point strata.
        let n = 5usize;
        let mut strata = Vec::new();
        for i in 1..=n {
            strata.push((alloc::vec![i], gm_class()));
            let next = if i == n { 1 } else { i + 1 };
            let mut pair = alloc::vec![i, next];
            pair.sort_unstable();
            strata.push((pair, MotivicClass::one()));
        }
        let f = StratifiedSpecialFiber::new(n, 1, strata).unwrap();
        assert!(f.semistable_volume().is_zero());
        assert!(f.semistable_class().unwrap().vol().unwrap().is_zero());
    }

    #[test]
    fn strata_validation() {
        let too_deep = StratifiedSpecialFiber::new(
            2,
            0,
            [(alloc::vec![1, 2], MotivicClass::one())],
        );
        assert!(matches!(too_deep, Err(VFError::InvalidStrata(_))));
        let bad_index = StratifiedSpecialFiber::new(
            1,
            1,
            [(alloc::vec![2], MotivicClass::one())],
        );
        assert!(matches!(bad_index, Err(VFError::InvalidStrata(_))));
        let bad_degree = StratifiedSpecialFiber::new(
            2,
            1,
            [(alloc::vec![1, 2], MotivicClass::lefschetz())],
        );
        assert!(matches!(bad_degree, Err(VFError::InvalidStrata(_))));
    }

    #[test]
    fn translation_invariance_of_vol() {
        let open = Cell::open(QPolyhedron::interval(rat_int(0), rat_int(1))).unwrap();
        let shifted = open.translate(&[crate::rat(7, 2)]);
        let a = VFClass::theta_poly(open, 1).unwrap();
        let b = VFClass::theta_poly(shifted, 1).unwrap();
        assert_eq!(a.vol().unwrap(), b.vol().unwrap());
    }
}
