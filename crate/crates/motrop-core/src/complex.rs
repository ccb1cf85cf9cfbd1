//! Polyhedral cell complexes and the additive invariant `chi_prime`.
//!
//! `chi_prime` is the unique additive invariant on Boolean combinations of
//! rational polyhedra that assigns 1 to every closed polyhedron. On a
//! relatively open cell it evaluates to
//!
//! * `0` when the recession cone is strictly larger than its lineality space
//!   (the cell has an unbounded pointed part), and
//! * `(-1)^d` otherwise, where `d` is the cell dimension minus the lineality
//!   dimension.
//!
//! For pointed cells this reduces to the familiar rule: bounded open cells
//! contribute `(-1)^dim`, unbounded ones contribute 0. The lineality case is
//! forced by additivity: a full line decomposes as a point plus two open
//! rays, so its invariant must be 1. With this extension every closed
//! polyhedron evaluates to 1 through its face decomposition, whether or not
//! it has a vertex.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::polyhedron::{Cell, PolyError, QPolyhedron};

/// Errors from `chi_prime` and complex construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiError {
    /// Two input cells intersect as point sets.
    Overlap { first: usize, second: usize, detail: String },
    /// Propagated polyhedral failure (empty input or dimension cap).
    Poly(PolyError),
}

impl fmt::Display for ChiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiError::Overlap { first, second, detail } => {
                write!(f, "cells {first} and {second} overlap: {detail}")
            }
            ChiError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ChiError {}

impl From<PolyError> for ChiError {
    fn from(e: PolyError) -> Self {
        ChiError::Poly(e)
    }
}

/// `chi_prime` of a single relatively open cell.
pub fn chi_prime_open_cell(support: &QPolyhedron) -> Result<i64, PolyError> {
    if support.is_empty() {
        return Ok(0);
    }
    if support.has_unbounded_pointed_part() {
        return Ok(0);
    }
    let d = support.dimension()? - support.lineality_dim();
    Ok(if d % 2 == 0 { 1 } else { -1 })
}

/// `chi_prime` of a disjoint family of cells. Closed cells contribute through
/// their full face decomposition; relatively open cells contribute directly.
/// Pairwise disjointness of the input is verified exactly and violations are
/// reported with the offending cell indices.
pub fn chi_prime(cells: &[Cell]) -> Result<i64, ChiError> {
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if cells[i].intersects(&cells[j]) {
                return Err(ChiError::Overlap {
                    first: i,
                    second: j,
                    detail: cells[j].describe(),
                });
            }
        }
    }
    let mut total = 0i64;
    for cell in cells {
        for piece in cell.open_pieces()? {
            total += chi_prime_open_cell(piece.support())?;
        }
    }
    Ok(total)
}

/// A finite polyhedral complex: a list of closed cells that is closed under
/// taking faces and in which any two cells meet in a common face. Both
/// conditions are verified at construction.
#[derive(Clone, Debug)]
pub struct CellComplex {
    cells: Vec<QPolyhedron>,
    /// Pairs `(i, j)` such that `cells[i]` is a proper face of `cells[j]`.
    face_relation: Vec<(usize, usize)>,
}

/// Construction failures for [`CellComplex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    EmptyCell { index: usize },
    MissingFace { cell: usize },
    BadIntersection { first: usize, second: usize },
    Poly(PolyError),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::EmptyCell { index } => write!(f, "cell {index} is empty"),
            ComplexError::MissingFace { cell } => {
                write!(f, "a face of cell {cell} is not a cell of the complex")
            }
            ComplexError::BadIntersection { first, second } => {
                write!(f, "cells {first} and {second} do not meet in a common face")
            }
            ComplexError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ComplexError {}

impl From<PolyError> for ComplexError {
    fn from(e: PolyError) -> Self {
        ComplexError::Poly(e)
    }
}

impl CellComplex {
    pub fn new(cells: Vec<QPolyhedron>) -> Result<Self, ComplexError> {
        for (i, c) in cells.iter().enumerate() {
            if c.is_empty() {
                return Err(ComplexError::EmptyCell { index: i });
            }
        }
        let mut face_relation = Vec::new();
        let all_faces: Vec<Vec<QPolyhedron>> = cells
            .iter()
            .map(|c| c.faces())
            .collect::<Result<_, _>>()?;
        for (j, faces) in all_faces.iter().enumerate() {
            for face in faces {
                let Some(i) = cells.iter().position(|c| c.set_eq(face)) else {
                    return Err(ComplexError::MissingFace { cell: j });
                };
                if i != j {
                    face_relation.push((i, j));
                }
            }
        }
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let inter = cells[i].intersect(&cells[j])?;
                if inter.is_empty() {
                    continue;
                }
                let common = all_faces[i].iter().any(|f| f.set_eq(&inter))
                    && all_faces[j].iter().any(|f| f.set_eq(&inter));
                if !common {
                    return Err(ComplexError::BadIntersection { first: i, second: j });
                }
            }
        }
        face_relation.sort_unstable();
        face_relation.dedup();
        Ok(CellComplex { cells, face_relation })
    }

    pub fn cells(&self) -> &[QPolyhedron] {
        &self.cells
    }

    /// Proper-face pairs `(face, cell)`.
    pub fn face_relation(&self) -> &[(usize, usize)] {
        &self.face_relation
    }

    /// The relatively open cells of the complex; they partition the support.
    pub fn open_cells(&self) -> Vec<Cell> {
        self.cells
            .iter()
            .map(|c| Cell::open(c.clone()).expect("complex cells are nonempty"))
            .collect()
    }

    /// `chi_prime` of the support, computed on the open-cell partition.
    pub fn chi_prime(&self) -> Result<i64, ChiError> {
        chi_prime(&self.open_cells())
    }
}
