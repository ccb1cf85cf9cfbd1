//! JSON schemas for every input and output object, with exact conversions to
//! and from the core types.
//!
//! Conventions: rationals are strings `"p/q"` in lowest terms with `q > 0`
//! (a bare integer `"p"` is accepted on input); big integers are decimal
//! strings; class polynomials are lists of `{i, j, c}` records in
//! lexicographic exponent order; Laurent polynomials are lists of
//! `{half_exp, c}` records in ascending order.

use motrop_core::lattice::LatticePoint;
use motrop_core::motivic::{LaurentY, MotivicClass};
use motrop_core::polyhedron::{Cell, Halfspace, QPolyhedron};
use motrop_core::subdivision::LiftedPoint;
use motrop_core::tropical::{PuiseuxPoly, PuiseuxTerm};
use motrop_core::vf::{StratifiedSpecialFiber, VFClass};
use motrop_core::zeta::MotivicSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Conversion failures. Parse- and shape-level problems map to exit status
/// 1; `Domain` wraps a core-level precondition rejection and maps to exit
/// status 2.
#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("field {field}: invalid rational {text:?} (expected \"p/q\" with q > 0)")]
    BadRational { field: String, text: String },
    #[error("field {field}: invalid integer {text:?}")]
    BadInteger { field: String, text: String },
    #[error("field {field}: {detail}")]
    Invalid { field: String, detail: String },
    #[error("field {field}: {detail}")]
    Domain { field: String, detail: String },
}

impl SchemaError {
    pub fn is_domain(&self) -> bool {
        matches!(self, SchemaError::Domain { .. })
    }
}

pub fn parse_rational(field: &str, text: &str) -> Result<BigRational, SchemaError> {
    let bad = || SchemaError::BadRational { field: field.to_string(), text: text.to_string() };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer = BigInt::from_str(num.trim()).map_err(|_| bad())?;
    let denom = BigInt::from_str(den.trim()).map_err(|_| bad())?;
    if denom.is_zero() || denom.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_bigint(field: &str, text: &str) -> Result<BigInt, SchemaError> {
    BigInt::from_str(text.trim()).map_err(|_| SchemaError::BadInteger {
        field: field.to_string(),
        text: text.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Motivic classes and Laurent polynomials.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassTermDoc {
    pub i: u32,
    pub j: u32,
    pub c: String,
}

pub type ClassDoc = Vec<ClassTermDoc>;

pub fn class_to_doc(class: &MotivicClass) -> ClassDoc {
    class
        .terms()
        .map(|(&(i, j), c)| ClassTermDoc { i, j, c: c.to_string() })
        .collect()
}

pub fn class_from_doc(field: &str, doc: &[ClassTermDoc]) -> Result<MotivicClass, SchemaError> {
    let mut out = MotivicClass::zero();
    for (k, term) in doc.iter().enumerate() {
        let c = parse_bigint(&format!("{field}[{k}].c"), &term.c)?;
        out = out + MotivicClass::monomial(term.i, term.j, c);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaurentTermDoc {
    pub half_exp: i64,
    pub c: String,
}

pub type LaurentDoc = Vec<LaurentTermDoc>;

pub fn laurent_to_doc(value: &LaurentY) -> LaurentDoc {
    value
        .terms()
        .map(|(&half_exp, c)| LaurentTermDoc { half_exp, c: c.to_string() })
        .collect()
}

// ---------------------------------------------------------------------------
// Polyhedra and cells.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IneqDoc {
    pub a: Vec<i64>,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyhedronDoc {
    pub dim: usize,
    pub ineqs: Vec<IneqDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDoc {
    pub dim: usize,
    pub ineqs: Vec<IneqDoc>,
    #[serde(default)]
    pub open: bool,
}

pub fn polyhedron_from_doc(field: &str, doc: &PolyhedronDoc) -> Result<QPolyhedron, SchemaError> {
    let mut rows = Vec::with_capacity(doc.ineqs.len());
    for (k, ineq) in doc.ineqs.iter().enumerate() {
        let c = parse_rational(&format!("{field}.ineqs[{k}].c"), &ineq.c)?;
        rows.push(Halfspace::new(ineq.a.clone(), c));
    }
    QPolyhedron::from_halfspaces(doc.dim, rows).map_err(|e| SchemaError::Domain {
        field: field.to_string(),
        detail: e.to_string(),
    })
}

pub fn cell_from_doc(field: &str, doc: &CellDoc) -> Result<Cell, SchemaError> {
    let poly = polyhedron_from_doc(
        field,
        &PolyhedronDoc { dim: doc.dim, ineqs: doc.ineqs.clone() },
    )?;
    if doc.open {
        Cell::open(poly).map_err(|e| SchemaError::Domain {
            field: field.to_string(),
            detail: e.to_string(),
        })
    } else {
        Ok(Cell::closed(poly))
    }
}

pub fn polyhedron_to_doc(poly: &QPolyhedron) -> PolyhedronDoc {
    PolyhedronDoc {
        dim: poly.ambient_dim(),
        ineqs: poly
            .halfspaces()
            .iter()
            .map(|h| IneqDoc {
                a: h.normal
                    .iter()
                    .map(|a| i64::try_from(a).expect("desk-scale normals fit in i64"))
                    .collect(),
                c: format_rational(&h.bound),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Tropical inputs.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PuiseuxTermDoc {
    pub m: [i64; 2],
    pub w: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lead: Option<[String; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PuiseuxPolyDoc {
    pub terms: Vec<PuiseuxTermDoc>,
}

pub fn puiseux_from_doc(doc: &PuiseuxPolyDoc) -> Result<PuiseuxPoly, SchemaError> {
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (k, t) in doc.terms.iter().enumerate() {
        let w = parse_rational(&format!("terms[{k}].w"), &t.w)?;
        let lead = match &t.lead {
            None => None,
            Some([re, im]) => Some((
                parse_rational(&format!("terms[{k}].lead[0]"), re)?,
                parse_rational(&format!("terms[{k}].lead[1]"), im)?,
            )),
        };
        terms.push(PuiseuxTerm { m: (t.m[0], t.m[1]), w, lead });
    }
    PuiseuxPoly::new(terms).map_err(|e| SchemaError::Domain {
        field: "terms".to_string(),
        detail: e.to_string(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportPointDoc {
    pub m: [i64; 2],
    pub w: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionInputDoc {
    pub support: Vec<SupportPointDoc>,
}

pub fn lifted_points_from_doc(doc: &SubdivisionInputDoc) -> Result<Vec<LiftedPoint>, SchemaError> {
    doc.support
        .iter()
        .enumerate()
        .map(|(k, p)| {
            Ok(LiftedPoint {
                m: (p.m[0], p.m[1]),
                w: parse_rational(&format!("support[{k}].w"), &p.w)?,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Stratified special fibers.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumDoc {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub class: ClassDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrataDoc {
    pub d: usize,
    pub components: usize,
    pub strata: Vec<StratumDoc>,
}

pub fn fiber_from_doc(doc: &StrataDoc) -> Result<StratifiedSpecialFiber, SchemaError> {
    let mut strata = Vec::with_capacity(doc.strata.len());
    for (k, s) in doc.strata.iter().enumerate() {
        let class = class_from_doc(&format!("strata[{k}].class"), &s.class)?;
        strata.push((s.j.clone(), class));
    }
    StratifiedSpecialFiber::new(doc.components, doc.d, strata).map_err(|e| {
        SchemaError::Domain { field: "strata".to_string(), detail: e.to_string() }
    })
}

// ---------------------------------------------------------------------------
// Series.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub g: usize,
    #[serde(rename = "M")]
    pub trunc: usize,
    pub coeffs: Vec<ClassDoc>,
}

pub fn series_from_doc(doc: &SeriesDoc) -> Result<(MotivicSeries, usize), SchemaError> {
    if doc.coeffs.len() != doc.trunc + 1 {
        return Err(SchemaError::Invalid {
            field: "coeffs".to_string(),
            detail: format!(
                "expected M + 1 = {} coefficients, got {}",
                doc.trunc + 1,
                doc.coeffs.len()
            ),
        });
    }
    let mut coeffs = Vec::with_capacity(doc.coeffs.len());
    for (k, c) in doc.coeffs.iter().enumerate() {
        coeffs.push(class_from_doc(&format!("coeffs[{k}]"), c)?);
    }
    let series = MotivicSeries::from_coeffs(coeffs).map_err(|e| SchemaError::Invalid {
        field: "coeffs".to_string(),
        detail: e.to_string(),
    })?;
    Ok((series, doc.g))
}

pub fn series_to_doc(series: &MotivicSeries, genus: usize) -> SeriesDoc {
    SeriesDoc {
        g: genus,
        trunc: series.truncation(),
        coeffs: series.coeffs().iter().map(class_to_doc).collect(),
    }
}

// ---------------------------------------------------------------------------
// Theta-class combinations.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VFTermDoc {
    pub coeff: String,
    pub var: ClassDoc,
    pub var_dim: usize,
    pub cell: CellDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VFClassDoc {
    pub terms: Vec<VFTermDoc>,
}

pub fn vf_from_doc(doc: &VFClassDoc) -> Result<VFClass, SchemaError> {
    let mut out = VFClass::zero();
    for (k, t) in doc.terms.iter().enumerate() {
        let coeff = parse_bigint(&format!("terms[{k}].coeff"), &t.coeff)?;
        let var = class_from_doc(&format!("terms[{k}].var"), &t.var)?;
        let cell = cell_from_doc(&format!("terms[{k}].cell"), &t.cell)?;
        let dim = cell.ambient_dim();
        let theta_v = VFClass::theta_var(var, t.var_dim).map_err(|e| SchemaError::Domain {
            field: format!("terms[{k}].var"),
            detail: e.to_string(),
        })?;
        let theta_p = VFClass::theta_poly(cell, dim).map_err(|e| SchemaError::Domain {
            field: format!("terms[{k}].cell"),
            detail: e.to_string(),
        })?;
        out = out.add(&theta_v.mul(&theta_p).scale(coeff));
    }
    Ok(out)
}

/// Convenience: a lattice point pair used in tropical output docs.
pub fn point_doc(p: LatticePoint) -> [i64; 2] {
    [p.0, p.1]
}
