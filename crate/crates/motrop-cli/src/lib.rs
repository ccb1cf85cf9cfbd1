//! Batch front-end over the core invariants: file schemas, structured output
//! documents, and the command implementations behind the `motrop` binary.
//!
//! Every command is deterministic: identical input bytes produce identical
//! output bytes, independent of the thread count. All results are small
//! exact objects, so each invocation emits a single structured document (or
//! a short human-readable rendering with `--format human`).

pub mod schema;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use motrop_core::motivic::{LaurentY, MotivicClass};
use motrop_core::tropical::{self, SchoenStatus, TropEdgeKind, TropError};
use motrop_core::vf::VFError;
use motrop_core::zeta::{self, ZetaError};
use serde_json::{json, Value};

use schema::SchemaError;

pub const ARTIFACT_NAME: &str = "motrop";
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit statuses: 1 schema, 2 mathematical precondition, 3 internal
/// invariant violation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_status(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Json { .. } => 1,
            CliError::Schema(e) if e.is_domain() => 2,
            CliError::Schema(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<TropError> for CliError {
    fn from(e: TropError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<VFError> for CliError {
    fn from(e: VFError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// Output rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Document,
    Human,
}

/// Resolved invocation parameters, echoed into every document.
#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: String,
    pub input: PathBuf,
    pub genus: Option<usize>,
    pub truncation: Option<usize>,
    pub assume_schoen: bool,
    pub threads: usize,
    pub format: Format,
}

impl Invocation {
    fn parameters(&self) -> Value {
        json!({
            "input": self.input.display().to_string(),
            "genus": self.genus,
            "truncation": self.truncation,
            "assume_schoen": self.assume_schoen,
            "threads": self.threads,
            "format": match self.format { Format::Document => "document", Format::Human => "human" },
        })
    }
}

/// A finished command: the structured document plus the human rendering.
pub struct Outcome {
    pub document: Value,
    pub human: String,
}

impl Outcome {
    pub fn rendered(&self, format: Format) -> String {
        match format {
            Format::Document => {
                let mut s = serde_json::to_string_pretty(&self.document)
                    .expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Human => self.human.clone(),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_slice(&bytes).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn document(inv: &Invocation, result: Value) -> Value {
    json!({
        "artifact": { "name": ARTIFACT_NAME, "version": ARTIFACT_VERSION },
        "command": inv.command,
        "parameters": inv.parameters(),
        "result": result,
    })
}

fn class_result(class: &MotivicClass) -> Value {
    json!({
        "class": schema::class_to_doc(class),
        "class_string": class.to_string(),
        "chi_y": schema::laurent_to_doc(&class.chi_y()),
        "chi_y_string": class.chi_y().to_string(),
        "euler": class.euler().to_string(),
    })
}

fn class_human(title: &str, class: &MotivicClass) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{title}: {class}");
    let _ = writeln!(s, "chi_y: {}", class.chi_y());
    let _ = writeln!(s, "euler: {}", class.euler());
    s
}

/// Dispatch a command by name. `run` is a thin shell: every result it
/// produces is reproducible by direct library calls.
pub fn run(inv: &Invocation) -> Result<Outcome, CliError> {
    match inv.command.as_str() {
        "trop" => run_trop(inv),
        "volume" => run_volume(inv),
        "semistable" => run_semistable(inv),
        "vfvol" => run_vfvol(inv),
        "zeta-extract" => run_zeta_extract(inv),
        "zeta-roundtrip" => run_zeta_roundtrip(inv),
        "bg" => run_bg(inv),
        "chi" => run_chi(inv),
        other => Err(CliError::Precondition(format!("unknown command {other}"))),
    }
}

fn tropicalized(inv: &Invocation) -> Result<tropical::Tropicalization, CliError> {
    let doc: schema::PuiseuxPolyDoc = read_json(&inv.input)?;
    let poly = schema::puiseux_from_doc(&doc)?;
    Ok(tropical::tropicalize(&poly)?)
}

fn schoen_value(report: &tropical::SchoenReport) -> Value {
    json!({
        "status": match report.status {
            SchoenStatus::Pass => "PASS",
            SchoenStatus::ConditionalPass => "CONDITIONAL",
            SchoenStatus::Fail => "FAIL",
            SchoenStatus::Unknown => "UNKNOWN",
        },
        "notes": report.notes,
    })
}

fn run_trop(inv: &Invocation) -> Result<Outcome, CliError> {
    let t = tropicalized(inv)?;
    let vertices: Vec<Value> = t
        .curve
        .vertices
        .iter()
        .map(|(x, y)| json!([schema::format_rational(x), schema::format_rational(y)]))
        .collect();
    let edges: Vec<Value> = t
        .curve
        .edges
        .iter()
        .map(|e| match &e.kind {
            TropEdgeKind::Segment { from, to } => json!({
                "kind": "segment",
                "from": from,
                "to": to,
                "weight": e.weight,
                "dual_edge": e.dual,
            }),
            TropEdgeKind::Ray { from, direction } => json!({
                "kind": "ray",
                "from": from,
                "direction": [direction.0, direction.1],
                "weight": e.weight,
                "dual_edge": e.dual,
            }),
            TropEdgeKind::Line { point, direction } => json!({
                "kind": "line",
                "point": [schema::format_rational(&point.0), schema::format_rational(&point.1)],
                "direction": [direction.0, direction.1],
                "weight": e.weight,
                "dual_cell": e.dual,
            }),
        })
        .collect();
    let cells: Vec<Value> = t
        .subdivision
        .cells
        .iter()
        .map(|c| {
            json!({
                "polygon": c.polygon.iter().map(|&p| schema::point_doc(p)).collect::<Vec<_>>(),
                "support": c.support.iter()
                    .map(|&i| schema::point_doc(t.subdivision.points[i].m))
                    .collect::<Vec<_>>(),
                "dual_position": [
                    schema::format_rational(&c.plane.dual_position().0),
                    schema::format_rational(&c.plane.dual_position().1),
                ],
            })
        })
        .collect();
    let sub_edges: Vec<Value> = t
        .subdivision
        .edges
        .iter()
        .map(|e| {
            json!({
                "endpoints": [schema::point_doc(e.endpoints.0), schema::point_doc(e.endpoints.1)],
                "lattice_length": e.lattice_length,
                "boundary": e.is_boundary(),
                "cells": match e.cells {
                    (a, Some(b)) => json!([a, b]),
                    (a, None) => json!([a]),
                },
            })
        })
        .collect();
    let report = t.schoen_report();
    let result = json!({
        "degenerate": t.curve.degenerate,
        "vertices": vertices,
        "edges": edges,
        "first_betti_bounded": t.curve.first_betti_bounded,
        "subdivision": { "cells": cells, "edges": sub_edges },
        "schoen": schoen_value(&report),
    });
    let mut human = String::new();
    let _ = writeln!(
        human,
        "tropical curve: {} vertices, {} edges{}",
        t.curve.vertices.len(),
        t.curve.edges.len(),
        if t.curve.degenerate { " (degenerate)" } else { "" }
    );
    let _ = writeln!(human, "first Betti number of bounded part: {}", t.curve.first_betti_bounded);
    let _ = writeln!(human, "schoen: {:?}", report.status);
    Ok(Outcome { document: document(inv, result), human })
}

fn run_volume(inv: &Invocation) -> Result<Outcome, CliError> {
    let t = tropicalized(inv)?;
    let vol = t.motivic_volume(inv.assume_schoen)?;
    let report = t.schoen_report();
    let mut result = class_result(&vol);
    result["schoen"] = schoen_value(&report);
    Ok(Outcome {
        human: class_human("motivic volume", &vol),
        document: document(inv, result),
    })
}

fn run_semistable(inv: &Invocation) -> Result<Outcome, CliError> {
    let doc: schema::StrataDoc = read_json(&inv.input)?;
    let fiber = schema::fiber_from_doc(&doc)?;
    let volume = fiber.semistable_volume();
    let via_class = fiber
        .semistable_class()
        .and_then(|c| c.vol())
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    if via_class != volume {
        return Err(CliError::Internal(format!(
            "vol(semistable_class) = {via_class} disagrees with the closed form {volume}"
        )));
    }
    let mut result = class_result(&volume);
    result["cross_check"] = json!("vol(semistable_class) agrees with the closed form");
    Ok(Outcome {
        human: class_human("semistable volume", &volume),
        document: document(inv, result),
    })
}

fn run_vfvol(inv: &Invocation) -> Result<Outcome, CliError> {
    let doc: schema::VFClassDoc = read_json(&inv.input)?;
    let class = schema::vf_from_doc(&doc)?;
    let vol = class.vol().map_err(|e| CliError::Precondition(e.to_string()))?;
    Ok(Outcome {
        human: class_human("volume", &vol),
        document: document(inv, class_result(&vol)),
    })
}

fn resolved_series(inv: &Invocation) -> Result<(zeta::MotivicSeries, usize), CliError> {
    let doc: schema::SeriesDoc = read_json(&inv.input)?;
    let (mut series, file_genus) = schema::series_from_doc(&doc)?;
    if let Some(m) = inv.truncation {
        if m > series.truncation() {
            return Err(CliError::Precondition(format!(
                "requested truncation {m} exceeds the stored truncation {}",
                series.truncation()
            )));
        }
        series = series.truncate(m);
    }
    Ok((series, inv.genus.unwrap_or(file_genus)))
}

fn refined_result(inv: &zeta::RefinedInvariants) -> Value {
    json!({
        "genus": inv.genus(),
        "N": inv.motivic().iter().map(schema::class_to_doc).collect::<Vec<_>>(),
        "N_strings": inv.motivic().iter().map(MotivicClass::to_string).collect::<Vec<_>>(),
        "chi": inv.chi().iter().map(schema::laurent_to_doc).collect::<Vec<_>>(),
        "chi_strings": inv.chi().iter().map(LaurentY::to_string).collect::<Vec<_>>(),
        "n": inv.euler().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn run_zeta_extract(inv: &Invocation) -> Result<Outcome, CliError> {
    let (series, genus) = resolved_series(inv)?;
    let refined = zeta::refined_from_hilb(&series, genus)?;
    let mut human = String::new();
    let _ = writeln!(human, "genus {genus}, truncation {}", series.truncation());
    for (i, class) in refined.motivic().iter().enumerate() {
        let _ = writeln!(human, "N[{i}] = {class}");
    }
    Ok(Outcome {
        document: document(inv, refined_result(&refined)),
        human,
    })
}

fn run_zeta_roundtrip(inv: &Invocation) -> Result<Outcome, CliError> {
    let (series, genus) = resolved_series(inv)?;
    let refined = zeta::refined_from_hilb(&series, genus)?;
    let rebuilt = zeta::hilb_from_refined(refined.motivic(), genus, series.truncation());
    if rebuilt != series {
        return Err(CliError::Internal(
            "reconstructed series differs from the input within its truncation".to_string(),
        ));
    }
    let result = json!({
        "roundtrip": "exact",
        "genus": genus,
        "truncation": series.truncation(),
        "invariants": refined_result(&refined),
    });
    let human = format!(
        "roundtrip exact at genus {genus}, truncation {}\n",
        series.truncation()
    );
    Ok(Outcome { document: document(inv, result), human })
}

fn run_bg(inv: &Invocation) -> Result<Outcome, CliError> {
    let t = tropicalized(inv)?;
    let n = t.mikhalkin_multiplicity()?;
    let refined = t.bg_multiplicity()?;
    let per_vertex: Result<Vec<i64>, TropError> = (0..t.curve.vertices.len())
        .map(|v| t.vertex_multiplicity(v))
        .collect();
    let per_vertex = per_vertex?;
    if refined.eval_one() != n {
        return Err(CliError::Internal(format!(
            "refined multiplicity at y = 1 gives {}, expected {n}",
            refined.eval_one()
        )));
    }
    let result = json!({
        "vertex_multiplicities": per_vertex,
        "mikhalkin": n.to_string(),
        "block_goettsche": schema::laurent_to_doc(&refined),
        "block_goettsche_string": refined.to_string(),
        "integral": refined.is_integral(),
    });
    let human = format!("n(Gamma) = {n}\nN(Gamma) = {refined}\n");
    Ok(Outcome { document: document(inv, result), human })
}

fn run_chi(inv: &Invocation) -> Result<Outcome, CliError> {
    let doc: schema::ClassDoc = read_json(&inv.input)?;
    let class = schema::class_from_doc("class", &doc)?;
    Ok(Outcome {
        human: class_human("class", &class),
        document: document(inv, class_result(&class)),
    })
}
