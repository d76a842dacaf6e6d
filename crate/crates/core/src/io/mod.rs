//! Model and report files, and SVG rendering of orthogons.
//!
//! A model is `{"dim": d, "scale": n, "boxes": [[[lo..], [hi..]], ..]}` or
//! the same with `"cells": [[x..], ..]` naming unit cells by their low
//! corner. Saved models always use the boxes form with one box per grid
//! cell, in lexicographic order, so equal orthotopes serialize identically.

mod svg;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::lattice::{EulerMethod, GenericCheck, IntBox, IntegralOrthotope, OrthotopeError, VolumeMethod};
use crate::spd::SignedSpd;

pub use svg::render_svg;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed model: {0}")]
    Schema(String),
    #[error("expected a {expected}-dimensional orthotope, found dimension {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error(transparent)]
    Orthotope(#[from] OrthotopeError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    dim: usize,
    #[serde(default = "unit_scale")]
    scale: u64,
    #[serde(default)]
    boxes: Option<Vec<(Vec<i64>, Vec<i64>)>>,
    #[serde(default)]
    cells: Option<Vec<Vec<i64>>>,
}

fn unit_scale() -> u64 {
    1
}

pub fn parse_model(text: &str) -> Result<IntegralOrthotope, ModelError> {
    let m: ModelFile = serde_json::from_str(text)?;
    let p = match (m.boxes, m.cells) {
        (Some(boxes), None) => IntegralOrthotope::from_boxes(m.dim, &boxes, m.scale)?,
        (None, Some(cells)) => IntegralOrthotope::from_cells(m.dim, &cells, m.scale)?,
        (Some(_), Some(_)) => return Err(ModelError::Schema("give either `boxes` or `cells`, not both".into())),
        (None, None) => return Err(ModelError::Schema("missing field `boxes` or `cells`".into())),
    };
    Ok(p)
}

pub fn model_to_json(p: &IntegralOrthotope) -> String {
    let mut out = format!(
        "{{\n  \"dim\": {},\n  \"scale\": {},\n  \"boxes\": [",
        p.dim(),
        p.scale()
    );
    let boxes = p.boxes();
    for (i, (lo, hi)) in boxes.iter().enumerate() {
        let sep = if i + 1 < boxes.len() { "," } else { "" };
        let _ = write!(out, "\n    [{}, {}]{sep}", int_list(lo), int_list(hi));
    }
    out.push_str(if boxes.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

fn int_list(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<IntegralOrthotope, ModelError> {
    parse_model(&read(path.as_ref())?)
}

pub fn save_model(p: &IntegralOrthotope, path: impl AsRef<Path>) -> Result<(), ModelError> {
    write(path.as_ref(), &model_to_json(p))
}

pub(crate) fn read(path: &Path) -> Result<String, ModelError> {
    std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), ModelError> {
    std::fs::write(path, text).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonSummary {
    pub nodes: usize,
    pub arcs: usize,
    pub bipartite: bool,
}

/// Everything `analyze` reports. Census and skeleton are `None` for a
/// non-generic input, whose volume and Euler characteristic come from the
/// cell complex instead of the vertex formulas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub generic: bool,
    /// Coordinates as integers or `"p/q"` strings.
    pub witness: Option<Vec<Value>>,
    /// `"p"` or `"p/q"`.
    pub volume: String,
    pub euler: i64,
    pub census_by_mu: Option<BTreeMap<String, u64>>,
    pub census_by_class: Option<BTreeMap<String, u64>>,
    pub skeleton: Option<SkeletonSummary>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn rational_value(x: Rational64) -> Value {
    if x.is_integer() {
        Value::from(x.to_integer())
    } else {
        Value::from(x.to_string())
    }
}

/// Build the report, cross-checking the vertex formulas against the cell
/// complex; any disagreement is an [`OrthotopeError::Consistency`].
pub fn analyze(p: &IntegralOrthotope) -> Result<Report, OrthotopeError> {
    let voxel = p.volume(VolumeMethod::VoxelCount)?;
    let cubical = p.euler(EulerMethod::CubicalComplex)?;
    if let GenericCheck::NotGeneric { witness } = p.check_generic() {
        return Ok(Report {
            generic: false,
            witness: Some(witness.into_iter().map(rational_value).collect()),
            volume: voxel.to_string(),
            euler: cubical,
            census_by_mu: None,
            census_by_class: None,
            skeleton: None,
        });
    }
    let mu_sum = p.volume(VolumeMethod::MuSum)?;
    let det = p.volume(VolumeMethod::Determinantal)?;
    if mu_sum != voxel || det != voxel {
        return Err(OrthotopeError::Consistency(format!(
            "volume formulas disagree: cells {voxel}, lattice {mu_sum}, determinantal {det}"
        )));
    }
    let euler = p.euler(EulerMethod::SigmaSum)?;
    if euler != cubical {
        return Err(OrthotopeError::Consistency(format!(
            "Euler characteristic disagrees: vertices {euler}, cells {cubical}"
        )));
    }
    let census = p.vertex_census()?;
    let skeleton = p.skeleton()?;
    Ok(Report {
        generic: true,
        witness: None,
        volume: voxel.to_string(),
        euler,
        census_by_mu: Some(census.by_mu.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
        census_by_class: Some(
            census
                .by_class
                .iter()
                .map(|(k, v)| (SignedSpd::positive(k.representative()).to_string(), *v))
                .collect(),
        ),
        skeleton: Some(SkeletonSummary {
            nodes: skeleton.nodes.len(),
            arcs: skeleton.arcs.len(),
            bipartite: skeleton.is_bipartite(),
        }),
    })
}

/// Parse a face list `{"dim": d, "faces": [[[lo..], [hi..]], ..]}` where
/// each face has `hi_i - lo_i ∈ {0, 1}`.
pub fn parse_faces(text: &str) -> Result<(usize, Vec<IntBox>), ModelError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct FaceFile {
        dim: usize,
        faces: Vec<(Vec<i64>, Vec<i64>)>,
    }
    let f: FaceFile = serde_json::from_str(text)?;
    Ok((f.dim, f.faces))
}
