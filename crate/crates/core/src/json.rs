//! JSON interchange for presentations, representations, cuts, slices and
//! reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::Slice;
use crate::homalg::cluster::{EndomorphismPresentation, NrfReport};
use crate::homalg::field::parse_rational;
use crate::homalg::{Matrix, Rational, Representation};
use crate::quiver::{AlgebraPresentation, Path, PresentationError, Quiver, QuiverError, RelationElement};
use crate::typea::{Cut, TypeA};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub ty: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coef: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationJson {
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<TermJson>>,
}

fn quiver_json(q: &Quiver) -> (Vec<VertexJson>, Vec<ArrowJson>) {
    let vertices = q.vertices().iter().map(|v| VertexJson { id: v.id.clone(), label: v.label.clone() }).collect();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| ArrowJson {
            id: a.id.clone(),
            src: q.vertex(a.source).id.clone(),
            tgt: q.vertex(a.target).id.clone(),
            ty: a.ty,
        })
        .collect();
    (vertices, arrows)
}

fn quiver_from(vertices: &[VertexJson], arrows: &[ArrowJson]) -> Result<Quiver, JsonError> {
    let mut q = Quiver::new();
    for v in vertices {
        q.add_vertex(v.id.clone(), v.label.clone())?;
    }
    for a in arrows {
        q.add_arrow_by_ids(a.id.clone(), &a.src, &a.tgt, a.ty)?;
    }
    Ok(q)
}

impl PresentationJson {
    pub fn from_presentation(p: &AlgebraPresentation) -> Self {
        let q = &p.quiver;
        let (vertices, arrows) = quiver_json(q);
        let relations = p
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, path)| TermJson {
                        coef: c.to_string(),
                        path: path.arrows().iter().map(|&a| q.arrow(a).id.clone()).collect(),
                    })
                    .collect()
            })
            .collect();
        PresentationJson { vertices, arrows, relations }
    }

    pub fn to_presentation(&self) -> Result<AlgebraPresentation, JsonError> {
        let q = quiver_from(&self.vertices, &self.arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let mut terms = Vec::with_capacity(rel.len());
            for t in rel {
                let c = parse_rational(&t.coef).ok_or_else(|| JsonError::Coefficient(t.coef.clone()))?;
                let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
                if ids.is_empty() {
                    return Err(JsonError::Shape("relation term with an empty path".into()));
                }
                terms.push((c, Path::from_ids(&q, &ids)?));
            }
            relations.push(RelationElement::new(terms));
        }
        let p = AlgebraPresentation::new(q, relations);
        p.validate()?;
        Ok(p)
    }
}

pub fn presentation_to_json(p: &AlgebraPresentation) -> String {
    serde_json::to_string_pretty(&PresentationJson::from_presentation(p)).expect("serializable")
}

pub fn presentation_from_json(s: &str) -> Result<AlgebraPresentation, JsonError> {
    serde_json::from_str::<PresentationJson>(s)?.to_presentation()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepresentationJson {
    pub dims: BTreeMap<String, usize>,
    pub mats: BTreeMap<String, Vec<Vec<String>>>,
}

impl RepresentationJson {
    pub fn from_representation(q: &Quiver, m: &Representation<Rational>) -> Self {
        let dims = q.vertices().iter().zip(&m.dims).map(|(v, &d)| (v.id.clone(), d)).collect();
        let mats = q
            .arrows()
            .iter()
            .zip(&m.mats)
            .map(|(a, mat)| {
                let rows = (0..mat.rows()).map(|r| mat.row(r).iter().map(ToString::to_string).collect()).collect();
                (a.id.clone(), rows)
            })
            .collect();
        RepresentationJson { dims, mats }
    }

    /// Missing vertices have dimension zero; missing arrows act by zero.
    pub fn to_representation(&self, q: &Quiver) -> Result<Representation<Rational>, JsonError> {
        let mut dims = vec![0; q.vertex_count()];
        for (id, &d) in &self.dims {
            dims[q.vertex_by_id(id).ok_or_else(|| JsonError::UnknownVertex(id.clone()))?] = d;
        }
        if let Some(id) = self.mats.keys().find(|id| q.arrow_by_id(id).is_none()) {
            return Err(JsonError::UnknownArrow(id.clone()));
        }
        let mut mats = Vec::with_capacity(q.arrow_count());
        for a in q.arrows() {
            let (r, c) = (dims[a.source], dims[a.target]);
            let mut m = Matrix::zeros(r, c);
            if let Some(rows) = self.mats.get(&a.id) {
                let shape_ok = rows.len() == r && rows.iter().all(|row| row.len() == c);
                if !shape_ok && !(r * c == 0 && rows.iter().all(Vec::is_empty)) {
                    return Err(JsonError::Shape(format!("matrix of {} must be {r}x{c}", a.id)));
                }
                for (i, row) in rows.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        m[(i, j)] = parse_rational(e).ok_or_else(|| JsonError::Coefficient(e.clone()))?;
                    }
                }
            }
            mats.push(m);
        }
        Representation::new(q, dims, mats).map_err(|e| JsonError::Shape(e.to_string()))
    }
}

pub fn representation_to_json(q: &Quiver, m: &Representation<Rational>) -> String {
    serde_json::to_string_pretty(&RepresentationJson::from_representation(q, m)).expect("serializable")
}

pub fn representation_from_json(q: &Quiver, s: &str) -> Result<Representation<Rational>, JsonError> {
    serde_json::from_str::<RepresentationJson>(s)?.to_representation(q)
}

/// A cut as its sorted arrow ids.
pub fn cut_to_json(q: &Quiver, c: &Cut) -> serde_json::Value {
    serde_json::Value::from(c.ids(q))
}

pub fn cut_from_json(q: &Quiver, s: &str) -> Result<Cut, JsonError> {
    let ids: Vec<String> = serde_json::from_str(s)?;
    Cut::from_ids(q, &ids).map_err(|e| JsonError::UnknownArrow(e.to_string()))
}

/// A slice as a map from vertex id to level.
pub fn slice_to_json(t: &TypeA, s: &Slice) -> serde_json::Value {
    let q = t.quiver();
    let map: serde_json::Map<String, serde_json::Value> =
        q.vertices().iter().zip(&s.0).map(|(v, &l)| (v.id.clone(), serde_json::Value::from(l))).collect();
    serde_json::Value::Object(map)
}

/// Quiver, dimension and Cartan matrix of an endomorphism algebra.
pub fn endomorphism_to_json(e: &EndomorphismPresentation) -> serde_json::Value {
    let (vertices, arrows) = quiver_json(&e.quiver);
    serde_json::json!({
        "vertices": vertices,
        "arrows": arrows,
        "dimension": e.dimension,
        "cartan": e.cartan,
    })
}

/// A flat record of an n-representation-finiteness check.
pub fn nrf_report_to_json(r: &NrfReport) -> serde_json::Value {
    serde_json::json!({
        "n": r.n,
        "gldim": r.gldim.to_string(),
        "gldim_ok": r.gldim_ok(),
        "summands": r.summands,
        "cogenerator": r.cogenerator,
        "rigid": r.rigid,
        "end_gldim": r.end_gldim,
        "end_gldim_ok": r.end_gldim_ok(),
        "is_nrf": r.is_nrf(),
        "note": r.note,
    })
}
