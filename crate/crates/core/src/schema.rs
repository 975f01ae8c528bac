//! The JSON model file format (`schema: 1`).
//!
//! Distributions are written sparsely as `{state label: weight}`. Kernel and
//! update rows are `{"point": label}`, `{"shared": pool name}` or
//! `{"weights": {label: weight}}`. Floats are written with enough digits to
//! read back bit-identically.

use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bundle::Bundle;
use crate::lg::ArrangementSpec;
use crate::ontic::{
    Distribution, KernelRow, Measurement, MeasurementUpdate, OnticModel, OnticStateSpace, ResponseFunction,
    TransformationKernel,
};
use crate::operational::Protocol;

pub const SCHEMA_VERSION: u32 = 1;

pub type Sparse = IndexMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowDoc {
    Point(String),
    Shared(String),
    Weights(Sparse),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationDoc {
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub pool: IndexMap<String, Sparse>,
    pub rows: IndexMap<String, RowDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementDoc {
    pub outcomes: Vec<String>,
    /// Per state, outcome probabilities; omitted outcomes have probability 0.
    pub response: IndexMap<String, Sparse>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub pool: IndexMap<String, Sparse>,
    /// Per outcome, per source state. Rows may be omitted where the outcome
    /// is impossible.
    pub update: IndexMap<String, IndexMap<String, RowDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema: u32,
    pub name: String,
    pub ontic_states: Vec<String>,
    pub preparations: IndexMap<String, Sparse>,
    #[serde(default)]
    pub transformations: IndexMap<String, TransformationDoc>,
    pub measurements: IndexMap<String, MeasurementDoc>,
    #[serde(default)]
    pub quantity_classes: IndexMap<String, Vec<String>>,
    #[serde(default)]
    pub protocols: IndexMap<String, Protocol>,
    #[serde(default)]
    pub arrangements: IndexMap<String, ArrangementSpec>,
    #[serde(default)]
    pub metadata: IndexMap<String, String>,
}

/// A model file that failed to load.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemaError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{}{path}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid {
        path: String,
        message: String,
        line: Option<usize>,
    },
}

// ---------------------------------------------------------------- export

fn sparse(space: &OnticStateSpace, w: &[f64]) -> Sparse {
    w.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0.0)
        .map(|(i, &x)| (space.label(i).to_string(), x))
        .collect()
}

fn pool_name(k: usize) -> String {
    format!("p{k}")
}

fn row_doc(space: &OnticStateSpace, r: KernelRow) -> RowDoc {
    match r {
        KernelRow::Point(t) => RowDoc::Point(space.label(t).to_string()),
        KernelRow::Shared(k) => RowDoc::Shared(pool_name(k)),
    }
}

fn pool_doc(space: &OnticStateSpace, pool: &[Distribution]) -> IndexMap<String, Sparse> {
    pool.iter()
        .enumerate()
        .map(|(k, d)| (pool_name(k), sparse(space, d.weights())))
        .collect()
}

pub fn to_document(b: &Bundle) -> ModelDocument {
    let m = &b.model;
    let space = m.space();
    let transformations = m
        .transformations()
        .iter()
        .map(|(name, k)| {
            let rows = k
                .rows()
                .iter()
                .enumerate()
                .map(|(i, &r)| (space.label(i).to_string(), row_doc(space, r)))
                .collect();
            (name.clone(), TransformationDoc { pool: pool_doc(space, k.pool()), rows })
        })
        .collect();
    let measurements = m
        .measurements()
        .iter()
        .map(|(name, meas)| {
            let resp = meas.response();
            let response = (0..m.dim())
                .map(|s| {
                    let row = resp
                        .row(s)
                        .iter()
                        .zip(resp.outcomes())
                        .filter(|(&p, _)| p != 0.0)
                        .map(|(&p, o)| (o.clone(), p))
                        .collect();
                    (space.label(s).to_string(), row)
                })
                .collect();
            let update = resp
                .outcomes()
                .iter()
                .zip(meas.update().rows())
                .map(|(o, rows)| {
                    let rows = rows
                        .iter()
                        .enumerate()
                        .filter_map(|(s, r)| r.map(|r| (space.label(s).to_string(), row_doc(space, r))))
                        .collect();
                    (o.clone(), rows)
                })
                .collect();
            (
                name.clone(),
                MeasurementDoc {
                    outcomes: resp.outcomes().to_vec(),
                    response,
                    pool: pool_doc(space, meas.update().pool()),
                    update,
                },
            )
        })
        .collect();
    ModelDocument {
        schema: SCHEMA_VERSION,
        name: m.name().to_string(),
        ontic_states: space.labels().to_vec(),
        preparations: m
            .preparations()
            .iter()
            .map(|(n, d)| (n.clone(), sparse(space, d.weights())))
            .collect(),
        transformations,
        measurements,
        quantity_classes: b.quantity_classes.clone(),
        protocols: b.protocols.clone(),
        arrangements: b.arrangements.clone(),
        metadata: m.metadata().clone(),
    }
}

pub fn to_json(b: &Bundle) -> String {
    serde_json::to_string_pretty(&to_document(b)).expect("model documents always serialize")
}

// ---------------------------------------------------------------- import

struct Ctx<'a> {
    text: Option<&'a str>,
}

impl Ctx<'_> {
    fn err(&self, path: &[&str], message: impl std::fmt::Display) -> SchemaError {
        SchemaError::Invalid {
            path: path.join("."),
            message: message.to_string(),
            line: self.text.and_then(|t| locate(t, path)),
        }
    }
}

/// Best-effort line of `path` in `text`: finds each key in turn, each after
/// the previous one.
pub fn locate(text: &str, path: &[&str]) -> Option<usize> {
    let mut pos = 0;
    for seg in path {
        let needle = serde_json::to_string(seg).ok()?;
        pos += text[pos..].find(&needle)?;
    }
    Some(text[..pos].matches('\n').count() + 1)
}

fn dense(ctx: &Ctx, space: &OnticStateSpace, s: &Sparse, path: &[&str]) -> Result<Vec<f64>, SchemaError> {
    let mut w = vec![0.0; space.len()];
    for (label, &x) in s {
        let i = space.index_of(label).ok_or_else(|| {
            let mut p = path.to_vec();
            p.push(label);
            ctx.err(&p, format!("unknown ontic state `{label}`"))
        })?;
        w[i] += x;
    }
    Ok(w)
}

fn distribution(ctx: &Ctx, space: &OnticStateSpace, s: &Sparse, path: &[&str]) -> Result<Distribution, SchemaError> {
    Distribution::new(dense(ctx, space, s, path)?).map_err(|e| ctx.err(path, e))
}

fn pool(ctx: &Ctx, space: &OnticStateSpace, docs: &IndexMap<String, Sparse>, path: &[&str]) -> Result<(Vec<Distribution>, HashMap<String, usize>), SchemaError> {
    let mut out = Vec::new();
    let mut names = HashMap::new();
    for (name, s) in docs {
        let mut p = path.to_vec();
        p.push(name);
        out.push(distribution(ctx, space, s, &p)?);
        names.insert(name.clone(), out.len() - 1);
    }
    Ok((out, names))
}

fn row(
    ctx: &Ctx,
    space: &OnticStateSpace,
    doc: &RowDoc,
    pool: &mut Vec<Distribution>,
    names: &HashMap<String, usize>,
    path: &[&str],
) -> Result<KernelRow, SchemaError> {
    match doc {
        RowDoc::Point(l) => space
            .index_of(l)
            .map(KernelRow::Point)
            .ok_or_else(|| ctx.err(path, format!("unknown ontic state `{l}`"))),
        RowDoc::Shared(k) => names
            .get(k)
            .map(|&i| KernelRow::Shared(i))
            .ok_or_else(|| ctx.err(path, format!("unknown pool entry `{k}`"))),
        RowDoc::Weights(s) => {
            pool.push(distribution(ctx, space, s, path)?);
            Ok(KernelRow::Shared(pool.len() - 1))
        }
    }
}

pub fn from_document(doc: &ModelDocument) -> Result<Bundle, SchemaError> {
    build(doc, &Ctx { text: None })
}

/// Parses and validates a model file. Errors carry a line number where one
/// can be found.
pub fn from_json(text: &str) -> Result<Bundle, SchemaError> {
    let doc: ModelDocument = serde_json::from_str(text).map_err(|e| SchemaError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build(&doc, &Ctx { text: Some(text) })
}

fn build(doc: &ModelDocument, ctx: &Ctx) -> Result<Bundle, SchemaError> {
    if doc.schema != SCHEMA_VERSION {
        return Err(ctx.err(&["schema"], format!("unsupported schema version {}", doc.schema)));
    }
    let space = OnticStateSpace::new(doc.ontic_states.iter().cloned()).map_err(|e| ctx.err(&["ontic_states"], e))?;
    let n = space.len();
    let mut model = OnticModel::new(doc.name.clone(), space.clone());

    for (name, s) in &doc.preparations {
        let path = ["preparations", name.as_str()];
        let d = distribution(ctx, &space, s, &path)?;
        model.add_preparation(name.clone(), d).map_err(|e| ctx.err(&path, e))?;
    }

    for (name, t) in &doc.transformations {
        let base = ["transformations", name.as_str()];
        let (mut pl, names) = pool(ctx, &space, &t.pool, &[base[0], base[1], "pool"])?;
        let mut rows = vec![None; n];
        for (label, r) in &t.rows {
            let path = [base[0], base[1], "rows", label.as_str()];
            let i = space.index_of(label).ok_or_else(|| ctx.err(&path, format!("unknown ontic state `{label}`")))?;
            rows[i] = Some(row(ctx, &space, r, &mut pl, &names, &path)?);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| ctx.err(&[base[0], base[1], "rows"], format!("no row for state `{}`", space.label(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        let k = TransformationKernel::new(n, rows, pl).map_err(|e| ctx.err(&base, e))?;
        model.add_transformation(name.clone(), k).map_err(|e| ctx.err(&base, e))?;
    }

    for (name, m) in &doc.measurements {
        let base = ["measurements", name.as_str()];
        let mut table = vec![None; n];
        for (label, probs) in &m.response {
            let path = [base[0], base[1], "response", label.as_str()];
            let i = space.index_of(label).ok_or_else(|| ctx.err(&path, format!("unknown ontic state `{label}`")))?;
            let mut r = vec![0.0; m.outcomes.len()];
            for (o, &p) in probs {
                let q = m.outcomes.iter().position(|x| x == o).ok_or_else(|| {
                    let mut p = path.to_vec();
                    p.push(o);
                    ctx.err(&p, format!("`{o}` is not a declared outcome"))
                })?;
                r[q] += p;
            }
            table[i] = Some(r);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| ctx.err(&[base[0], base[1], "response"], format!("no response for state `{}`", space.label(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        let response = ResponseFunction::new(m.outcomes.clone(), table).map_err(|e| ctx.err(&[base[0], base[1], "response"], e))?;

        let (mut pl, names) = pool(ctx, &space, &m.pool, &[base[0], base[1], "pool"])?;
        let mut rows = vec![vec![None; n]; m.outcomes.len()];
        for (o, per_state) in &m.update {
            let q = m.outcomes.iter().position(|x| x == o).ok_or_else(|| {
                ctx.err(&[base[0], base[1], "update", o.as_str()], format!("`{o}` is not a declared outcome"))
            })?;
            for (label, r) in per_state {
                let path = [base[0], base[1], "update", o.as_str(), label.as_str()];
                let i = space.index_of(label).ok_or_else(|| ctx.err(&path, format!("unknown ontic state `{label}`")))?;
                rows[q][i] = Some(row(ctx, &space, r, &mut pl, &names, &path)?);
            }
        }
        let update = MeasurementUpdate::new(n, rows, pl).map_err(|e| ctx.err(&[base[0], base[1], "update"], e))?;
        let meas = Measurement::new(name.clone(), response, update).map_err(|e| ctx.err(&base, e))?;
        model.add_measurement(meas).map_err(|e| ctx.err(&base, e))?;
    }
    for (k, v) in &doc.metadata {
        model.set_metadata(k.clone(), v.clone());
    }

    let bundle = Bundle {
        model: Arc::new(model),
        quantity_classes: doc.quantity_classes.clone(),
        protocols: doc.protocols.clone(),
        arrangements: doc.arrangements.clone(),
    };
    for label in bundle.quantity_classes.keys() {
        bundle.class(Some(label)).map_err(|e| ctx.err(&["quantity_classes", label], e))?;
    }
    for (name, p) in &bundle.protocols {
        p.validate(&bundle.model).map_err(|e| ctx.err(&["protocols", name], e))?;
    }
    for name in bundle.arrangements.keys() {
        bundle.arrangement(Some(name)).map_err(|e| ctx.err(&["arrangements", name], e))?;
    }
    Ok(bundle)
}
