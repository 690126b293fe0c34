//! JSON file formats and report documents.
//!
//! Rationals travel as exact strings (`"p/q"`, or `"p"` when integral);
//! integers are also accepted on input. Quantum matrices are arrays of
//! `[re, im]` pairs of decimal numbers.

use crate::catalog;
use crate::error::{Error, Result};
use crate::metrics::DegreeReport;
use crate::model::{Effect, Label, Measurement, StateSpace};
use crate::quantum::{HermitianOperator, Povm, C64};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::tasks::Ensemble;
use nalgebra::DMatrix;
use serde_json::{json, Map, Value};
use std::sync::Arc;

pub const DIMENSION_CONVENTION: &str = "linear = affine-hull + 1";

fn rat_to_value(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::rat::int(i))
            } else {
                Err(Error::Parse(format!(
                    "non-integer number {n}; write exact rationals as \"p/q\" strings"
                )))
            }
        }
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}

fn rat_vec_from_value(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?
        .iter()
        .map(rat_from_value)
        .collect()
}

fn rat_vec_to_value(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat_to_value).collect())
}

// ---------------------------------------------------------------- models

pub fn model_to_json(space: &StateSpace) -> Value {
    json!({
        "name": space.name(),
        "dim": space.dim(),
        "vertices": space.vertices().iter().map(|v| rat_vec_to_value(v)).collect::<Vec<_>>(),
    })
}

pub fn model_from_json(v: &Value) -> Result<Arc<StateSpace>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("model must be a JSON object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("unnamed")
        .to_string();
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("model needs an integer `dim`".into()))? as usize;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("model needs a `vertices` array".into()))?
        .iter()
        .map(rat_vec_from_value)
        .collect::<Result<Vec<_>>>()?;
    StateSpace::new(name, dim, vertices)
}

/// How a measurement or ensemble file refers to its model.
#[derive(Debug, Clone)]
pub enum ModelSource {
    Inline(Arc<StateSpace>),
    /// A catalog entry name or a filesystem path; the caller resolves it.
    Reference(String),
}

fn model_source_from_value(v: &Value) -> Result<ModelSource> {
    match v {
        Value::String(s) => Ok(ModelSource::Reference(s.clone())),
        Value::Object(_) => Ok(ModelSource::Inline(model_from_json(v)?)),
        other => Err(Error::Parse(format!(
            "model must be a name, a path, or an inline object, got {other}"
        ))),
    }
}

// ---------------------------------------------------------- measurements

pub fn measurement_to_json(m: &Measurement, inline_model: bool) -> Value {
    let effects: Vec<Value> = m
        .effects()
        .iter()
        .map(|e| {
            json!({
                "linear": rat_vec_to_value(e.linear()),
                "constant": rat_to_value(e.constant()),
            })
        })
        .collect();
    let mut obj = Map::new();
    if inline_model {
        obj.insert("model".into(), model_to_json(m.space()));
    } else {
        obj.insert("model".into(), Value::String(m.space().name().to_string()));
    }
    obj.insert(
        "labels".into(),
        Value::Array(m.labels().iter().map(|l| Value::String(l.clone())).collect()),
    );
    obj.insert("effects".into(), Value::Array(effects));
    Value::Object(obj)
}

/// Parsed measurement file before model resolution.
#[derive(Debug, Clone)]
pub struct MeasurementParts {
    pub model: Option<ModelSource>,
    pub labels: Vec<Label>,
    pub effects: Vec<(Vec<Rat>, Rat)>,
}

pub fn measurement_parts_from_json(v: &Value) -> Result<MeasurementParts> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("measurement must be a JSON object".into()))?;
    let model = obj.get("model").map(model_source_from_value).transpose()?;
    let labels: Vec<Label> = obj
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("measurement needs a `labels` array".into()))?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("labels must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let effects = obj
        .get("effects")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("measurement needs an `effects` array".into()))?
        .iter()
        .map(|e| {
            let eo = e
                .as_object()
                .ok_or_else(|| Error::Parse("effect must be an object".into()))?;
            let linear = rat_vec_from_value(
                eo.get("linear")
                    .ok_or_else(|| Error::Parse("effect needs `linear`".into()))?,
            )?;
            let constant = rat_from_value(
                eo.get("constant")
                    .ok_or_else(|| Error::Parse("effect needs `constant`".into()))?,
            )?;
            Ok((linear, constant))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementParts {
        model,
        labels,
        effects,
    })
}

pub fn build_measurement(parts: &MeasurementParts, space: Arc<StateSpace>) -> Result<Measurement> {
    let effects: Vec<Effect> = parts
        .effects
        .iter()
        .map(|(lin, c)| Effect::new(space.clone(), lin.clone(), c.clone()))
        .collect::<Result<_>>()?;
    Measurement::new(space, parts.labels.clone(), effects)
}

/// Single effect file: `{"model": optional, "linear": [...], "constant": r}`.
pub fn effect_parts_from_json(v: &Value) -> Result<(Option<ModelSource>, Vec<Rat>, Rat)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("effect must be a JSON object".into()))?;
    let model = obj.get("model").map(model_source_from_value).transpose()?;
    let linear = rat_vec_from_value(
        obj.get("linear")
            .ok_or_else(|| Error::Parse("effect needs `linear`".into()))?,
    )?;
    let constant = rat_from_value(
        obj.get("constant")
            .ok_or_else(|| Error::Parse("effect needs `constant`".into()))?,
    )?;
    Ok((model, linear, constant))
}

// ----------------------------------------------------------------- POVMs

pub fn povm_to_json(p: &Povm) -> Value {
    let elements: Vec<Value> = p
        .elements()
        .iter()
        .map(|e| {
            let rows: Vec<Value> = (0..e.dim())
                .map(|i| {
                    let cells: Vec<Value> = (0..e.dim())
                        .map(|j| {
                            let z = e.entries()[(i, j)];
                            json!([z.re, z.im])
                        })
                        .collect();
                    Value::Array(cells)
                })
                .collect();
            Value::Array(rows)
        })
        .collect();
    json!({
        "dim": p.dim(),
        "labels": p.labels(),
        "elements": elements,
    })
}

pub fn povm_from_json(v: &Value) -> Result<Povm> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("POVM must be a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("POVM needs an integer `dim`".into()))? as usize;
    let labels: Vec<Label> = obj
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("POVM needs a `labels` array".into()))?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("labels must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let elements = obj
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("POVM needs an `elements` array".into()))?
        .iter()
        .map(|m| {
            let rows = m
                .as_array()
                .ok_or_else(|| Error::Parse("element must be a matrix".into()))?;
            if rows.len() != dim {
                return Err(Error::Parse(format!(
                    "element has {} rows, dim is {dim}",
                    rows.len()
                )));
            }
            let mut mat = DMatrix::<C64>::zeros(dim, dim);
            for (i, row) in rows.iter().enumerate() {
                let cells = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
                if cells.len() != dim {
                    return Err(Error::Parse("ragged matrix".into()));
                }
                for (j, cell) in cells.iter().enumerate() {
                    let pair = cell
                        .as_array()
                        .ok_or_else(|| Error::Parse("entry must be [re, im]".into()))?;
                    if pair.len() != 2 {
                        return Err(Error::Parse("entry must be [re, im]".into()));
                    }
                    let re = pair[0]
                        .as_f64()
                        .ok_or_else(|| Error::Parse("re must be a number".into()))?;
                    let im = pair[1]
                        .as_f64()
                        .ok_or_else(|| Error::Parse("im must be a number".into()))?;
                    mat[(i, j)] = C64::new(re, im);
                }
            }
            HermitianOperator::new(mat)
        })
        .collect::<Result<Vec<_>>>()?;
    Povm::new(labels, elements)
}

// ------------------------------------------------------------- ensembles

pub fn ensemble_to_json(e: &Ensemble, inline_model: bool) -> Value {
    let states: Vec<Value> = e
        .states()
        .iter()
        .map(|(point, prob)| {
            json!({
                "point": rat_vec_to_value(point),
                "prob": rat_to_value(prob),
            })
        })
        .collect();
    let model = if inline_model {
        model_to_json(e.space())
    } else {
        Value::String(e.space().name().to_string())
    };
    json!({ "model": model, "states": states })
}

pub struct EnsembleParts {
    pub model: Option<ModelSource>,
    pub states: Vec<(Vec<Rat>, Rat)>,
}

pub fn ensemble_parts_from_json(v: &Value) -> Result<EnsembleParts> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("ensemble must be a JSON object".into()))?;
    let model = obj.get("model").map(model_source_from_value).transpose()?;
    let states = obj
        .get("states")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("ensemble needs a `states` array".into()))?
        .iter()
        .map(|s| {
            let so = s
                .as_object()
                .ok_or_else(|| Error::Parse("state must be an object".into()))?;
            let point = rat_vec_from_value(
                so.get("point")
                    .ok_or_else(|| Error::Parse("state needs `point`".into()))?,
            )?;
            let prob = rat_from_value(
                so.get("prob")
                    .ok_or_else(|| Error::Parse("state needs `prob`".into()))?,
            )?;
            Ok((point, prob))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleParts { model, states })
}

pub fn build_ensemble(parts: &EnsembleParts, space: Arc<StateSpace>) -> Result<Ensemble> {
    Ensemble::new(space, parts.states.clone())
}

// --------------------------------------------------------------- reports

#[derive(Debug, Clone)]
pub enum ReportValue {
    Rational(Rat),
    Bool(bool),
    Real(f64),
    Text(String),
}

impl From<Rat> for ReportValue {
    fn from(r: Rat) -> Self {
        ReportValue::Rational(r)
    }
}

impl From<bool> for ReportValue {
    fn from(b: bool) -> Self {
        ReportValue::Bool(b)
    }
}

/// The report document every CLI invocation writes to standard output.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub value: ReportValue,
    pub witnesses: Map<String, Value>,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, value: impl Into<ReportValue>) -> Self {
        Report {
            command: command.into(),
            value: value.into(),
            witnesses: Map::new(),
            extra: Map::new(),
        }
    }

    pub fn with_degree_report(mut self, report: &DegreeReport) -> Self {
        self.witnesses = degree_report_witnesses(report);
        self
    }

    pub fn witness(mut self, key: &str, value: Value) -> Self {
        self.witnesses.insert(key.into(), value);
        self
    }

    pub fn extra(mut self, key: &str, value: Value) -> Self {
        self.extra.insert(key.into(), value);
        self
    }

    pub fn to_json(&self, quiet: bool) -> Value {
        let value = match &self.value {
            ReportValue::Rational(r) => rat_to_value(r),
            ReportValue::Bool(b) => Value::Bool(*b),
            ReportValue::Real(x) => json!(x),
            ReportValue::Text(s) => Value::String(s.clone()),
        };
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(self.command.clone()));
        obj.insert("value".into(), value);
        if !quiet {
            obj.insert("witnesses".into(), Value::Object(self.witnesses.clone()));
            for (k, v) in &self.extra {
                obj.insert(k.clone(), v.clone());
            }
        }
        obj.insert(
            "dimension_convention".into(),
            Value::String(DIMENSION_CONVENTION.into()),
        );
        obj.insert("guards".into(), guards_json());
        Value::Object(obj)
    }
}

pub fn degree_report_witnesses(report: &DegreeReport) -> Map<String, Value> {
    let mut w = Map::new();
    if let Some(v) = report.witness_state {
        w.insert("state_index".into(), json!(v));
    }
    if let Some(joint) = &report.witness_joint {
        w.insert("joint".into(), measurement_to_json(joint, false));
    }
    if let Some((effect, (lx, ly))) = &report.witness_effect {
        w.insert(
            "effect".into(),
            json!({
                "linear": rat_vec_to_value(effect.linear()),
                "constant": rat_to_value(effect.constant()),
            }),
        );
        w.insert("pair".into(), json!([lx, ly]));
    }
    if let Some(partition) = &report.witness_partition {
        w.insert(
            "partition".into(),
            Value::Array(
                partition
                    .blocks()
                    .iter()
                    .map(|b| Value::Array(b.iter().map(|l| Value::String(l.clone())).collect()))
                    .collect(),
            ),
        );
    }
    w
}

pub fn guards_json() -> Value {
    json!({
        "degree_outcomes": crate::metrics::MAX_DEGREE_OUTCOMES,
        "cone_vertices": crate::cone::MAX_CONE_VERTICES,
        "cone_affine_dim": crate::cone::MAX_CONE_AFFINE_DIM,
        "partition_ground_set": 10,
        "ensemble_size": crate::tasks::MAX_ENSEMBLE,
        "povm_support_dim": crate::quantum::MAX_SUPPORT_DIM,
        "povm_extremal_dim": crate::quantum::MAX_EXTREMAL_DIM,
        "povm_extremal_outcomes": crate::quantum::MAX_EXTREMAL_OUTCOMES,
        "polygon_vertices": crate::quantum::MAX_POLYGON,
        "random_dim": catalog::MAX_RANDOM_DIM,
        "random_vertices": catalog::MAX_RANDOM_VERTICES,
        "random_outcomes": catalog::MAX_RANDOM_OUTCOMES,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{load_example, square_b_measurement, square_space, CatalogModel};
    use crate::metrics::intersubjectivity_degree;

    #[test]
    fn model_round_trip_is_value_identical() {
        let s = square_space().unwrap();
        let j = model_to_json(&s);
        let back = model_from_json(&j).unwrap();
        assert_eq!(back.vertices(), s.vertices());
        assert_eq!(back.dim(), s.dim());
    }

    #[test]
    fn measurement_round_trip_preserves_value_vectors() {
        let s = square_space().unwrap();
        let m = square_b_measurement(&s).unwrap();
        let j = measurement_to_json(&m, true);
        let parts = measurement_parts_from_json(&j).unwrap();
        let space = match parts.model.as_ref().unwrap() {
            ModelSource::Inline(sp) => sp.clone(),
            ModelSource::Reference(_) => panic!("inline expected"),
        };
        let back = build_measurement(&parts, space).unwrap();
        assert_eq!(back.labels(), m.labels());
        for (a, b) in back.effects().iter().zip(m.effects()) {
            assert_eq!(a.values(), b.values());
        }
    }

    #[test]
    fn povm_round_trip() {
        let entry = load_example("qubit-four-halves").unwrap();
        let p = entry.povm.as_ref().unwrap();
        let j = povm_to_json(p);
        let back = povm_from_json(&j).unwrap();
        assert_eq!(back.labels(), p.labels());
        for (a, b) in back.elements().iter().zip(p.elements()) {
            let dev = (a.entries() - b.entries()).map(|z| z.norm()).max();
            assert!(dev == 0.0);
        }
        assert!(matches!(entry.model, CatalogModel::Quantum { dim: 2 }));
    }

    #[test]
    fn rationals_parse_from_ints_and_strings() {
        assert_eq!(rat_from_value(&json!(3)).unwrap(), crate::rat::int(3));
        assert_eq!(
            rat_from_value(&json!("5/10")).unwrap(),
            crate::rat::rat(1, 2)
        );
        assert!(rat_from_value(&json!(0.5)).is_err());
        assert!(rat_from_value(&json!(null)).is_err());
    }

    #[test]
    fn report_contains_witnesses_and_convention() {
        let s = square_space().unwrap();
        let m = square_b_measurement(&s).unwrap();
        let deg = intersubjectivity_degree(&m).unwrap();
        let report = Report::new("degree", deg.value.clone()).with_degree_report(&deg);
        let j = report.to_json(false);
        assert_eq!(j["value"], json!("1"));
        assert_eq!(j["dimension_convention"], json!(DIMENSION_CONVENTION));
        assert!(j["witnesses"]["joint"].is_object());
        assert!(j["witnesses"]["state_index"].is_number());
        let quiet = report.to_json(true);
        assert!(quiet.get("witnesses").is_none());
    }

    #[test]
    fn ensemble_round_trip() {
        use crate::rat::{int, rat};
        let s = square_space().unwrap();
        let e = Ensemble::new(
            s.clone(),
            vec![
                (vec![int(1), int(1)], rat(1, 3)),
                (vec![int(0), int(0)], rat(2, 3)),
            ],
        )
        .unwrap();
        let j = ensemble_to_json(&e, true);
        let parts = ensemble_parts_from_json(&j).unwrap();
        let space = match parts.model.as_ref().unwrap() {
            ModelSource::Inline(sp) => sp.clone(),
            ModelSource::Reference(_) => panic!("inline expected"),
        };
        let back = build_ensemble(&parts, space).unwrap();
        assert_eq!(back.states(), e.states());
    }
}
