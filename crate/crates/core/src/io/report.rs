//! JSON reports. Keys are sorted and floats carry 17 significant digits.

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::landscape::{Extremum, ExtremumKind, GridSpec};
use crate::model::{Channel, Vec3};
use crate::potential::PotentialMode;
use crate::tuner::{FreeCurrent, TuneResult};

fn float(v: f64) -> Value {
    // 17 significant digits always round-trip an f64.
    let text = format!("{v:.16e}");
    Value::Number(serde_json::from_str::<Number>(&text).expect("formatted float is valid JSON"))
}

fn vector(v: &Vec3) -> Value {
    Value::Array(v.iter().map(|c| float(*c)).collect())
}

fn index(idx: [usize; 3]) -> Value {
    Value::Array(idx.iter().map(|&i| Value::from(i)).collect())
}

fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(
        entries
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

/// Context recorded alongside an extrema list.
#[derive(Debug, Clone, Copy)]
pub struct ReportMeta<'a> {
    pub scene_hash: Option<&'a str>,
    pub spec: &'a GridSpec,
    pub mode: PotentialMode,
    pub shell_radius: usize,
}

pub fn write_extrema_report(extrema: &[Extremum], meta: &ReportMeta<'_>) -> String {
    let list = extrema
        .iter()
        .map(|e| {
            object(vec![
                ("kind", Value::from(e.kind.as_str())),
                ("index", index(e.index)),
                ("position", vector(&e.position)),
                ("value", float(e.value)),
                ("isolated_3d", Value::from(e.isolated_3d)),
                ("shell_margin", float(e.shell_margin)),
            ])
        })
        .collect();
    let doc = object(vec![
        ("scene_hash", meta.scene_hash.map_or(Value::Null, Value::from)),
        (
            "grid",
            object(vec![
                ("origin", vector(&meta.spec.origin)),
                ("spacing", vector(&meta.spec.spacing)),
                ("counts", index(meta.spec.counts)),
                ("mode", Value::from(meta.mode.as_str())),
            ]),
        ),
        ("shell_radius", Value::from(meta.shell_radius)),
        ("extrema", Value::Array(list)),
    ]);
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

fn bad(msg: &str) -> Error {
    Error::Format(format!("extrema report: {msg}"))
}

fn as_f64(v: &Value) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad("expected a number"))
}

fn as_triple(v: &Value) -> Result<[&Value; 3]> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b, c]) => Ok([a, b, c]),
        _ => Err(bad("expected a 3-element array")),
    }
}

/// Reads back the extrema of a report.
pub fn read_extrema_report(text: &str) -> Result<Vec<Extremum>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let list = doc
        .get("extrema")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `extrema`"))?;
    list.iter()
        .map(|e| {
            let kind = match e.get("kind").and_then(Value::as_str) {
                Some("min") => ExtremumKind::Min,
                Some("max") => ExtremumKind::Max,
                _ => return Err(bad("bad `kind`")),
            };
            let idx = as_triple(e.get("index").ok_or_else(|| bad("missing `index`"))?)?;
            let pos = as_triple(e.get("position").ok_or_else(|| bad("missing `position`"))?)?;
            let mut index = [0usize; 3];
            for (slot, v) in index.iter_mut().zip(idx) {
                *slot = v.as_u64().ok_or_else(|| bad("bad `index`"))? as usize;
            }
            Ok(Extremum {
                kind,
                index,
                position: Vec3::new(as_f64(pos[0])?, as_f64(pos[1])?, as_f64(pos[2])?),
                value: as_f64(e.get("value").ok_or_else(|| bad("missing `value`"))?)?,
                isolated_3d: e
                    .get("isolated_3d")
                    .and_then(Value::as_bool)
                    .ok_or_else(|| bad("missing `isolated_3d`"))?,
                shell_margin: as_f64(e.get("shell_margin").ok_or_else(|| bad("missing `shell_margin`"))?)?,
            })
        })
        .collect()
}

/// JSON summary of a tuning run.
pub fn write_tune_report(free: &[FreeCurrent], result: &TuneResult, scene_hash: &str) -> String {
    let currents = free
        .iter()
        .zip(&result.currents)
        .map(|(f, v)| {
            object(vec![
                ("wire", Value::from(f.wire)),
                (
                    "channel",
                    Value::from(match f.channel {
                        Channel::Dc => "dc",
                        Channel::Rf => "rf",
                    }),
                ),
                ("lo", float(f.lo)),
                ("hi", float(f.hi)),
                ("value", float(*v)),
            ])
        })
        .collect();
    let trace = result
        .trace
        .iter()
        .map(|(n, v)| Value::Array(vec![Value::from(*n), float(*v)]))
        .collect();
    let doc = object(vec![
        ("scene_hash", Value::from(scene_hash)),
        ("currents", Value::Array(currents)),
        ("objective", float(result.objective)),
        ("initial_objective", float(result.initial_objective)),
        ("evals", Value::from(result.evals)),
        ("trace", Value::Array(trace)),
    ]);
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
