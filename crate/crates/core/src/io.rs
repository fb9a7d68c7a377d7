//! POVM JSON format and canonical serialization.
//!
//! ```text
//! {"dim": d, "effects": {"<l1>,<l2>,...": [[[re, im], ...], ...]}, "slots": [[labels], ...]}
//! ```
//!
//! Keys are sorted and every float is written with 17 significant digits,
//! so identical values always produce identical bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::mub::{MubPair, OrthonormalBasis};
use crate::operator::{Complex, HermitianOperator, Ket};
use crate::povm::JointObservable;

/// Compact JSON with `{:.16e}` floats.
#[derive(Debug, Clone, Copy, Default)]
pub struct FixedPrecisionFormatter;

impl Formatter for FixedPrecisionFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// 17 significant digits in scientific notation; round-trips every finite `f64`.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Canonical JSON text, newline terminated.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedPrecisionFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

fn complex_json(z: Complex) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(op: &HermitianOperator) -> Value {
    Value::Array(
        op.rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(complex_json).collect()))
            .collect(),
    )
}

pub fn joint_to_json(joint: &JointObservable) -> Value {
    let effects: Map<String, Value> = joint
        .effects()
        .iter()
        .map(|(tuple, op)| (joint.tuple_key(tuple), matrix_json(op)))
        .collect();
    json!({
        "dim": joint.dim(),
        "slots": joint.slots(),
        "effects": effects,
    })
}

pub fn write_joint(joint: &JointObservable) -> Result<String> {
    to_canonical_json(&joint_to_json(joint))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFormat(msg.into())
}

fn parse_number(v: &Value) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| bad(format!("expected a finite number, got {v}")))
}

fn parse_complex(v: &Value) -> Result<Complex> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex::new(parse_number(re)?, parse_number(im)?)),
        _ => Err(bad(format!("expected [re, im], got {v}"))),
    }
}

fn parse_matrix(v: &Value, dim: usize) -> Result<HermitianOperator> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if rows.len() != dim {
        return Err(bad(format!("matrix has {} rows, expected {dim}", rows.len())));
    }
    let rows: Vec<Vec<Complex>> = rows
        .iter()
        .map(|row| {
            let entries = row.as_array().ok_or_else(|| bad("row must be an array"))?;
            if entries.len() != dim {
                return Err(bad(format!("row has {} entries, expected {dim}", entries.len())));
            }
            entries.iter().map(parse_complex).collect()
        })
        .collect::<Result<_>>()?;
    HermitianOperator::from_rows(&rows)
}

pub fn joint_from_json(value: &Value) -> Result<JointObservable> {
    let obj = value.as_object().ok_or_else(|| bad("top level must be an object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|d| *d > 0)
        .ok_or_else(|| bad("`dim` must be a positive integer"))? as usize;
    let slots: Vec<Vec<String>> = obj
        .get("slots")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("`slots` must be an array"))?
        .iter()
        .map(|alphabet| {
            alphabet
                .as_array()
                .ok_or_else(|| bad("each slot must be an array of labels"))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| bad("outcome labels must be strings"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut joint = JointObservable::new(dim, slots)?;
    let effects = obj
        .get("effects")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("`effects` must be an object"))?;
    for (key, matrix) in effects {
        let tuple = joint.parse_tuple_key(key)?;
        joint.set(tuple, parse_matrix(matrix, dim)?)?;
    }
    Ok(joint)
}

pub fn read_joint(text: &str) -> Result<JointObservable> {
    joint_from_json(&serde_json::from_str(text)?)
}

fn ket_json(v: &Ket) -> Value {
    Value::Array(v.iter().map(|z| complex_json(*z)).collect())
}

/// Basis vectors as rows of `[re, im]` pairs.
pub fn basis_to_json(basis: &OrthonormalBasis) -> Value {
    json!({
        "dim": basis.dim(),
        "vectors": basis.vectors().iter().map(ket_json).collect::<Vec<_>>(),
    })
}

pub fn mub_pair_to_json(pair: &MubPair) -> Value {
    json!({
        "first": basis_to_json(pair.first()),
        "second": basis_to_json(pair.second()),
    })
}

pub fn basis_from_json(value: &Value) -> Result<OrthonormalBasis> {
    let vectors = value
        .get("vectors")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("`vectors` must be an array"))?;
    let kets = vectors
        .iter()
        .map(|v| {
            let entries = v.as_array().ok_or_else(|| bad("vector must be an array"))?;
            let parsed: Vec<Complex> = entries.iter().map(parse_complex).collect::<Result<_>>()?;
            Ok(Ket::from_vec(parsed))
        })
        .collect::<Result<Vec<_>>>()?;
    OrthonormalBasis::new(kets)
}
