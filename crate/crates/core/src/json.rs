//! JSON encodings of Gram matrices, invariants, framed links, embeddings and
//! decision reports. Integers are read and written as exact JSON numbers of
//! any size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::decide::DecisionReport;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::lattice::{FormInvariants, GramMatrix, Parity};
use crate::matrix::IntMatrix;
use crate::topology::FramedLinkData;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn int_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s).map_err(|_| Error::Parse(format!("expected an integer, got {s}")))
        }
        other => parse_err(format!("expected an integer, got {other}")),
    }
}

pub fn int_to_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a JSON number"))
}

fn u64_from_value(v: &Value, what: &str) -> Result<u64> {
    let x = int_from_value(v)?;
    u64::try_from(&x).or_else(|_| parse_err(format!("{what} must be a nonnegative 64-bit integer, got {x}")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn rows_from_value(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>> {
    let Value::Array(rows) = v else {
        return parse_err(format!("{what} must be an array of rows"));
    };
    rows.iter()
        .map(|row| match row {
            Value::Array(xs) => xs.iter().map(int_from_value).collect(),
            _ => parse_err(format!("{what} rows must be arrays")),
        })
        .collect()
}

fn matrix_from_value(v: &Value, what: &str, cols: Option<usize>) -> Result<IntMatrix> {
    let rows = rows_from_value(v, what)?;
    let cols = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    IntMatrix::from_rows(&rows, cols)
}

fn square_from_value(v: &Value, what: &str) -> Result<IntMatrix> {
    let rows = rows_from_value(v, what)?;
    IntMatrix::from_rows(&rows, rows.len())
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_to_value).collect()))
            .collect(),
    )
}

/// `{"gram": [[...], ...]}`
pub fn gram_from_json(v: &Value) -> Result<GramMatrix> {
    GramMatrix::new(square_from_value(field(v, "gram")?, "gram")?)
}

pub fn gram_to_json(g: &GramMatrix) -> Value {
    json!({ "gram": matrix_to_value(g.matrix()) })
}

/// `{"b2_plus": int, "b2_minus": int, "parity": "even" | "odd"}`
pub fn invariants_from_json(v: &Value) -> Result<FormInvariants> {
    let b2_plus = u64_from_value(field(v, "b2_plus")?, "b2_plus")?;
    let b2_minus = u64_from_value(field(v, "b2_minus")?, "b2_minus")?;
    let parity = match field(v, "parity")?.as_str() {
        Some("even") => Parity::Even,
        Some("odd") => Parity::Odd,
        _ => return parse_err("parity must be \"even\" or \"odd\""),
    };
    Ok(FormInvariants::new(b2_plus, b2_minus, parity))
}

pub fn invariants_to_json(inv: &FormInvariants) -> Value {
    json!({ "b2_plus": inv.b2_plus, "b2_minus": inv.b2_minus, "parity": inv.parity.as_str() })
}

/// `{"framings": [int], "linking": [[int]]}`
pub fn framed_link_from_json(v: &Value) -> Result<FramedLinkData> {
    let Value::Array(fs) = field(v, "framings")? else {
        return parse_err("framings must be an array");
    };
    let framings = fs.iter().map(int_from_value).collect::<Result<Vec<_>>>()?;
    let linking = square_from_value(field(v, "linking")?, "linking")?;
    FramedLinkData::new(framings, linking)
}

pub fn framed_link_to_json(link: &FramedLinkData) -> Value {
    json!({
        "framings": link.framings.iter().map(int_to_value).collect::<Vec<_>>(),
        "linking": matrix_to_value(&link.linking),
    })
}

/// `{"degree": int, "source_gram": [[...]], "target_gram": [[...]], "matrix": [[...]]}`
/// with `matrix` row-major, target rank × source rank.
pub fn embedding_from_json(v: &Value) -> Result<Embedding> {
    let degree = u64_from_value(field(v, "degree")?, "degree")?;
    let source = GramMatrix::new(square_from_value(field(v, "source_gram")?, "source_gram")?)?;
    let target = GramMatrix::new(square_from_value(field(v, "target_gram")?, "target_gram")?)?;
    let matrix = matrix_from_value(field(v, "matrix")?, "matrix", Some(source.rank()))?;
    Embedding::from_parts(degree, source, target, matrix)
}

pub fn embedding_to_json(e: &Embedding) -> Value {
    json!({
        "degree": e.degree(),
        "source_gram": matrix_to_value(e.source().matrix()),
        "target_gram": matrix_to_value(e.target().matrix()),
        "matrix": matrix_to_value(e.matrix()),
    })
}

/// Pretty-prints with two-space indentation, keeping arrays of scalars (matrix
/// rows) on one line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(xs) if xs.iter().all(is_flat) => {
            let items: Vec<String> = xs.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render_into(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::from(k.as_str()).to_string());
                out.push_str(": ");
                render_into(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn report_to_json(r: &DecisionReport) -> Value {
    let covering: Map<String, Value> = r
        .covering
        .iter()
        .map(|(d, s)| (d.to_string(), Value::from(s.as_str())))
        .collect();
    let regularity: Map<String, Value> = r
        .branch_regularity
        .iter()
        .map(|(d, s)| (d.to_string(), Value::from(s.as_str())))
        .collect();
    let obstructions: Vec<Value> = r
        .obstructions
        .iter()
        .map(|o| json!({ "kind": o.tag(), "detail": o.describe() }))
        .collect();
    json!({
        "source": invariants_to_json(&r.source),
        "target": invariants_to_json(&r.target),
        "embeddable": r.embeddable,
        "case": r.case(),
        "cases": r.cases,
        "guaranteed": { "kind": r.guaranteed.kind_str(), "base": r.guaranteed.base() },
        "obstructions": obstructions,
        "assume_no_1_3_handles": r.assume_no_13_handles,
        "covering": covering,
        "branch_regularity": regularity,
        "normal_form_convention": "odd: diag(+1.., -1..); even: E8 blocks then H blocks",
    })
}
