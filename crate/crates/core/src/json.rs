//! JSON encodings of scalars, matrices, complexes, maps and forms.
//!
//! Degree keys are decimal strings and matrices are row-major arrays.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quadratic::{make_form, HomotopyWitness, Pairing, QuadraticForm};

pub const SCHEMA: &str = "qflab/1";

/// Integers become JSON numbers when they fit in `i64`, everything else a `"p/q"` string.
pub fn scalar_to_json(x: &Scalar) -> Value {
    match x.to_i64() {
        Some(n) => json!(n),
        None => Value::String(x.to_string()),
    }
}

pub fn scalar_from_json(v: &Value, field: Field, loc: &str) -> Result<Scalar> {
    let raw: Scalar = match v {
        Value::Number(n) => match n.as_i64() {
            Some(k) => Scalar::from_int(k),
            None => n.to_string().parse().map_err(|_| {
                Error::parse(loc, format!("{n} is not exact; write fractions as \"p/q\" strings"))
            })?,
        },
        Value::String(s) => s.parse().map_err(|_| Error::parse(loc, format!("bad scalar {s:?}")))?,
        _ => return Err(Error::parse(loc, "expected a number or a \"p/q\" string")),
    };
    field.element(&raw)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_dense()
            .iter()
            .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

/// Parses a row-major matrix; an empty array stands for any `0 × n` or `n × 0` shape.
pub fn matrix_from_json(v: &Value, field: Field, shape: Option<(usize, usize)>, loc: &str) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::parse(loc, "matrix must be an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(loc, format!("row {i} is not an array")))?;
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, x)| scalar_from_json(x, field, &format!("{loc}[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    match shape {
        Some((r, c)) => {
            if out.is_empty() && (r == 0 || c == 0) {
                return Ok(Matrix::zeros(field, r, c));
            }
            if out.len() != r || out.iter().any(|row| row.len() != c) {
                return Err(Error::parse(loc, format!("expected a {r}×{c} matrix")));
            }
            Matrix::from_rows_shaped(field, r, c, out)
        }
        None => Matrix::from_rows(field, out).map_err(|e| Error::parse(loc, e.to_string())),
    }
}

fn degree_key(k: &str, loc: &str) -> Result<i32> {
    k.trim()
        .parse()
        .map_err(|_| Error::parse(loc, format!("degree key {k:?} is not an integer")))
}

fn object<'a>(v: &'a Value, key: &str, loc: &str) -> Result<Option<&'a Map<String, Value>>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Object(m)) => Ok(Some(m)),
        Some(_) => Err(Error::parse(loc, format!("{key} must be an object"))),
    }
}

fn declared_field(v: &Value, field: Option<Field>, loc: &str) -> Result<Field> {
    let declared: Option<Field> = match v.get("field") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse()?),
        Some(_) => return Err(Error::parse(loc, "field must be a string")),
    };
    match (field, declared) {
        (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch(a.name(), b.name())),
        (a, b) => Ok(a.or(b).unwrap_or_default()),
    }
}

fn has_default_labels(c: &Complex) -> bool {
    c.basis()
        .values()
        .flatten()
        .enumerate()
        .all(|(k, l)| *l == (k + 1).to_string())
}

/// `{"field":"Q","degrees":{"-1":2,"0":1},"d":{"-1":[[1],[2]]}}`, plus
/// `"labels"` when they are not the default `1, 2, …`.
pub fn complex_to_json(c: &Complex) -> Value {
    let degrees: Map<String, Value> = c.basis().iter().map(|(i, v)| (i.to_string(), json!(v.len()))).collect();
    let d: Map<String, Value> = c
        .differentials()
        .iter()
        .map(|(i, m)| (i.to_string(), matrix_to_json(m)))
        .collect();
    let mut out = json!({"field": c.field().to_string(), "degrees": degrees, "d": d});
    if !has_default_labels(c) {
        let labels: Map<String, Value> = c.basis().iter().map(|(i, v)| (i.to_string(), json!(v))).collect();
        out["labels"] = Value::Object(labels);
    }
    out
}

pub fn complex_from_json(v: &Value, field: Option<Field>) -> Result<Complex> {
    let loc = "complex";
    let field = declared_field(v, field, loc)?;
    let degs = object(v, "degrees", loc)?.ok_or_else(|| Error::parse(loc, "missing degrees"))?;
    let mut dims = Vec::new();
    for (k, n) in degs {
        let i = degree_key(k, &format!("{loc}.degrees"))?;
        let n = n
            .as_u64()
            .ok_or_else(|| Error::parse(format!("{loc}.degrees.{k}"), "dimension must be a nonnegative integer"))?;
        dims.push((i, n as usize));
    }
    dims.sort();
    let dim = |i: i32| dims.iter().find(|(j, _)| *j == i).map_or(0, |(_, n)| *n);
    let mut diffs = Vec::new();
    if let Some(d) = object(v, "d", loc)? {
        for (k, m) in d {
            let i = degree_key(k, &format!("{loc}.d"))?;
            let m = matrix_from_json(m, field, Some((dim(i + 1), dim(i))), &format!("{loc}.d.{k}"))?;
            diffs.push((i, m));
        }
    }
    let auto = Complex::from_dims(field, &dims, vec![]).map_err(|e| Error::parse(loc, e.to_string()))?;
    let mut basis = auto.basis().clone();
    if let Some(labels) = object(v, "labels", loc)? {
        for (k, list) in labels {
            let i = degree_key(k, &format!("{loc}.labels"))?;
            let l: Vec<String> = serde_json::from_value(list.clone())
                .map_err(|_| Error::parse(format!("{loc}.labels.{k}"), "labels must be strings"))?;
            if l.len() != dim(i) {
                return Err(Error::parse(format!("{loc}.labels.{k}"), format!("expected {} labels", dim(i))));
            }
            basis.insert(i, l);
        }
    }
    Complex::new(field, basis, diffs.into_iter().collect())
}

fn blocks_to_json(blocks: &BTreeMap<i32, Matrix>) -> Value {
    Value::Object(
        blocks
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| (i.to_string(), matrix_to_json(m)))
            .collect(),
    )
}

fn blocks_from_json(
    v: Option<&Map<String, Value>>,
    field: Field,
    shape: impl Fn(i32) -> (usize, usize),
    loc: &str,
) -> Result<BTreeMap<i32, Matrix>> {
    let mut out = BTreeMap::new();
    for (k, m) in v.into_iter().flatten() {
        let i = degree_key(k, loc)?;
        out.insert(i, matrix_from_json(m, field, Some(shape(i)), &format!("{loc}.{k}"))?);
    }
    Ok(out)
}

/// `{"shift":0,"blocks":{"0":[[1,0],[0,1]]},"complex":{…}}`; the block under
/// key `i` pairs degree `i` with degree `−shift−i`.
pub fn form_to_json(q: &QuadraticForm) -> Value {
    json!({
        "shift": q.shift(),
        "blocks": blocks_to_json(q.blocks()),
        "complex": complex_to_json(q.carrier()),
    })
}

/// Carrier from the embedded `"complex"`, else `carrier`, else a single
/// degree-0 block read as a Gram matrix.
pub fn form_from_json(v: &Value, carrier: Option<&Complex>, field: Option<Field>) -> Result<QuadraticForm> {
    let loc = "form";
    let shift = v
        .get("shift")
        .map(|s| s.as_i64().ok_or_else(|| Error::parse(loc, "shift must be an integer")))
        .transpose()?
        .unwrap_or(0) as i32;
    let embedded = match v.get("complex") {
        None | Some(Value::Null) => None,
        Some(c) => Some(complex_from_json(c, field.or(carrier.map(Complex::field)))?),
    };
    let blocks_obj = object(v, "blocks", loc)?;
    let c = match (embedded, carrier) {
        (Some(e), Some(c)) if &e != c => {
            return Err(Error::parse(loc, "embedded complex differs from the given one"));
        }
        (Some(e), _) => e,
        (None, Some(c)) => c.clone(),
        (None, None) => {
            let f = declared_field(v, field, loc)?;
            let only = blocks_obj.and_then(|m| m.get("0"));
            let n = only.and_then(Value::as_array).map_or(0, Vec::len);
            if shift != 0 || blocks_obj.is_some_and(|m| m.keys().any(|k| k.trim() != "0")) {
                return Err(Error::parse(loc, "a form without \"complex\" must be a shift-0 Gram matrix in degree 0"));
            }
            Complex::concentrated(f, 0, n)
        }
    };
    let f = c.field();
    let blocks = blocks_from_json(blocks_obj, f, |i| (c.dim(i), c.dim(-shift - i)), "form.blocks")?;
    make_form(&c, shift, blocks)
}

/// `{"degree":0,"blocks":{"0":[[…]]},"source":{…},"target":{…}}`.
pub fn chain_map_to_json(f: &ChainMap) -> Value {
    json!({
        "degree": f.degree(),
        "blocks": blocks_to_json(f.blocks()),
        "source": complex_to_json(f.source()),
        "target": complex_to_json(f.target()),
    })
}

pub fn chain_map_from_json(v: &Value, field: Option<Field>) -> Result<ChainMap> {
    let loc = "map";
    let src = complex_from_json(v.get("source").ok_or_else(|| Error::parse(loc, "missing source"))?, field)?;
    let tgt = complex_from_json(
        v.get("target").ok_or_else(|| Error::parse(loc, "missing target"))?,
        Some(src.field()),
    )?;
    let r = v.get("degree").and_then(Value::as_i64).unwrap_or(0) as i32;
    let blocks = blocks_from_json(object(v, "blocks", loc)?, src.field(), |i| (tgt.dim(i + r), src.dim(i)), "map.blocks")?;
    ChainMap::new(src, tgt, r, blocks)
}

pub fn pairing_to_json(p: &Pairing) -> Value {
    json!({"shift": p.shift(), "blocks": blocks_to_json(p.blocks())})
}

/// `{"form_shift":s,"blocks":{…}}` on a given carrier; blocks pair degree
/// `i` with `1−s−i`.
pub fn witness_from_json(v: &Value, carrier: &Complex) -> Result<HomotopyWitness> {
    let loc = "witness";
    let s = v
        .get("form_shift")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::parse(loc, "missing integer form_shift"))? as i32;
    let blocks = blocks_from_json(
        object(v, "blocks", loc)?,
        carrier.field(),
        |i| (carrier.dim(i), carrier.dim(1 - s - i)),
        "witness.blocks",
    )?;
    HomotopyWitness::new(carrier, s, blocks)
}

pub fn witness_to_json(h: &HomotopyWitness) -> Value {
    json!({"form_shift": h.form_shift(), "blocks": blocks_to_json(h.pairing().blocks())})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::hyperbolic;

    #[test]
    fn complex_round_trip() {
        let f = Field::Rational;
        let c = Complex::two_term(f, -1, Matrix::from_i64(f, &[&[1, 2]])).unwrap();
        let j = complex_to_json(&c);
        assert_eq!(j["degrees"]["-1"], json!(2));
        assert_eq!(complex_from_json(&j, None).unwrap(), c);
    }

    #[test]
    fn form_round_trip_and_gram_shorthand() {
        let f = Field::Rational;
        let h = hyperbolic(&Complex::concentrated(f, 0, 1), 0, 0).unwrap();
        let j = form_to_json(&h);
        assert_eq!(form_from_json(&j, None, None).unwrap(), h);
        let g = json!({"shift":0,"blocks":{"0":[[1,0],[0,"1/2"]]}});
        let q = form_from_json(&g, None, None).unwrap();
        assert_eq!(q.value(0, 1, 1), Scalar::from_frac(1, 2));
    }

    #[test]
    fn malformed_inputs() {
        let e = complex_from_json(&json!({"degrees":{"x":1}}), None).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = form_from_json(&json!({"blocks":{"0":[[1,2],[3,4]]}}), None, None).unwrap_err();
        assert!(matches!(e, Error::Symmetry { .. }));
        assert!(scalar_from_json(&json!(0.5), Field::Rational, "x").is_err());
    }
}
