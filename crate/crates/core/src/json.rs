//! JSON encodings of the library's values.
//!
//! Fields are `"Q"` or `{"Fp": p}`, elements are decimal strings, and
//! polynomials are `{"coeffs": [...]}` in ascending degree. Polynomials are
//! also accepted in the human syntax `"t^3-t"`. Values that carry no field
//! (polynomials, elements, bare Gram arrays) are decoded against a field
//! supplied by the caller.

use serde_json::{json, Map, Value};

use crate::algebra::FiniteAlgebra;
use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::euler::EulerDatum;
use crate::field::{Field, FieldElem};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::quadratic::{DiagForm, QuadSpace};
use crate::rigidity::{HomotopyPencil, NilpotentSpace};
use crate::witt::WittInvariants;

fn bad(what: &'static str, v: &Value, reason: &str) -> Error {
    Error::Parse {
        what,
        input: v.to_string(),
        reason: reason.to_string(),
    }
}

fn object<'a>(what: &'static str, v: &'a Value) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(what, v, "expected an object"))
}

fn member<'a>(what: &'static str, v: &'a Value, key: &str) -> Result<&'a Value> {
    object(what, v)?
        .get(key)
        .ok_or_else(|| bad(what, v, &format!("missing key {key:?}")))
}

fn array<'a>(what: &'static str, v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v, "expected an array"))
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rationals => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Rationals),
        Value::Object(m) if m.len() == 1 => {
            let p = m
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field", v, "expected {\"Fp\": p}"))?;
            Field::prime(p)
        }
        _ => Err(bad("field", v, "expected \"Q\" or {\"Fp\": p}")),
    }
}

pub fn elem_to_json(a: &FieldElem) -> Value {
    Value::String(a.to_string())
}

/// Accepts `"a"`, `"a/b"` or a JSON integer.
pub fn elem_from_json(field: Field, v: &Value) -> Result<FieldElem> {
    match v {
        Value::String(s) => field.parse_elem(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse_elem(&n.to_string()),
        _ => Err(bad("field element", v, "expected a string or an integer")),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(elem_to_json).collect::<Vec<_>>() })
}

/// Accepts `{"coeffs": [...]}` or a string in the human syntax.
pub fn poly_from_json(field: Field, v: &Value) -> Result<Poly> {
    match v {
        Value::String(s) => Poly::parse_human(field, s),
        Value::Object(_) => {
            let coeffs = array("polynomial", member("polynomial", v, "coeffs")?)?
                .iter()
                .map(|c| elem_from_json(field, c))
                .collect::<Result<Vec<_>>>()?;
            Poly::new(field, coeffs)
        }
        _ => Err(bad("polynomial", v, "expected {\"coeffs\": [...]} or a string like \"t^2+1\"")),
    }
}

fn matrix_to_json<T: Clone>(m: &Matrix<T>, entry: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(&entry).collect()))
            .collect(),
    )
}

fn matrix_from_json<T: Clone>(
    what: &'static str,
    v: &Value,
    entry: impl Fn(&Value) -> Result<T>,
) -> Result<Matrix<T>> {
    let rows = array(what, v)?
        .iter()
        .map(|r| array(what, r)?.iter().map(&entry).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).ok_or_else(|| bad(what, v, "rows have different lengths"))
}

pub fn elem_matrix_to_json(m: &Matrix<FieldElem>) -> Value {
    matrix_to_json(m, elem_to_json)
}

pub fn elem_matrix_from_json(field: Field, v: &Value) -> Result<Matrix<FieldElem>> {
    matrix_from_json("matrix", v, |e| elem_from_json(field, e))
}

pub fn quad_to_json(s: &QuadSpace) -> Value {
    json!({ "field": field_to_json(s.field()), "gram": elem_matrix_to_json(s.gram()) })
}

/// Accepts `{"field": ..., "gram": [[...]]}` or a bare Gram array; a missing
/// field falls back to `default`.
pub fn quad_from_json(default: Field, v: &Value) -> Result<QuadSpace> {
    let (field, gram) = match v {
        Value::Array(_) => (default, v),
        _ => {
            let field = match object("quadratic space", v)?.get("field") {
                Some(f) => field_from_json(f)?,
                None => default,
            };
            (field, member("quadratic space", v, "gram")?)
        }
    };
    QuadSpace::new(field, elem_matrix_from_json(field, gram)?)
}

pub fn diag_to_json(d: &DiagForm) -> Value {
    json!({
        "entries": d.entries.iter().map(elem_to_json).collect::<Vec<_>>(),
        "basis_change": elem_matrix_to_json(&d.basis_change),
    })
}

pub fn invariants_to_json(inv: &WittInvariants) -> Value {
    serde_json::to_value(inv).expect("plain data")
}

pub fn invariants_from_json(v: &Value) -> Result<WittInvariants> {
    serde_json::from_value(v.clone()).map_err(|e| bad("witt invariants", v, &e.to_string()))
}

pub fn algebra_to_json(e: &FiniteAlgebra) -> Value {
    json!({ "field": field_to_json(e.field()), "modulus": poly_to_json(e.modulus()) })
}

pub fn algebra_from_json(default: Field, v: &Value) -> Result<FiniteAlgebra> {
    let field = match object("algebra", v)?.get("field") {
        Some(f) => field_from_json(f)?,
        None => default,
    };
    FiniteAlgebra::new(poly_from_json(field, member("algebra", v, "modulus")?)?)
}

pub fn poly_matrix_to_json(m: &Matrix<Poly>) -> Value {
    matrix_to_json(m, poly_to_json)
}

pub fn correspondence_to_json(c: &Correspondence) -> Value {
    json!({
        "source": algebra_to_json(c.source()),
        "target": algebra_to_json(c.target()),
        "rank": c.rank(),
        "action": poly_matrix_to_json(c.action()),
        "gram": poly_matrix_to_json(c.gram()),
    })
}

/// Decodes and validates a correspondence.
pub fn correspondence_from_json(default: Field, v: &Value) -> Result<Correspondence> {
    const WHAT: &str = "correspondence";
    let source = algebra_from_json(default, member(WHAT, v, "source")?)?;
    let target = algebra_from_json(source.field(), member(WHAT, v, "target")?)?;
    let field = source.field();
    let action = matrix_from_json(WHAT, member(WHAT, v, "action")?, |e| poly_from_json(field, e))?;
    let gram = matrix_from_json(WHAT, member(WHAT, v, "gram")?, |e| poly_from_json(field, e))?;
    if let Some(r) = object(WHAT, v)?.get("rank") {
        if r.as_u64() != Some(action.rows() as u64) {
            return Err(bad(WHAT, v, "rank does not match the action matrix"));
        }
    }
    Correspondence::new(source, target, action, gram)
}

pub fn nilpotent_to_json(s: &NilpotentSpace) -> Value {
    json!({
        "field": field_to_json(s.space().field()),
        "e": poly_to_json(s.e()),
        "n": s.n(),
        "gram": elem_matrix_to_json(s.space().gram()),
    })
}

pub fn nilpotent_from_json(default: Field, v: &Value) -> Result<NilpotentSpace> {
    const WHAT: &str = "nilpotent space";
    let field = match object(WHAT, v)?.get("field") {
        Some(f) => field_from_json(f)?,
        None => default,
    };
    let e = poly_from_json(field, member(WHAT, v, "e")?)?;
    let n = member(WHAT, v, "n")?
        .as_u64()
        .ok_or_else(|| bad(WHAT, v, "n must be a positive integer"))? as usize;
    let gram = elem_matrix_from_json(field, member(WHAT, v, "gram")?)?;
    NilpotentSpace::new(e, n, QuadSpace::new(field, gram)?)
}

pub fn pencil_to_json(p: &HomotopyPencil, samples: &[FieldElem]) -> Value {
    json!({
        "field": field_to_json(p.field()),
        "f0": poly_to_json(&p.f0),
        "f1": poly_to_json(&p.f1),
        "unit": elem_to_json(&p.unit),
        "samples": samples.iter().map(elem_to_json).collect::<Vec<_>>(),
    })
}

/// The pencil and its samples; `None` when the samples key is absent.
pub fn pencil_from_json(default: Field, v: &Value) -> Result<(HomotopyPencil, Option<Vec<FieldElem>>)> {
    const WHAT: &str = "homotopy pencil";
    let obj = object(WHAT, v)?;
    let field = match obj.get("field") {
        Some(f) => field_from_json(f)?,
        None => default,
    };
    let unit = match obj.get("unit") {
        Some(u) => elem_from_json(field, u)?,
        None => field.parse_elem("1")?,
    };
    let pencil = HomotopyPencil::new(
        poly_from_json(field, member(WHAT, v, "f0")?)?,
        poly_from_json(field, member(WHAT, v, "f1")?)?,
        unit,
    )?;
    let samples = obj
        .get("samples")
        .map(|s| array(WHAT, s)?.iter().map(|x| elem_from_json(field, x)).collect())
        .transpose()?;
    Ok((pencil, samples))
}

pub fn euler_datum_to_json(d: &EulerDatum) -> Value {
    let target = match &d.target {
        None => Value::Null,
        Some((ey, g)) => json!({ "modulus": poly_to_json(ey.modulus()), "g": poly_to_json(g) }),
    };
    json!({
        "field": field_to_json(d.f.field()),
        "f": poly_to_json(&d.f),
        "unit": elem_to_json(&d.unit),
        "target": target,
    })
}

pub fn euler_datum_from_json(default: Field, v: &Value) -> Result<EulerDatum> {
    const WHAT: &str = "euler datum";
    let obj = object(WHAT, v)?;
    let field = match obj.get("field") {
        Some(f) => field_from_json(f)?,
        None => default,
    };
    let f = poly_from_json(field, member(WHAT, v, "f")?)?;
    let unit = match obj.get("unit") {
        Some(u) => elem_from_json(field, u)?,
        None => field.parse_elem("1")?,
    };
    let target = match obj.get("target") {
        None | Some(Value::Null) => None,
        Some(t) => {
            let ey = FiniteAlgebra::new(poly_from_json(field, member(WHAT, t, "modulus")?)?)?;
            Some((ey, poly_from_json(field, member(WHAT, t, "g")?)?))
        }
    };
    EulerDatum::new(f, unit, target)
}
