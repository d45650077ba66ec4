//! JSON input and output: field descriptors, element literals, lattice
//! files, BONG symbols and invariant dumps.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bong::BongSymbol;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::invariants::{alpha_vector, bong_weight_orders};
use crate::lattice::{GramLattice, JordanData};

fn parse_err(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Parse {
        what,
        detail: detail.into(),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err("field descriptor", format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err("field descriptor", format!("{s:?} is not an integer"))),
        other => Err(parse_err("field descriptor", format!("bad coefficient {other}"))),
    }
}

/// Parse {"e": 1} or {"e": k, "poly": [c0, …, c_{k−1}]}. `guard` overrides
/// the default number of guard digits.
pub fn parse_field(v: &Value, guard: Option<u32>) -> Result<Field> {
    let e = v
        .get("e")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("field descriptor", "missing integer \"e\""))? as usize;
    let poly = match v.get("poly") {
        Some(Value::Array(cs)) => cs.iter().map(parse_int).collect::<Result<Vec<_>>>()?,
        Some(other) => return Err(parse_err("field descriptor", format!("bad poly {other}"))),
        None if e == 1 => vec![BigInt::from(-2)],
        None => return Err(parse_err("field descriptor", "\"poly\" is required when e > 1")),
    };
    let guard = guard.unwrap_or(crate::field::DEFAULT_GUARD);
    Field::with_guard(e, poly, guard)
}

pub fn field_descriptor(f: &Field) -> Value {
    let poly: Vec<String> = f.poly().iter().map(|c| c.to_string()).collect();
    json!({"e": f.e(), "poly": poly})
}

/// A rational string "p/q" or an array of them as π-power coefficients.
pub fn parse_literal(f: &Field, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) => f.parse(&n.to_string()),
        Value::Array(parts) => {
            let strs = parts
                .iter()
                .map(|p| match p {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(parse_err("element literal", format!("bad coefficient {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&str> = strs.iter().map(String::as_str).collect();
            f.parse_coeffs(&refs)
        }
        other => Err(parse_err("element literal", format!("{other}"))),
    }
}

/// {"field": <descriptor>, "gram": [[literal, …], …]}.
pub fn parse_lattice(v: &Value, guard: Option<u32>) -> Result<GramLattice> {
    let field = parse_field(
        v.get("field")
            .ok_or_else(|| parse_err("lattice", "missing \"field\""))?,
        guard,
    )?;
    let rows = v
        .get("gram")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("lattice", "missing \"gram\" array"))?;
    let gram = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("lattice", "gram rows must be arrays"))?
                .iter()
                .map(|x| parse_literal(&field, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GramLattice::new(&field, gram)
}

pub fn parse_lattice_str(s: &str, guard: Option<u32>) -> Result<GramLattice> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err("lattice", e.to_string()))?;
    parse_lattice(&v, guard)
}

pub fn lattice_json(l: &GramLattice) -> Value {
    let gram: Vec<Vec<Value>> = l
        .gram()
        .iter()
        .map(|r| r.iter().map(FieldElement::literal).collect())
        .collect();
    json!({"field": field_descriptor(l.field()), "gram": gram})
}

fn residue_literal(coeffs: &[u128]) -> Value {
    if coeffs.len() == 1 {
        Value::String(coeffs[0].to_string())
    } else {
        Value::Array(coeffs.iter().map(|c| Value::String(c.to_string())).collect())
    }
}

/// {"R": [...], "units": [...], "dets": [...]}: unit parts modulo π^{2e+1}
/// and the square class representatives of a_1⋯a_i.
pub fn symbol_json(s: &BongSymbol) -> Result<Value> {
    let f = &s.field;
    let digits = f.class_digits();
    let units = s
        .a
        .iter()
        .map(|a| Ok(residue_literal(&a.unit_residue(digits)?.coeffs)))
        .collect::<Result<Vec<_>>>()?;
    let mut prod = 0usize;
    let mut dets = Vec::with_capacity(s.n());
    for a in &s.a {
        prod = f.class_mul(prod, f.class_index(a)?);
        dets.push(f.class_rep(prod).literal());
    }
    Ok(json!({"R": s.r(), "units": units, "dets": dets}))
}

/// {"R", "alpha2", "w_ord", "f_ord", "f_above_2e"} for a good BONG.
pub fn invariant_dump(s: &BongSymbol) -> Result<Value> {
    let alpha = alpha_vector(s)?;
    let wo = bong_weight_orders(s)?;
    let f_ord: Vec<i64> = wo.f.iter().map(|f| f.value).collect();
    let above: Vec<bool> = wo.f.iter().map(|f| f.above_2e).collect();
    Ok(json!({
        "R": s.r(),
        "alpha2": alpha.alpha2,
        "w_ord": wo.w,
        "f_ord": f_ord,
        "f_above_2e": above,
    }))
}

/// Jordan invariants in the same spirit as [`invariant_dump`].
pub fn jordan_dump(j: &JordanData) -> Value {
    json!({
        "t": j.t,
        "r": j.r,
        "dims": j.dims,
        "u": j.u,
        "w_ord": j.w,
        "f_ord": j.f,
    })
}
