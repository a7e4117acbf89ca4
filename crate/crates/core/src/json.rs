//! JSON documents for crystals, Newton polygons, ring specs and lattices.
//!
//! Numbers are exact integers of any size; fractional or exponent notation is
//! rejected. Output is canonical, so serialise ∘ parse is the identity on
//! emitted documents.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::crystal::{CyclicFCrystal, ExponentCycle, NewtonPolygon, Slope};
use crate::witt::{make_ring, WittElement, WittRing};
use crate::xilattice::{XiElement, XiLattice, XiModuleSpec};
use crate::Error as CrateError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("{path}: {reason}")]
    Schema { path: String, reason: String },
}

fn schema(path: &str, reason: impl Into<String>) -> JsonError {
    JsonError::Schema { path: path.to_string(), reason: reason.into() }
}

pub fn parse_document(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))
}

/// An exact JSON integer.
pub fn int(v: impl Into<BigInt>) -> Value {
    let v: BigInt = v.into();
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal is a JSON number"))
}

/// `{"num": n, "den": d}`.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Value {
    json!({"num": int(num), "den": int(den)})
}

pub fn get_int(v: &Value, path: &str) -> Result<BigInt, JsonError> {
    let Value::Number(n) = v else { return Err(schema(path, "expected an integer")) };
    let text = n.to_string();
    if text.contains(['.', 'e', 'E']) {
        return Err(schema(path, format!("{text} is not an integer")));
    }
    BigInt::from_str(&text).map_err(|_| schema(path, format!("{text} is not an integer")))
}

fn get_u64(v: &Value, path: &str) -> Result<u64, JsonError> {
    get_int(v, path)?.to_u64().ok_or_else(|| schema(path, "expected a non-negative 64-bit integer"))
}

fn get_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn get_field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    let map = obj.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    map.get(key).ok_or_else(|| schema(path, format!("missing field \"{key}\"")))
}

fn check_keys(obj: &Value, allowed: &[&str], path: &str) -> Result<(), JsonError> {
    let map = obj.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(path, format!("unknown field \"{k}\""))),
        None => Ok(()),
    }
}

/// `{"cycles": [[e_1, …], …]}` with cycles in canonical order.
pub fn crystal_to_json(c: &CyclicFCrystal) -> Value {
    let cycles: Vec<Value> = c
        .canonical()
        .cycles()
        .iter()
        .map(|cy| Value::Array(cy.exponents().iter().map(|e| int(e.clone())).collect()))
        .collect();
    json!({ "cycles": cycles })
}

pub fn crystal_from_json(v: &Value) -> Result<CyclicFCrystal, CrateError> {
    check_keys(v, &["cycles"], "$")?;
    let cycles = get_array(get_field(v, "cycles", "$")?, "$.cycles")?;
    let mut out = Vec::with_capacity(cycles.len());
    for (i, cy) in cycles.iter().enumerate() {
        let path = format!("$.cycles[{i}]");
        let exps = get_array(cy, &path)?
            .iter()
            .enumerate()
            .map(|(j, e)| get_int(e, &format!("{path}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(ExponentCycle::new(exps)?);
    }
    Ok(CyclicFCrystal::new(out)?)
}

pub fn newton_to_json(nu: &NewtonPolygon) -> Value {
    let slopes: Vec<Value> = nu
        .slopes()
        .iter()
        .map(|(s, m)| json!({"num": int(s.numer().clone()), "den": int(s.denom().clone()), "mult": int(*m as u64)}))
        .collect();
    json!({ "slopes": slopes })
}

pub fn newton_from_json(v: &Value) -> Result<NewtonPolygon, CrateError> {
    check_keys(v, &["slopes"], "$")?;
    let slopes = get_array(get_field(v, "slopes", "$")?, "$.slopes")?;
    let mut out = Vec::with_capacity(slopes.len());
    for (i, s) in slopes.iter().enumerate() {
        let path = format!("$.slopes[{i}]");
        check_keys(s, &["num", "den", "mult"], &path)?;
        let num = get_int(get_field(s, "num", &path)?, &format!("{path}.num"))?;
        let den = get_int(get_field(s, "den", &path)?, &format!("{path}.den"))?;
        let mult = get_u64(get_field(s, "mult", &path)?, &format!("{path}.mult"))?;
        out.push((Slope::new(num, den)?, mult as usize));
    }
    Ok(NewtonPolygon::from_unsorted(out)?)
}

pub fn ring_to_json(ring: &WittRing) -> Value {
    json!({
        "p": int(ring.p()),
        "m": int(ring.degree() as u64),
        "N": int(ring.precision()),
        "modulus": ring.modulus().into_iter().map(int).collect::<Vec<_>>(),
    })
}

fn ring_fields(v: &Value, path: &str) -> Result<Arc<WittRing>, CrateError> {
    let p = get_u64(get_field(v, "p", path)?, &format!("{path}.p"))?;
    let m = get_u64(get_field(v, "m", path)?, &format!("{path}.m"))? as usize;
    let n = get_u64(get_field(v, "N", path)?, &format!("{path}.N"))?;
    let n = u32::try_from(n).map_err(|_| schema(&format!("{path}.N"), "precision too large"))?;
    let modulus = match v.get("modulus") {
        None | Some(Value::Null) => None,
        Some(c) => Some(
            get_array(c, &format!("{path}.modulus"))?
                .iter()
                .enumerate()
                .map(|(i, x)| get_int(x, &format!("{path}.modulus[{i}]")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(make_ring(p, m, n, modulus.as_deref())?)
}

pub fn ring_from_json(v: &Value) -> Result<Arc<WittRing>, CrateError> {
    check_keys(v, &["p", "m", "N", "modulus"], "$")?;
    ring_fields(v, "$")
}

pub fn element_to_json(a: &WittElement) -> Value {
    Value::Array(a.coords().iter().map(|&c| int(c)).collect())
}

pub fn xi_spec_to_json(spec: &XiModuleSpec) -> Value {
    let mut obj = ring_to_json(spec.ring());
    let map = obj.as_object_mut().expect("ring spec is an object");
    map.insert("r".into(), int(spec.r() as u64));
    map.insert("s".into(), int(spec.s()));
    map.insert("e".into(), int(spec.e()));
    obj
}

pub fn xi_spec_from_json(v: &Value, path: &str) -> Result<Arc<XiModuleSpec>, CrateError> {
    check_keys(v, &["p", "m", "N", "r", "s", "e", "modulus"], path)?;
    let ring = ring_fields(v, path)?;
    let r = get_u64(get_field(v, "r", path)?, &format!("{path}.r"))? as usize;
    let s = get_u64(get_field(v, "s", path)?, &format!("{path}.s"))?;
    let e = get_u64(get_field(v, "e", path)?, &format!("{path}.e"))?;
    Ok(XiModuleSpec::new(ring, r, s, e)?)
}

/// `[[coords b_0], …, [coords b_{r−1}], t]`.
pub fn xi_element_to_json(x: &XiElement) -> Value {
    let mut items: Vec<Value> = x.coeffs().iter().map(element_to_json).collect();
    items.push(int(x.shift()));
    Value::Array(items)
}

pub fn xi_element_from_json(spec: &Arc<XiModuleSpec>, v: &Value, path: &str) -> Result<XiElement, CrateError> {
    let items = get_array(v, path)?;
    if items.len() != spec.r() + 1 {
        return Err(schema(path, format!("expected {} coefficient arrays and a shift", spec.r())).into());
    }
    let shift = get_int(&items[spec.r()], &format!("{path}[{}]", spec.r()))?
        .to_i64()
        .ok_or_else(|| schema(path, "shift out of range"))?;
    let mut coeffs = Vec::with_capacity(spec.r());
    for (i, c) in items[..spec.r()].iter().enumerate() {
        let cpath = format!("{path}[{i}]");
        let coords = get_array(c, &cpath)?
            .iter()
            .enumerate()
            .map(|(j, x)| get_int(x, &format!("{cpath}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        coeffs.push(spec.ring().element_big(&coords)?);
    }
    Ok(XiElement::new(spec, shift, coeffs)?)
}

pub fn lattice_to_json(l: &XiLattice) -> Value {
    json!({
        "spec": xi_spec_to_json(l.spec()),
        "generators": l.generators().iter().map(xi_element_to_json).collect::<Vec<_>>(),
    })
}

pub fn lattice_from_json(v: &Value) -> Result<XiLattice, CrateError> {
    check_keys(v, &["spec", "generators"], "$")?;
    let spec = xi_spec_from_json(get_field(v, "spec", "$")?, "$.spec")?;
    let gens = get_array(get_field(v, "generators", "$")?, "$.generators")?
        .iter()
        .enumerate()
        .map(|(i, g)| xi_element_from_json(&spec, g, &format!("$.generators[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(XiLattice::new(&spec, gens)?)
}

/// Sorted-key object from pairs, for hand-assembled reports.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
