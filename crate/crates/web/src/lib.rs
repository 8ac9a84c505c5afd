//! Browser bindings: JSON in, JSON out.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use enhanced_orbits::canonical::{build_closed, ClosedSeed, NilpotentSeed};
use enhanced_orbits::classify::{descend, is_closed};
use enhanced_orbits::invariants::quotient_map;
use enhanced_orbits::rep::EnhancedPoint;

fn fail(code: &str, message: impl ToString) -> String {
    json!({"error": {"code": code, "message": message.to_string()}}).to_string()
}

fn parse_seed(text: &str) -> Result<ClosedSeed, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| fail("schema", e))?;
    let seed = if v.get("k").is_some() {
        serde_json::from_value::<NilpotentSeed>(v).map(ClosedSeed::nilpotent)
    } else {
        serde_json::from_value::<ClosedSeed>(v)
    };
    seed.map_err(|e| fail("schema", e))
}

/// The canonical point of a seed together with its invariants.
pub fn canonical_json(seed: &str) -> Result<String, String> {
    let seed = parse_seed(seed)?;
    let p = build_closed(&seed).map_err(|e| fail(e.code(), e))?;
    Ok(json!({"point": p, "invariants": quotient_map(&p), "text": p.to_string()}).to_string())
}

/// Closedness report for a point with an embedded group.
pub fn classify_json(point: &str) -> Result<String, String> {
    let p: EnhancedPoint = serde_json::from_str(point).map_err(|e| fail("schema", e))?;
    let r = is_closed(&p).map_err(|e| fail(e.code(), e))?;
    Ok(serde_json::to_string(&r).expect("reports serialize"))
}

/// Descendant report of a seed.
pub fn descend_json(seed: &str) -> Result<String, String> {
    let seed = parse_seed(seed)?;
    let r = descend(&seed).map_err(|e| fail(e.code(), e))?;
    let factors: Vec<String> = r.factors.iter().map(ToString::to_string).collect();
    let mut v = serde_json::to_value(&r).expect("reports serialize");
    v["stabilizer"] = json!(factors.join(" x "));
    Ok(v.to_string())
}

#[wasm_bindgen]
pub fn canonical(seed: &str) -> Result<String, JsValue> {
    canonical_json(seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(point: &str) -> Result<String, JsValue> {
    classify_json(point).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = descend)]
pub fn descend_seed(seed: &str) -> Result<String, JsValue> {
    descend_json(seed).map_err(|e| JsValue::from_str(&e))
}
