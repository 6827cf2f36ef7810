//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every entry point returns a JSON string: `{"ok": true, ...}` on success,
//! `{"ok": false, "error": "..."}` otherwise.

use gradedlie::derivops::{ihara_bracket, RankTwoAlgebra};
use gradedlie::freelie::{witt_dims, GeneratorSpec};
use gradedlie::lieco::ce_cohomology;
use gradedlie::textfmt::{parse_element, parse_presentation};
use gradedlie::wcomp::{motivic_generator_spec, FieldSignature, Variant};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest weight magnitude the page may request.
const MAX_WEIGHT: i64 = 30;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(Value::Object(mut m)) => {
            m.insert("ok".into(), true.into());
            Value::Object(m).to_string()
        }
        Ok(v) => json!({"ok": true, "value": v}).to_string(),
        Err(e) => json!({"ok": false, "error": e}).to_string(),
    }
}

fn check_bound(w: i64) -> Result<(), String> {
    if w.abs() > MAX_WEIGHT {
        return Err(format!("weight bound is limited to {MAX_WEIGHT} in the browser"));
    }
    Ok(())
}

/// Generators and graded dimensions of the free Lie algebra attached to a
/// field signature.
#[wasm_bindgen]
pub fn motivic_dims(r1: u32, r2: u32, s: u32, weight_bound: i32) -> String {
    respond((|| {
        let w = weight_bound as i64;
        check_bound(w)?;
        let sig = FieldSignature::new(r1, r2, s, Variant::Soule).map_err(|e| e.to_string())?;
        let spec = motivic_generator_spec(&sig, w).map_err(|e| e.to_string())?;
        let dims = witt_dims(&spec, w).map_err(|e| e.to_string())?;
        let gens: Vec<Value> = (0..spec.len())
            .map(|i| json!({"label": spec.label(i), "weight": -(spec.degree(i) as i64)}))
            .collect();
        let rows: Vec<Value> = dims
            .iter()
            .filter(|(w, _)| w % 2 == 0)
            .map(|(w, d)| json!({"weight": w, "dim": d}))
            .collect();
        Ok(json!({"signature": sig.to_string(), "generators": gens, "dims": rows}))
    })())
}

/// Dimensions of the free Lie algebra on generators of the given
/// comma-separated weights.
#[wasm_bindgen]
pub fn free_dims(weights: &str, weight_bound: i32) -> String {
    respond((|| {
        let w = weight_bound as i64;
        check_bound(w)?;
        let ws = weights
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| format!("`{s}` is not an integer weight")))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = GeneratorSpec::from_weights(&ws).map_err(|e| e.to_string())?;
        let dims = witt_dims(&spec, w).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = dims.iter().map(|(w, d)| json!({"weight": w, "dim": d})).collect();
        Ok(json!({"dims": rows}))
    })())
}

/// Lie bracket and Ihara bracket of two elements of the free Lie algebra
/// on `x, y`, written as `coef [bracket] ; ...`.
#[wasm_bindgen]
pub fn brackets(a: &str, b: &str) -> String {
    respond((|| {
        let p = RankTwoAlgebra::get();
        let parse = |s: &str| parse_element(p.algebra(), s).map_err(|e| e.to_string());
        let (a, b) = (parse(a)?, parse(b)?);
        let lie = p.bracket(&a, &b).map_err(|e| e.to_string())?;
        let ihara = ihara_bracket(&a, &b).map_err(|e| e.to_string())?;
        Ok(json!({
            "a": a.to_string(),
            "b": b.to_string(),
            "lie": lie.to_string(),
            "lie_weight": lie.weight(),
            "ihara": ihara.to_string(),
            "ihara_weight": ihara.weight(),
        }))
    })())
}

/// Cohomology of a presentation in the text file format.
#[wasm_bindgen]
pub fn cohomology(presentation: &str, max_degree: u32) -> String {
    respond((|| {
        let pres = parse_presentation(presentation, None).map_err(|e| e.to_string())?;
        check_bound(pres.weight_bound())?;
        let r = ce_cohomology(&pres, max_degree as usize, pres.weight_bound()).map_err(|e| e.to_string())?;
        let h: Vec<Value> = r
            .h
            .iter()
            .enumerate()
            .map(|(m, t)| {
                let nz: Vec<Value> = t.nonzero().map(|(w, d)| json!({"weight": w, "dim": d})).collect();
                json!({"degree": m, "nonzero": nz})
            })
            .collect();
        Ok(json!({"algebra_dims": r.algebra_dims, "h": h}))
    })())
}
