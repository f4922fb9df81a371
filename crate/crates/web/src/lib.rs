//! Browser bindings: each call takes plain strings and numbers and
//! returns the same JSON documents the command-line tool prints.

use wasm_bindgen::prelude::*;

use hhh::braid::BraidWord;
use hhh::hecke::homfly;
use hhh::hilb::prediction_json;
use hhh::pipeline::{compute_hhh, render_json, verify_symmetry, Arithmetic, HHHOptions};

fn braid(strands: usize, word: &str) -> Result<BraidWord, String> {
    BraidWord::parse(strands, word).map_err(|e| e.to_string())
}

/// HHH of the closure of `word` on `strands` strands, computed up to raw
/// q-degree `window`, with the q ↦ t/q check for certified knots.
pub fn hhh_document(strands: usize, word: &str, window: i32) -> Result<String, String> {
    let w = braid(strands, word)?;
    let opts = HHHOptions { window, arithmetic: Arithmetic::Modular, ..Default::default() };
    let res = compute_hhh(&w, &opts).map_err(|e| e.to_string())?;
    let mut doc = res.to_json();
    if res.certified && res.stats.components == 1 {
        let sym = verify_symmetry(&res).map_err(|e| e.to_string())?;
        doc["symmetric"] = serde_json::Value::Bool(sym.symmetric);
    }
    if let Some(r) = &res.reduced {
        doc["reduced_text"] = serde_json::Value::String(r.to_string());
    }
    Ok(render_json(&doc))
}

pub fn homfly_document(strands: usize, word: &str) -> Result<String, String> {
    let w = braid(strands, word)?;
    let h = homfly(&w);
    let mut doc = serde_json::to_value(h.to_document(&w)).map_err(|e| e.to_string())?;
    doc["text"] = serde_json::Value::String(h.to_string());
    Ok(render_json(&doc))
}

pub fn hilb_document(n: usize, k: u32, cutoff: i32) -> Result<String, String> {
    if n == 0 || n > 4 {
        return Err("n must be between 1 and 4".into());
    }
    let mut doc = prediction_json(n, k, cutoff).map_err(|e| e.to_string())?;
    let s = hhh::hilb::torus_prediction(n, k, cutoff).map_err(|e| e.to_string())?;
    doc["text"] = serde_json::Value::String(s.to_string());
    Ok(render_json(&doc))
}

#[wasm_bindgen]
pub fn hhh(strands: usize, word: &str, window: i32) -> Result<String, JsError> {
    hhh_document(strands, word, window).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = homfly)]
pub fn homfly_js(strands: usize, word: &str) -> Result<String, JsError> {
    homfly_document(strands, word).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hilb(n: usize, k: u32, cutoff: i32) -> Result<String, JsError> {
    hilb_document(n, k, cutoff).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents() {
        let d: serde_json::Value = serde_json::from_str(&hhh_document(2, "1 1 1", 16).unwrap()).unwrap();
        assert_eq!(d["symmetric"], true);
        assert_eq!(d["reduced"].as_array().unwrap().len(), 3);
        let d: serde_json::Value = serde_json::from_str(&homfly_document(2, "1 1 1").unwrap()).unwrap();
        assert_eq!(d["terms"].as_array().unwrap().len(), 3);
        let d: serde_json::Value = serde_json::from_str(&hilb_document(2, 1, 10).unwrap()).unwrap();
        assert_eq!(d["series"].as_array().unwrap().len(), 6);
        assert!(hhh_document(2, "3", 16).is_err());
    }
}
