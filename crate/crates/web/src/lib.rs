//! Browser bindings. Every function takes plain strings and returns a JSON string.

use goldie_core::conditions::{cond2_witness, cond2prime_witness, klyachko_exponent, klyachko_verify};
use goldie_core::group::{Group, GroupElement};
use goldie_core::ring::RingInstance;
use goldie_core::scalar::Field;
use goldie_core::suite::parse_group_spec;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn group(spec: &str) -> Result<Group, String> {
    parse_group_spec(spec.trim()).map_err(|e| e.to_string())
}

fn element(g: &Group, word: &str) -> Result<GroupElement, String> {
    g.parse_word(word).map_err(|e| e.to_string())
}

/// Normal form, inverse and order of a word.
pub fn normalize(group_spec: &str, word: &str) -> Result<Value, String> {
    let g = group(group_spec)?;
    let x = element(&g, word)?;
    let order = g.element_order(&x, 10_000);
    Ok(json!({
        "group": g.name(),
        "normal_form": g.format(&x),
        "inverse": g.format(&g.inverse(&x)),
        "order": order,
    }))
}

/// Support patterns of `M_2(k[t])(e, g)`, `deg t = h`, at every degree of word length at most `radius`.
pub fn components(group_spec: &str, g_word: &str, h_word: &str, radius: usize) -> Result<Value, String> {
    let gr = group(group_spec)?;
    let (g, h) = (element(&gr, g_word)?, element(&gr, h_word)?);
    let inst = RingInstance::counterexample(gr.clone(), g, h, Field::Rational).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for d in gr.ball(radius.min(6)) {
        let p = inst.component_pattern(&d).map_err(|e| e.to_string())?;
        if !p.is_empty() {
            rows.push(json!({"degree": gr.format(&d), "pattern": p.to_string()}));
        }
    }
    Ok(json!({"instance": inst.name(), "components": rows}))
}

/// Least `n` with `g h^n = h^n g`, least `(m, n)` with `g h^m = h^n g`,
/// and for the restricted dihedral product the closed-form exponent.
pub fn search(group_spec: &str, g_word: &str, h_word: &str, n_max: u64) -> Result<Value, String> {
    let gr = group(group_spec)?;
    let (g, h) = (element(&gr, g_word)?, element(&gr, h_word)?);
    let n_max = n_max.clamp(1, 4096);
    let c2 = cond2_witness(&gr, &g, &h, n_max).map_err(|e| e.to_string())?;
    let c2p = cond2prime_witness(&gr, &g, &h, n_max, n_max).map_err(|e| e.to_string())?;
    let mut out = json!({
        "cond2": c2.to_json(|w| w.to_json(&gr)),
        "cond2prime": c2p.to_json(|w| w.to_json(&gr)),
    });
    if let (GroupElement::Restricted(a), GroupElement::Restricted(b)) = (&g, &h) {
        out["klyachko"] = json!({"n": klyachko_exponent(a), "verified": klyachko_verify(a, b)});
    }
    Ok(out)
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = normalizeWord)]
pub fn normalize_word(group_spec: &str, word: &str) -> Result<String, JsError> {
    to_js(normalize(group_spec, word))
}

#[wasm_bindgen(js_name = componentPatterns)]
pub fn component_patterns(group_spec: &str, g: &str, h: &str, radius: usize) -> Result<String, JsError> {
    to_js(components(group_spec, g, h, radius))
}

#[wasm_bindgen(js_name = conditionSearch)]
pub fn condition_search(group_spec: &str, g: &str, h: &str, n_max: u32) -> Result<String, JsError> {
    to_js(search(group_spec, g, h, n_max as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        let v = normalize("d-infty", "s r s r^3").unwrap();
        assert_eq!(v["normal_form"], "r^2");
        assert_eq!(v["inverse"], "r^-2");
        let v = normalize("S3", "a b a b").unwrap();
        assert_eq!(v["normal_form"], "e");
        assert!(normalize("S3", "q").is_err());
        assert!(normalize("nope", "e").is_err());
    }

    #[test]
    fn dihedral_components() {
        let v = components("d-infty", "s", "r", 1).unwrap();
        let rows = v["components"].as_array().unwrap();
        let find = |d: &str| rows.iter().find(|r| r["degree"] == d).unwrap()["pattern"].clone();
        assert_eq!(find("e"), "[[k, 0], [0, k]]");
        assert_eq!(find("s"), "[[0, k], [k, 0]]");
    }

    #[test]
    fn searches() {
        let v = search("S3", "(12)", "(123)", 10).unwrap();
        assert_eq!(v["cond2"]["witness"]["n"], 3);
        assert_eq!(v["cond2prime"]["witness"]["m"], 1);
        let v = search("dihedral-product", "s1", "r1", 10).unwrap();
        assert_eq!(v["klyachko"]["n"], 6);
        assert_eq!(v["klyachko"]["verified"], true);
    }
}
