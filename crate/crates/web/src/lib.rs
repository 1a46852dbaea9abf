//! Browser bindings. Every function takes text and returns a JSON string;
//! failures come back as `{"error": "..."}`.

use legsat::diagram::text::{front_to_text, pattern_to_text};
use legsat::pathmatrix::{crossing_name, path_matrix as matrix_of, path_matrix_inverse};
use legsat::ruling::{polynomial, Mode};
use legsat::{parse, Diagram};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: legsat::Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e.to_string() })).to_string()
}

fn mode_of(generalized: bool) -> Mode {
    if generalized {
        Mode::Generalized
    } else {
        Mode::Normal
    }
}

/// Normalized text, tb, rotation number and ungraded ruling polynomial of a
/// front, or strand count and ruling polynomial of a pattern.
#[wasm_bindgen]
pub fn analyze_front(text: &str) -> String {
    respond(parse(text).and_then(|d| match d {
        Diagram::Plat(f) => {
            let r = polynomial(&f.graded(1)?, Mode::Normal);
            Ok(json!({
                "kind": "front",
                "text": front_to_text(&f),
                "crossings": f.crossing_count(),
                "components": f.component_count(),
                "plat": f.is_plat(),
                "tb": f.thurston_bennequin(),
                "r": f.rotation_number(),
                "ruling_polynomial": r.to_string(),
                "rulings": r.count(),
            }))
        }
        Diagram::Pattern(l) => {
            let r = polynomial(&l.graded(1)?, Mode::Normal);
            Ok(json!({
                "kind": "pattern",
                "text": pattern_to_text(&l),
                "strands": l.strands(),
                "crossings": l.crossing_count(),
                "cusp_free": l.is_cusp_free(),
                "ruling_polynomial": r.to_string(),
                "rulings": r.count(),
            }))
        }
    }))
}

/// Ruling polynomial graded mod `p` of a front or pattern.
#[wasm_bindgen]
pub fn ruling_polynomial(text: &str, p: u32, generalized: bool) -> String {
    respond(parse(text).and_then(|d| {
        let g = match d {
            Diagram::Plat(f) => f.graded(p)?,
            Diagram::Pattern(l) => l.graded(p)?,
        };
        let r = polynomial(&g, mode_of(generalized));
        Ok(json!({ "p": p, "polynomial": r.to_string(), "terms": r.to_json(), "rulings": r.count() }))
    }))
}

/// Path matrix (or its inverse) of a cusp-free pattern, entries as text.
#[wasm_bindgen]
pub fn path_matrix(text: &str, inverse: bool) -> String {
    respond(legsat::parse_pattern(text).and_then(|l| {
        let m = if inverse { path_matrix_inverse(&l)? } else { matrix_of(&l)? };
        let n = m.size();
        let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).to_string_with(&crossing_name)).collect()).collect();
        Ok(json!({ "size": n, "inverse": inverse, "rows": rows }))
    }))
}
