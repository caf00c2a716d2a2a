//! WebAssembly bindings behind `www/index.html`. Every call takes plain
//! strings and returns a JSON string; errors come back as `{"error": ...}`.

use minorlab_core::embed::{genus_profile, verify_embedding, GenusOptions};
use minorlab_core::family::{generate, resolve_graph, FamilySpec};
use minorlab_core::graph6::encode_string;
use minorlab_core::minor::{minor_search, MinorAnswer, MinorOptions};
use minorlab_core::{Budget, Graph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const NODE_CAP: u64 = 2_000_000;

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "m": g.m(), "graph6": encode_string(g), "edges": g.edges() })
}

/// Generate a family member from a JSON spec such as
/// `{"family":"dyck_grid","k":2,"h":0,"c":1}`.
#[wasm_bindgen]
pub fn generate_family(spec_json: &str) -> String {
    respond((|| {
        let spec: FamilySpec = serde_json::from_str(spec_json).map_err(|e| e.to_string())?;
        let gen = generate(&spec).map_err(|e| e.to_string())?;
        let mut out = graph_json(&gen.graph);
        if let Some(e) = &gen.canonical_embedding {
            let s = verify_embedding(&gen.graph, e).map_err(|e| e.to_string())?;
            out["surface"] = json!(s.to_string());
        }
        out["tags"] = json!(gen.tags.vertices.keys().collect::<Vec<_>>());
        Ok(out)
    })())
}

/// Euler, orientable and non-orientable genus of a named or graph6 graph.
#[wasm_bindgen]
pub fn genus(graph: &str) -> String {
    respond((|| {
        let g = resolve_graph(graph).map_err(|e| e.to_string())?;
        let budget = Budget::new(NODE_CAP);
        let p = genus_profile(&g, &GenusOptions::new(&budget)).map_err(|e| e.to_string())?;
        Ok(json!({
            "graph": graph_json(&g),
            "eg": p.eg,
            "orientable_genus": p.orientable_genus,
            "nonorientable_genus": p.nonorientable_genus,
            "nodes": budget.used(),
        }))
    })())
}

/// Minor containment with branch sets on success.
#[wasm_bindgen]
pub fn minor(pattern: &str, host: &str) -> String {
    respond((|| {
        let h = resolve_graph(pattern).map_err(|e| e.to_string())?;
        let g = resolve_graph(host).map_err(|e| e.to_string())?;
        let budget = Budget::new(NODE_CAP);
        let answer = minor_search(&h, &g, &MinorOptions::new(&budget)).map_err(|e| e.to_string())?;
        Ok(match answer {
            MinorAnswer::Found(m) => json!({ "found": true, "branch_sets": m.branch, "host": graph_json(&g) }),
            MinorAnswer::Absent(proof) => json!({ "found": false, "proof": proof, "host": graph_json(&g) }),
        })
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calls_round_trip_json() {
        let v: Value = serde_json::from_str(&generate_family(r#"{"family":"dyck_grid","k":1,"h":0,"c":1}"#)).unwrap();
        assert_eq!(v["n"], 8);
        assert_eq!(v["surface"], "S(0,1)");
        let v: Value = serde_json::from_str(&genus("k7")).unwrap();
        assert_eq!(v["orientable_genus"], 1);
        let v: Value = serde_json::from_str(&minor("k4", "petersen")).unwrap();
        assert_eq!(v["found"], true);
        let v: Value = serde_json::from_str(&minor("k5", "k33")).unwrap();
        assert_eq!(v["found"], false);
        let v: Value = serde_json::from_str(&genus("not a graph")).unwrap();
        assert!(v["error"].is_string());
    }
}
