//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes the graph as edge-list or JSON text and returns a JSON
//! document with an `svg` field ready to drop into the page. The `*_report`
//! functions are the same operations with plain Rust errors.

use qlayout::layout::{max_rainbow, min_queues_for_order};
use qlayout::td_kernel::{decide_1queue_td, Thresholds, DEFAULT_KERNEL_CAP};
use qlayout::vc_kernel::queue_number_vc;
use qlayout::{parse_graph, Edge, Graph, LinearLayout};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Graphs above this size are refused; the exact searches would hang the tab.
pub const MAX_VERTICES: usize = 60;

fn read(text: &str) -> Result<Graph, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    if g.n() > MAX_VERTICES {
        return Err(format!("{} vertices; the demo handles at most {MAX_VERTICES}", g.n()));
    }
    Ok(g)
}

fn labelled(g: &Graph, edges: &[Edge]) -> Value {
    edges.iter().map(|e| json!([g.label(e.0), g.label(e.1)])).collect()
}

fn components(g: &Graph) -> Vec<(Graph, Vec<usize>)> {
    g.connected_components()
        .into_iter()
        .map(|c| g.induced_subgraph(&c).expect("component of g"))
        .collect()
}

/// Queue number with an optimal layout, component by component.
pub fn queue_number_report(text: &str) -> Result<Value, String> {
    let g = read(text)?;
    let mut h = 0;
    let mut parts = Vec::new();
    for (sub, origin) in components(&g) {
        let (q, l) = queue_number_vc(&sub).map_err(|e| e.to_string())?;
        h = h.max(q);
        parts.push(l.map_vertices(&origin));
    }
    let layout = LinearLayout::concat(parts);
    let rainbow = max_rainbow(&g, layout.order()).edges;
    Ok(json!({
        "queue_number": h,
        "layout": layout.to_json(&g),
        "svg": qlayout::svg::render(&g, &layout, &rainbow),
    }))
}

/// Fewest queues for the given vertex order, with a largest rainbow as the
/// matching lower bound.
pub fn fixed_order_report(text: &str, order: &str) -> Result<Value, String> {
    let g = read(text)?;
    let mut seen = vec![false; g.n()];
    let mut ids = Vec::with_capacity(g.n());
    for label in order.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
        let v = g.vertex_by_label(label).ok_or_else(|| format!("unknown vertex {label:?}"))?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(format!("vertex {label:?} appears twice"));
        }
        ids.push(v);
    }
    // Unlisted vertices keep their input order at the end.
    ids.extend((0..g.n()).filter(|&v| !seen[v]));
    let layout = min_queues_for_order(&g, &ids);
    let rainbow = max_rainbow(&g, &ids).edges;
    Ok(json!({
        "queues": layout.num_queues(),
        "rainbow": labelled(&g, &rainbow),
        "layout": layout.to_json(&g),
        "svg": qlayout::svg::render(&g, &layout, &rainbow),
    }))
}

/// 1-queue decision through the treedepth kernel. `synthetic = 0` selects
/// the exact thresholds; otherwise classes of at least that many copies are
/// pruned.
pub fn one_queue_report(text: &str, synthetic: u32) -> Result<Value, String> {
    let g = read(text)?;
    let thresholds = match synthetic {
        0 => Thresholds::Exact,
        c => Thresholds::Synthetic { children: vec![u64::from(c)], min_class: 2 },
    };
    let mut yes = true;
    let mut kernel_size = 0;
    let mut removals = Vec::new();
    let mut parts = Vec::new();
    for (sub, origin) in components(&g) {
        let d = decide_1queue_td(&sub, &thresholds, DEFAULT_KERNEL_CAP).map_err(|e| e.to_string())?;
        kernel_size += d.kernel.graph.n();
        if let Value::Array(log) = d.kernel.removal_log_json(&sub) {
            removals.extend(log);
        }
        match d.layout {
            Some(l) => parts.push(l.map_vertices(&origin)),
            None => yes = false,
        }
    }
    let svg = if yes { qlayout::svg::render(&g, &LinearLayout::concat(parts), &[]) } else { String::new() };
    Ok(json!({
        "answer": if yes { "yes" } else { "no" },
        "kernel_size": kernel_size,
        "removals": removals,
        "svg": svg,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = queueNumber)]
pub fn queue_number(text: &str) -> Result<String, JsError> {
    to_js(queue_number_report(text))
}

#[wasm_bindgen(js_name = fixedOrder)]
pub fn fixed_order(text: &str, order: &str) -> Result<String, JsError> {
    to_js(fixed_order_report(text, order))
}

#[wasm_bindgen(js_name = oneQueue)]
pub fn one_queue(text: &str, synthetic: u32) -> Result<String, JsError> {
    to_js(one_queue_report(text, synthetic))
}
