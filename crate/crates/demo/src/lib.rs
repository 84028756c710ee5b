//! WebAssembly bindings for the browser demo. Every export takes and returns
//! plain strings; results are JSON.

use std::ops::ControlFlow;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use wsat_core::descriptor::{build_host, build_pattern, parse_host, parse_pattern};
use wsat_core::graph::gnp;
use wsat_core::percolation::{closure, verify_trace};
use wsat_core::solver::predict;
use wsat_core::star::{stability_check, vertex_bootstrap_closure, StabilityMode};
use wsat_core::{Graph, Mode, Seed};

/// Largest host the closure demo accepts.
pub const MAX_CLOSURE_VERTICES: usize = 60;
/// Largest random graph the bootstrap demo accepts.
pub const MAX_BOOTSTRAP_VERTICES: usize = 4000;

/// Reads consecutive integers as edge endpoints: "0 1, 1-2" gives 01 and 12.
pub fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let nums: Vec<usize> = text
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("bad vertex '{s}'")))
        .collect::<Result<_, _>>()?;
    if !nums.len().is_multiple_of(2) {
        return Err("edge list has an odd number of endpoints".into());
    }
    Ok(nums.chunks(2).map(|c| (c[0], c[1])).collect())
}

/// Closure of a start graph with its full trace.
pub fn closure_json(host: &str, pattern: &str, initial: &str, bipartite: bool) -> Result<String, String> {
    let (host, _) = build_host(host).map_err(|e| e.to_string())?;
    if host.n() > MAX_CLOSURE_VERTICES {
        return Err(format!("hosts above {MAX_CLOSURE_VERTICES} vertices are not supported here"));
    }
    let (pattern, _) = build_pattern(pattern).map_err(|e| e.to_string())?;
    let mut f = host.empty_like();
    for (u, v) in parse_edges(initial)? {
        f.try_add_edge(u, v).map_err(|e| e.to_string())?;
    }
    let mode = Mode::from_flag(bipartite);
    let c = closure(&host, &f, &pattern, mode).map_err(|e| e.to_string())?;
    let valid = verify_trace(&host, &pattern, &c.trace, mode).is_ok();
    let steps: Vec<Value> = c
        .trace
        .steps
        .iter()
        .map(|s| json!({"edge": [s.edge.0, s.edge.1], "witness": s.witness}))
        .collect();
    Ok(json!({
        "n": host.n(),
        "host_edges": host.edges(),
        "initial_edges": f.edges(),
        "steps": steps,
        "closure_edges": c.graph.edge_count(),
        "saturated": c.graph.edge_count() == host.edge_count(),
        "trace_valid": valid,
    })
    .to_string())
}

/// Closed-form value or interval for a complete host.
pub fn predict_json(host: &str, pattern: &str, bisaturation: bool) -> Result<String, String> {
    let h = parse_host(host)
        .map_err(|e| e.to_string())?
        .descriptor
        .ok_or("use a kn:N or knl:A,B host")?;
    let p = parse_pattern(pattern)
        .map_err(|e| e.to_string())?
        .descriptor
        .ok_or("use a ks, kst, star or barbell pattern")?;
    Ok(match predict(h, p, bisaturation) {
        Some(pred) => serde_json::to_string(&pred).map_err(|e| e.to_string())?,
        None => "null".into(),
    })
}

/// Samples G(n, p), runs the fast K_{1,t} stability test and reports how the
/// (t-1)-neighbour bootstrap grows from the first core tried.
pub fn bootstrap_json(n: usize, p: f64, seed: u64, t: usize) -> Result<String, String> {
    if n > MAX_BOOTSTRAP_VERTICES {
        return Err(format!("n above {MAX_BOOTSTRAP_VERTICES} is not supported here"));
    }
    let g: Graph = gnp(n, p, Seed(seed)).map_err(|e| e.to_string())?;
    let report = stability_check(&g, t, StabilityMode::Fast).map_err(|e| e.to_string())?;
    let growth = match &report.structure {
        Some(s) => s.ordering.clone(),
        None => {
            // Largest closure over the first few cores, for display.
            let mut best: Vec<usize> = Vec::new();
            let mut tried = 0;
            let _ = wsat_core::embed::for_each_clique(&g, t, |clique| {
                let c = vertex_bootstrap_closure(&g, clique, t - 1);
                if c.order.len() > best.len() {
                    best = c.order;
                }
                tried += 1;
                if tried < 200 {
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(())
                }
            });
            best
        }
    };
    Ok(json!({
        "n": n,
        "p": p,
        "t": t,
        "edges": g.edge_count(),
        "verdict": format!("{:?}", report.verdict),
        "spanning": report.structure.is_some(),
        "order": growth,
    })
    .to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn closure_trace(host: &str, pattern: &str, initial: &str, bipartite: bool) -> Result<String, JsValue> {
    js(closure_json(host, pattern, initial, bipartite))
}

#[wasm_bindgen]
pub fn predict_value(host: &str, pattern: &str, bisaturation: bool) -> Result<String, JsValue> {
    js(predict_json(host, pattern, bisaturation))
}

#[wasm_bindgen]
pub fn bootstrap_growth(n: usize, p: f64, seed: u64, t: usize) -> Result<String, JsValue> {
    js(bootstrap_json(n, p, seed, t))
}
