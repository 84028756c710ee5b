//! Weakly saturated graphs F¹_k with a small core S¹_k such that every other
//! vertex has exactly d neighbours in the core and none outside it.

use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::percolation::{closure_graph, Mode};
use crate::solver::construct;

pub trait SaturatedFamily {
    fn name(&self) -> String;

    /// Number of core vertices; the same for every k.
    fn core_size(&self) -> usize;

    /// F¹_k on `0..k` and its core S¹_k in increasing order.
    fn member(&self, k: usize) -> Result<(Graph, Vec<usize>), String>;
}

/// K_s: every edge at the first s - 2 vertices.
#[derive(Clone, Debug)]
pub struct CliqueFamily {
    pub s: usize,
}

impl SaturatedFamily for CliqueFamily {
    fn name(&self) -> String {
        format!("lovasz(s={})", self.s)
    }

    fn core_size(&self) -> usize {
        self.s - 2
    }

    fn member(&self, k: usize) -> Result<(Graph, Vec<usize>), String> {
        let g = construct::lovasz(k, self.s).map_err(|e| e.to_string())?;
        Ok((g, (0..self.s - 2).collect()))
    }
}

/// K_{1,t}: a t-clique on the first t vertices, d = 0.
#[derive(Clone, Debug)]
pub struct StarFamily {
    pub t: usize,
}

impl SaturatedFamily for StarFamily {
    fn name(&self) -> String {
        format!("star(t={})", self.t)
    }

    fn core_size(&self) -> usize {
        self.t
    }

    fn member(&self, k: usize) -> Result<(Graph, Vec<usize>), String> {
        let g = construct::star_core(k, self.t).map_err(|e| e.to_string())?;
        Ok((g, (0..self.t).collect()))
    }
}

/// A user-supplied saturated core with d edges from each other vertex to
/// its lowest core vertices.
#[derive(Clone, Debug)]
pub struct CoreAttachFamily {
    pub pattern: Pattern,
    pub core: Graph,
}

impl SaturatedFamily for CoreAttachFamily {
    fn name(&self) -> String {
        format!("core-attach(|core|={})", self.core.n())
    }

    fn core_size(&self) -> usize {
        self.core.n()
    }

    fn member(&self, k: usize) -> Result<(Graph, Vec<usize>), String> {
        let g = construct::core_attach(k, &self.pattern, &self.core).map_err(|e| e.to_string())?;
        Ok((g, (0..self.core.n()).collect()))
    }
}

/// Checks the member for `k` directly: core shape, exactly d core
/// neighbours outside the core, no edges outside it, and saturation in K_k.
pub fn verify_member(family: &dyn SaturatedFamily, pattern: &Pattern, k: usize) -> Result<(), String> {
    let (f, core) = family.member(k)?;
    if f.n() != k || core.len() != family.core_size() {
        return Err(format!("member for k={k} has the wrong shape"));
    }
    let mut in_core = vec![false; k];
    for &c in &core {
        in_core[c] = true;
    }
    for v in (0..k).filter(|&v| !in_core[v]) {
        let into_core = f.neighbors(v).filter(|&u| in_core[u]).count();
        if into_core != pattern.d() || f.degree(v) != into_core {
            return Err(format!("vertex {v} must have exactly {} edges, all into the core", pattern.d()));
        }
    }
    let closed = closure_graph(&Graph::complete(k), &f, pattern.graph(), Mode::Free).map_err(|e| e.to_string())?;
    if !closed.is_complete() {
        return Err(format!("member for k={k} is not weakly saturated"));
    }
    Ok(())
}
