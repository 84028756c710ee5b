//! Explicit weakly saturated graphs of known size.

use thiserror::Error;

use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::percolation::{closure_graph, Mode};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("core graph on {0} vertices is not weakly saturated in the complete graph")]
    CoreNotSaturated(usize),
}

#[derive(Clone, Debug)]
pub enum Family {
    /// K_n minus a clique on the last n - s + 2 vertices.
    Lovasz { n: usize, s: usize },
    /// K_t on `0..t`.
    StarCore { n: usize, t: usize },
    /// n / t disjoint t-cliques.
    BarbellCliques { n: usize, t: usize },
    /// A saturated core on the first vertices plus d = δ(H) - 1 edges from
    /// every other vertex to the lowest core vertices.
    CoreAttach { n: usize, pattern: Pattern, core: Graph },
}

pub fn construct_witness(family: &Family) -> Result<Graph, ConstructError> {
    match family {
        Family::Lovasz { n, s } => lovasz(*n, *s),
        Family::StarCore { n, t } => star_core(*n, *t),
        Family::BarbellCliques { n, t } => barbell_cliques(*n, *t),
        Family::CoreAttach { n, pattern, core } => core_attach(*n, pattern, core),
    }
}

/// Every edge meeting one of the first s - 2 vertices.
pub fn lovasz(n: usize, s: usize) -> Result<Graph, ConstructError> {
    if !(n >= s && s >= 2) {
        return Err(ConstructError::Parameters(format!("lovasz needs n >= s >= 2, got n={n}, s={s}")));
    }
    let mut g = Graph::new(n);
    for u in 0..s - 2 {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

pub fn star_core(n: usize, t: usize) -> Result<Graph, ConstructError> {
    if t == 0 || n < t {
        return Err(ConstructError::Parameters(format!("star_core needs n >= t >= 1, got n={n}, t={t}")));
    }
    let mut g = Graph::new(n);
    for u in 0..t {
        for v in u + 1..t {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

pub fn barbell_cliques(n: usize, t: usize) -> Result<Graph, ConstructError> {
    if t == 0 || !n.is_multiple_of(t) {
        return Err(ConstructError::Parameters(format!("barbell_cliques needs t | n, got n={n}, t={t}")));
    }
    let parts = vec![Graph::complete(t); n / t];
    Ok(Graph::disjoint_union(&parts))
}

pub fn core_attach(n: usize, pattern: &Pattern, core: &Graph) -> Result<Graph, ConstructError> {
    let k = core.n();
    let d = pattern.d();
    if k > n || d > k {
        return Err(ConstructError::Parameters(format!(
            "core_attach needs d <= |core| <= n, got d={d}, |core|={k}, n={n}"
        )));
    }
    let saturated = closure_graph(&Graph::complete(k), core, pattern.graph(), Mode::Free)
        .map_err(|e| ConstructError::Parameters(e.to_string()))?
        .is_complete();
    if !saturated {
        return Err(ConstructError::CoreNotSaturated(k));
    }
    let mut g = Graph::new(n);
    for (u, v) in core.edges_iter() {
        g.add_edge(u, v);
    }
    for v in k..n {
        for u in 0..d {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}
