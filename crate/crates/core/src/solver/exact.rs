//! Exhaustive minimum search over spanning subgraphs.

use serde::{Deserialize, Serialize};

use crate::clock::Deadline;
use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::percolation::{closure, closure_graph, Mode, PercolationError, PercolationTrace};

/// Search limits. Exceeding either one downgrades the certificate instead of
/// failing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_subsets: Option<u64>,
    pub max_millis: Option<u64>,
    /// Skip subsets where some vertex has fewer than δ(H) - 1 edges yet is
    /// missing host edges. Such a vertex can never be part of a new copy of
    /// H, so its missing edges are never restored.
    pub degree_prune: bool,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn subsets(max: u64) -> Self {
        Budget {
            max_subsets: Some(max),
            ..Budget::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    /// Every smaller subset was examined and none saturates.
    Exhaustive,
    /// The value equals a closed-form prediction.
    FormulaMatched,
    /// Search stopped early; `value` is only an upper bound.
    UpperBoundOnly,
}

#[derive(Clone, Debug)]
pub struct WsatCertificate {
    pub value: usize,
    pub witness: Graph,
    pub trace: PercolationTrace,
    pub optimality: Optimality,
    /// Every subset with fewer edges was ruled out.
    pub lower_bound: usize,
    pub subsets_examined: u64,
}

/// Visits the m-subsets of `0..len` in colexicographic order until `visit`
/// returns false. Returns false if stopped early.
pub fn for_each_combination(len: usize, m: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if m > len {
        return true;
    }
    let mut c: Vec<usize> = (0..m).collect();
    loop {
        if !visit(&c) {
            return false;
        }
        let mut j = 0;
        while j < m && c[j] + 1 == if j + 1 < m { c[j + 1] } else { len } {
            j += 1;
        }
        if j == m {
            return true;
        }
        c[j] += 1;
        for (i, x) in c.iter_mut().enumerate().take(j) {
            *x = i;
        }
    }
}

fn passes_degree_prune(host_deg: &[usize], f: &Graph, need: usize) -> bool {
    (0..f.n()).all(|v| {
        let d = f.degree(v);
        d >= need || d == host_deg[v]
    })
}

/// Smallest weakly (host, pattern)-saturated spanning subgraph.
///
/// Subset sizes are tried upward from 0 and subsets of one size in colex
/// order, so the witness is the colex-least optimal one. Adding a host edge
/// to a saturating graph keeps it saturating, so the first feasible size is
/// the minimum.
pub fn wsat_exact(host: &Graph, pattern: &Pattern, mode: Mode, budget: Budget) -> Result<WsatCertificate, PercolationError> {
    let edges = host.edges();
    let total = edges.len();
    let h = pattern.graph();
    // Validate inputs once; the loop below only sees well-formed subgraphs.
    closure_graph(host, &host.empty_like(), h, mode)?;
    let deadline = budget.max_millis.map(Deadline::after_millis);
    let host_deg = host.degrees();
    let need = pattern.min_degree() - 1;
    let mut examined: u64 = 0;
    let mut f = host.empty_like();

    for m in 0..=total {
        let mut found: Option<Graph> = None;
        let mut out_of_budget = false;
        for_each_combination(total, m, |c| {
            if budget.max_subsets.is_some_and(|cap| examined >= cap)
                || (examined.is_multiple_of(256) && deadline.is_some_and(|d| d.expired()))
            {
                out_of_budget = true;
                return false;
            }
            examined += 1;
            f.clear_edges();
            for &i in c {
                f.add_edge(edges[i].0, edges[i].1);
            }
            if budget.degree_prune && !passes_degree_prune(&host_deg, &f, need) {
                return true;
            }
            let closed = closure_graph(host, &f, h, mode).expect("inputs validated");
            if closed.edge_count() == total {
                found = Some(f.clone());
                return false;
            }
            true
        });
        if let Some(witness) = found {
            let trace = closure(host, &witness, pattern, mode)?.trace;
            return Ok(WsatCertificate {
                value: m,
                witness,
                trace,
                optimality: Optimality::Exhaustive,
                lower_bound: m,
                subsets_examined: examined,
            });
        }
        if out_of_budget {
            return Ok(WsatCertificate {
                value: total,
                witness: host.clone(),
                trace: PercolationTrace::new(host.clone()),
                optimality: Optimality::UpperBoundOnly,
                lower_bound: m,
                subsets_examined: examined,
            });
        }
    }
    unreachable!("the host itself is always saturating")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
        assert!(for_each_combination(2, 3, |_| panic!("no 3-subsets of 2")));
    }

    #[test]
    fn small_values() {
        let k3 = Pattern::clique(3).unwrap();
        let c = wsat_exact(&Graph::complete(5), &k3, Mode::Free, Budget::unlimited()).unwrap();
        assert_eq!(c.value, 4);
        assert_eq!(c.witness.edge_count(), 4);
        assert_eq!(c.optimality, Optimality::Exhaustive);
        assert_eq!(c.trace.final_graph(), Graph::complete(5));

        let k4 = Pattern::clique(4).unwrap();
        assert_eq!(wsat_exact(&Graph::complete(4), &k4, Mode::Free, Budget::unlimited()).unwrap().value, 5);

        let star = Pattern::star(3).unwrap();
        assert_eq!(wsat_exact(&Graph::complete(4), &star, Mode::Free, Budget::unlimited()).unwrap().value, 3);

        let c4 = Pattern::biclique(2, 2).unwrap();
        let host = Graph::complete_bipartite(2, 3);
        assert_eq!(wsat_exact(&host, &c4, Mode::Bipartite, Budget::unlimited()).unwrap().value, 4);

        let two_triangles = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert_eq!(wsat_exact(&two_triangles, &star, Mode::Free, Budget::unlimited()).unwrap().value, 6);
    }

    #[test]
    fn budget_downgrades() {
        let k3 = Pattern::clique(3).unwrap();
        let c = wsat_exact(&Graph::complete(6), &k3, Mode::Free, Budget::subsets(10)).unwrap();
        assert_eq!(c.optimality, Optimality::UpperBoundOnly);
        assert_eq!(c.value, 15);
        assert_eq!(c.subsets_examined, 10);
        assert!(c.lower_bound <= 5);
    }

    #[test]
    fn prune_agrees_with_plain_search() {
        for (n, s) in [(4, 3), (5, 3), (5, 4), (6, 4)] {
            let p = Pattern::clique(s).unwrap();
            let host = Graph::complete(n);
            let plain = wsat_exact(&host, &p, Mode::Free, Budget::unlimited()).unwrap();
            let pruned = wsat_exact(
                &host,
                &p,
                Mode::Free,
                Budget {
                    degree_prune: true,
                    ..Budget::default()
                },
            )
            .unwrap();
            assert_eq!(plain.value, pruned.value);
            assert_eq!(plain.witness, pruned.witness);
            assert!(pruned.subsets_examined <= plain.subsets_examined);
        }
    }
}
