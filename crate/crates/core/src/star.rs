//! Weak saturation for stars K_{1,t}: saturating structures, vertex
//! bootstrap growth and stability of wsat(G, K_{1,t}) = C(t,2).
//!
//! A saturating structure is an ordering v_1..v_x with a core prefix
//! v_1..v_y, where each later v_i has exactly t - 1 edges back to
//! v_1..v_{i-1}. Starting from a core that closes to a clique, such an
//! ordering restores every edge at v_i in turn.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::clock::Deadline;
use crate::embed::for_each_clique;
use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::percolation::{verify_trace, Mode, PercolationTrace, TraceViolation};
use crate::solver::exact::for_each_combination;
use crate::solver::Budget;

#[derive(Debug, Error)]
pub enum StarError {
    #[error("stability checks need t >= 3, got {0}")]
    SmallT(usize),
    #[error("trace does not replay: {0}")]
    Trace(#[from] TraceViolation),
    #[error("trace starts from a different graph than the given core")]
    InitialMismatch,
    #[error("budget exhausted after {0} steps")]
    Budget(u64),
    #[error("count overflowed")]
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatingStructure {
    pub ordering: Vec<usize>,
    pub core_size: usize,
    pub edges: Vec<(usize, usize)>,
    pub t: usize,
}

impl SaturatingStructure {
    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure serializes")
    }
}

/// Result of growing a seed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClosure {
    pub members: BitSet,
    /// Seed vertices in the given order, then additions in the order found.
    pub order: Vec<usize>,
}

/// Reusable buffers for repeated growth on one graph.
struct Grower {
    count: Vec<u32>,
    inside: BitSet,
    touched: Vec<usize>,
}

impl Grower {
    fn new(n: usize) -> Self {
        Grower {
            count: vec![0; n],
            inside: BitSet::new(n),
            touched: Vec::new(),
        }
    }

    /// Grows `seed` under `threshold`, returning the addition order. Leaves
    /// the buffers clean.
    fn grow(&mut self, g: &Graph, seed: &[usize], threshold: usize) -> Vec<usize> {
        let n = g.n();
        let mut order: Vec<usize> = Vec::new();
        for &v in seed {
            if self.inside.insert(v) {
                order.push(v);
            }
        }
        if threshold == 0 {
            order.extend((0..n).filter(|&v| self.inside.insert(v)));
        } else {
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for u in g.neighbors(v) {
                    if self.inside.contains(u) {
                        continue;
                    }
                    if self.count[u] == 0 {
                        self.touched.push(u);
                    }
                    self.count[u] += 1;
                    if self.count[u] as usize == threshold {
                        self.inside.insert(u);
                        order.push(u);
                    }
                }
            }
        }
        for &u in &self.touched {
            self.count[u] = 0;
        }
        self.touched.clear();
        for &v in &order {
            self.inside.remove(v);
        }
        order
    }
}

/// Smallest superset of `seed` containing every vertex with at least
/// `threshold` neighbours inside it.
pub fn vertex_bootstrap_closure(g: &Graph, seed: &[usize], threshold: usize) -> VertexClosure {
    let order = Grower::new(g.n()).grow(g, seed, threshold);
    VertexClosure {
        members: BitSet::from_iter(g.n(), order.iter().copied()),
        order,
    }
}

/// Checks the structure against `host`: distinct vertices, edges of the host
/// between ordered vertices, and exactly t - 1 back-edges at every vertex
/// after the core.
pub fn is_saturating_structure(host: &Graph, s: &SaturatingStructure) -> bool {
    let n = host.n();
    let x = s.ordering.len();
    if s.t == 0 || s.core_size < s.t.min(x) || s.core_size > x || s.ordering.iter().any(|&v| v >= n) {
        return false;
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in s.ordering.iter().enumerate() {
        if position[v] != usize::MAX {
            return false;
        }
        position[v] = i;
    }
    let mut seen = Graph::new(n);
    let mut back = vec![0usize; x];
    for &(u, v) in &s.edges {
        if u >= n || v >= n || u == v || !host.has_edge(u, v) || seen.has_edge(u, v) {
            return false;
        }
        let (pu, pv) = (position[u], position[v]);
        if pu == usize::MAX || pv == usize::MAX {
            return false;
        }
        seen.add_edge(u, v);
        back[pu.max(pv)] += 1;
    }
    back[s.core_size..].iter().all(|&b| b == s.t - 1)
}

fn materialize(
    g: &Graph,
    core: &[usize],
    core_edges: Vec<(usize, usize)>,
    order: &[usize],
    t: usize,
) -> SaturatingStructure {
    let mut earlier = BitSet::from_iter(g.n(), core.iter().copied());
    let mut edges = core_edges;
    for &v in &order[core.len()..] {
        let mut near = earlier.clone();
        near.intersect_words(g.row(v));
        edges.extend(near.iter().take(t - 1).map(|u| (u.min(v), u.max(v))));
        earlier.insert(v);
    }
    SaturatingStructure {
        ordering: order.to_vec(),
        core_size: core.len(),
        edges,
        t,
    }
}

#[derive(Clone, Debug)]
pub enum CoreMode {
    /// Try every t-clique as the core.
    Clique,
    /// Use the non-isolated vertices and edges of this graph as the core.
    Given(Graph),
}

/// Longest structure over the chosen cores; earliest clique wins ties.
/// Returns `None` when no core exists or a given core is not a subgraph of
/// `g`.
pub fn find_structure(g: &Graph, t: usize, core: &CoreMode) -> Option<SaturatingStructure> {
    assert!(t >= 1, "t must be positive");
    match core {
        CoreMode::Given(f) => {
            if f.n() != g.n() || !f.is_subgraph_of(g) {
                return None;
            }
            let seed = f.non_isolated_vertices();
            if seed.is_empty() {
                return None;
            }
            let order = Grower::new(g.n()).grow(g, &seed, t - 1);
            Some(materialize(g, &seed, f.edges(), &order, t))
        }
        CoreMode::Clique => {
            let (clique, order) = best_clique_closure(g, t, false)?;
            let edges = clique_edges(&clique);
            Some(materialize(g, &clique, edges, &order, t))
        }
    }
}

fn clique_edges(c: &[usize]) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for (i, &u) in c.iter().enumerate() {
        for &v in &c[i + 1..] {
            e.push((u, v));
        }
    }
    e
}

/// Largest vertex bootstrap closure over t-cliques. With `spanning_only`,
/// stops at the first spanning closure and returns `None` if there is none.
fn best_clique_closure(g: &Graph, t: usize, spanning_only: bool) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut grower = Grower::new(n);
    // owner[v] = id of the most recent closure containing v. A clique whose
    // vertices share an owner lies inside that closure, so by monotonicity
    // its own closure is no larger.
    let mut owner = vec![u32::MAX; n];
    let mut next_id: u32 = 0;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let _ = for_each_clique(g, t, |c| {
        let o = owner[c[0]];
        if o != u32::MAX && c.iter().all(|&v| owner[v] == o) {
            return ControlFlow::Continue(());
        }
        let order = grower.grow(g, c, t - 1);
        for &v in &order {
            owner[v] = next_id;
        }
        next_id += 1;
        let spanning = order.len() == n;
        let better = if spanning_only { spanning } else { best.as_ref().is_none_or(|(_, b)| order.len() > b.len()) };
        if better {
            best = Some((c.to_vec(), order));
        }
        if spanning {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    best
}

/// Whether some t-clique grows to all of V(g) under threshold t - 1.
pub fn has_spanning_clique_core(g: &Graph, t: usize) -> bool {
    best_clique_closure(g, t, true).is_some()
}

/// K_{1,t}-bootstrap closure of `f` inside `host`. An edge can be added
/// exactly when one endpoint already has t - 1 neighbours, so every host
/// edge at such a vertex gets restored.
pub fn star_closure(host: &Graph, f: &Graph, t: usize) -> Graph {
    let n = host.n();
    let mut cur = f.clone();
    let mut deg = cur.degrees();
    let need = t.saturating_sub(1);
    let mut active = BitSet::new(n);
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] >= need).collect();
    for &v in &queue {
        active.insert(v);
    }
    while let Some(v) = queue.pop() {
        for u in host.neighbors(v) {
            if cur.add_edge(u, v) {
                deg[u] += 1;
                deg[v] += 1;
                if deg[u] >= need && active.insert(u) {
                    queue.push(u);
                }
            }
        }
    }
    cur
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub enum StabilityMode {
    Fast,
    Exact(Budget),
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Spanning structure found in fast mode.
    pub structure: Option<SaturatingStructure>,
    /// Smallest saturating subgraph found in exact mode, when it has at
    /// most C(t,2) edges.
    pub witness: Option<Graph>,
}

/// Decides whether wsat(g, K_{1,t}) = C(t,2).
///
/// Fast mode only certifies stability: it looks for a spanning structure
/// with a K_t core and answers `Unknown` otherwise. Exact mode searches all
/// subgraphs with at most C(t,2) edges.
pub fn stability_check(g: &Graph, t: usize, mode: StabilityMode) -> Result<StabilityReport, StarError> {
    if t < 3 {
        return Err(StarError::SmallT(t));
    }
    match mode {
        StabilityMode::Fast => {
            let found = best_clique_closure(g, t, true);
            Ok(match found {
                Some((clique, order)) => StabilityReport {
                    verdict: Verdict::Stable,
                    structure: Some(materialize(g, &clique, clique_edges(&clique), &order, t)),
                    witness: None,
                },
                None => StabilityReport {
                    verdict: Verdict::Unknown,
                    structure: None,
                    witness: None,
                },
            })
        }
        StabilityMode::Exact(budget) => exact_stability(g, t, budget),
    }
}

fn exact_stability(g: &Graph, t: usize, budget: Budget) -> Result<StabilityReport, StarError> {
    let edges = g.edges();
    let target = t * (t - 1) / 2;
    let deadline = budget.max_millis.map(Deadline::after_millis);
    let mut examined: u64 = 0;
    let mut f = g.empty_like();
    for m in 0..=target.min(edges.len()) {
        let mut found = None;
        let mut out = false;
        for_each_combination(edges.len(), m, |c| {
            if budget.max_subsets.is_some_and(|cap| examined >= cap)
                || (examined.is_multiple_of(256) && deadline.is_some_and(|d| d.expired()))
            {
                out = true;
                return false;
            }
            examined += 1;
            f.clear_edges();
            for &i in c {
                f.add_edge(edges[i].0, edges[i].1);
            }
            if star_closure(g, &f, t).edge_count() == edges.len() {
                found = Some(f.clone());
                return false;
            }
            true
        });
        if let Some(w) = found {
            return Ok(StabilityReport {
                verdict: if m == target { Verdict::Stable } else { Verdict::Unstable },
                structure: None,
                witness: Some(w),
            });
        }
        if out {
            return Ok(StabilityReport {
                verdict: Verdict::Unknown,
                structure: None,
                witness: None,
            });
        }
    }
    Ok(StabilityReport {
        verdict: Verdict::Unstable,
        structure: None,
        witness: None,
    })
}

/// Reads a structure off a K_{1,t} percolation trace from `f_prime`.
///
/// The core is the non-isolated vertices of `f_prime`. Any other vertex is
/// appended when its (t-1)-th incident edge appears in the trace, and its
/// first t - 1 incident trace edges become its back-edges. Each of those
/// edges was restored through a star centred at the other endpoint, which
/// therefore already had t - 1 edges and sits earlier in the ordering.
pub fn extract_structure_from_trace(
    host: &Graph,
    f_prime: &Graph,
    trace: &PercolationTrace,
    t: usize,
) -> Result<SaturatingStructure, StarError> {
    if t < 2 {
        return Err(StarError::SmallT(t));
    }
    if trace.initial != *f_prime {
        return Err(StarError::InitialMismatch);
    }
    let star = Pattern::star(t).expect("t >= 1");
    verify_trace(host, &star, trace, Mode::Free)?;
    let n = host.n();
    let core = f_prime.non_isolated_vertices();
    let in_core = BitSet::from_iter(n, core.iter().copied());
    let mut ordering = core.clone();
    let mut edges = f_prime.edges();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for step in &trace.steps {
        let (a, b) = step.edge;
        for v in [a, b] {
            if in_core.contains(v) || incident[v].len() >= t - 1 {
                continue;
            }
            incident[v].push((a, b));
            if incident[v].len() == t - 1 {
                ordering.push(v);
                edges.extend(incident[v].iter().copied());
            }
        }
    }
    Ok(SaturatingStructure {
        ordering,
        core_size: core.len(),
        edges,
        t,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of (increasing ordering, back-edge choice) pairs forming a
/// structure of length x with a K_t core on the first t vertices.
/// `max_nodes` bounds the search tree.
pub fn count_canonical_structures(g: &Graph, x: usize, t: usize, max_nodes: Option<u64>) -> Result<u128, StarError> {
    struct Search<'a> {
        g: &'a Graph,
        x: usize,
        t: usize,
        nodes: u64,
        cap: u64,
        chosen: Vec<usize>,
        total: u128,
    }
    impl Search<'_> {
        fn rec(&mut self, weight: u128) -> Result<(), StarError> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(StarError::Budget(self.cap));
            }
            let k = self.chosen.len();
            if k == self.x {
                self.total = self.total.checked_add(weight).ok_or(StarError::Overflow)?;
                return Ok(());
            }
            let start = self.chosen.last().map_or(0, |&v| v + 1);
            let n = self.g.n();
            if n - start < self.x - k {
                return Ok(());
            }
            for v in start..n {
                let w = if k < self.t {
                    if self.chosen.iter().all(|&u| self.g.has_edge(u, v)) {
                        1
                    } else {
                        0
                    }
                } else {
                    let back = self.chosen.iter().filter(|&&u| self.g.has_edge(u, v)).count();
                    binomial(back, self.t - 1)
                };
                if w == 0 {
                    continue;
                }
                self.chosen.push(v);
                let r = weight.checked_mul(w).ok_or(StarError::Overflow).and_then(|nw| self.rec(nw));
                self.chosen.pop();
                r?;
            }
            Ok(())
        }
    }
    if x < t || x > g.n() || t == 0 {
        return Ok(0);
    }
    let mut s = Search {
        g,
        x,
        t,
        nodes: 0,
        cap: max_nodes.unwrap_or(u64::MAX),
        chosen: Vec::with_capacity(x),
        total: 0,
    };
    s.rec(1)?;
    Ok(s.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::{closure, closure_graph};
    use crate::solver::construct::star_core;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn bootstrap_examples() {
        let mut k4 = Graph::complete(4);
        k4.remove_edge(2, 3);
        let c = vertex_bootstrap_closure(&k4, &[0, 1, 2], 2);
        assert_eq!(c.members.to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(c.order, vec![0, 1, 2, 3]);

        let c5 = Graph::cycle(5);
        assert_eq!(vertex_bootstrap_closure(&c5, &[0, 1, 2], 2).members.to_vec(), vec![0, 1, 2]);
        assert_eq!(vertex_bootstrap_closure(&Graph::new(5), &[1, 3], 2).order, vec![1, 3]);
        assert_eq!(vertex_bootstrap_closure(&Graph::new(3), &[1], 0).order, vec![1, 0, 2]);
    }

    #[test]
    fn structure_validation() {
        let k4 = Graph::complete(4);
        let good = SaturatingStructure {
            ordering: vec![0, 1, 2, 3],
            core_size: 3,
            edges: vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
            t: 3,
        };
        assert!(is_saturating_structure(&k4, &good));
        let mut three = good.clone();
        three.edges.push((2, 3));
        assert!(!is_saturating_structure(&k4, &three));
        let mut missing = k4.clone();
        missing.remove_edge(0, 1);
        assert!(!is_saturating_structure(&missing, &good));
    }

    #[test]
    fn finder_examples() {
        let s = find_structure(&Graph::complete(5), 3, &CoreMode::Clique).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.core_size, 3);
        assert!(is_saturating_structure(&Graph::complete(5), &s));
        assert!(find_structure(&Graph::cycle(5), 3, &CoreMode::Clique).is_none());

        let given = find_structure(&Graph::complete(5), 3, &CoreMode::Given(star_core(5, 3).unwrap())).unwrap();
        assert_eq!(given.len(), 5);
        assert!(is_saturating_structure(&Graph::complete(5), &given));
    }

    #[test]
    fn star_closure_matches_generic_engine() {
        let host = Graph::complete(6);
        for t in 1..=4 {
            let p = Pattern::star(t).unwrap();
            for f in [graph(6, &[(0, 1), (0, 2)]), graph(6, &[(0, 1), (2, 3), (4, 5)]), star_core(6, 3).unwrap()] {
                assert_eq!(star_closure(&host, &f, t), closure_graph(&host, &f, p.graph(), Mode::Free).unwrap());
            }
        }
    }

    #[test]
    fn stability_examples() {
        let fast = stability_check(&Graph::complete(5), 3, StabilityMode::Fast).unwrap();
        assert_eq!(fast.verdict, Verdict::Stable);
        assert_eq!(fast.structure.unwrap().len(), 5);

        let exact = |g: &Graph| stability_check(g, 3, StabilityMode::Exact(Budget::unlimited())).unwrap().verdict;
        assert_eq!(exact(&Graph::cycle(5)), Verdict::Unstable);
        let two_k4 = Graph::disjoint_union(&[Graph::complete(4), Graph::complete(4)]);
        assert_eq!(exact(&two_k4), Verdict::Unstable);
        assert_eq!(exact(&Graph::complete(5)), Verdict::Stable);
        assert!(matches!(
            stability_check(&Graph::complete(5), 2, StabilityMode::Fast),
            Err(StarError::SmallT(2))
        ));
        let starved = stability_check(&Graph::complete(6), 3, StabilityMode::Exact(Budget::subsets(3))).unwrap();
        assert_eq!(starved.verdict, Verdict::Unknown);
    }

    #[test]
    fn extraction_examples() {
        let star = Pattern::star(3).unwrap();
        let host = Graph::complete(4);
        let tri = graph(4, &[(0, 1), (0, 2), (1, 2)]);
        let c = closure(&host, &tri, &star, Mode::Free).unwrap();
        let s = extract_structure_from_trace(&host, &tri, &c.trace, 3).unwrap();
        assert_eq!((s.len(), s.core_size), (4, 3));
        assert!(is_saturating_structure(&host, &s));

        let host5 = Graph::complete(5);
        let core = star_core(5, 3).unwrap();
        let c = closure(&host5, &core, &star, Mode::Free).unwrap();
        let s = extract_structure_from_trace(&host5, &core, &c.trace, 3).unwrap();
        assert_eq!(s.len(), 5);
        assert!(is_saturating_structure(&host5, &s));

        let mut bad = c.trace.clone();
        bad.steps.reverse();
        assert!(extract_structure_from_trace(&host5, &core, &bad, 3).is_err());
        assert!(matches!(
            extract_structure_from_trace(&host5, &Graph::new(5), &c.trace, 3),
            Err(StarError::InitialMismatch)
        ));
    }

    #[test]
    fn canonical_counts() {
        assert_eq!(count_canonical_structures(&Graph::complete(4), 4, 3, None).unwrap(), 3);
        assert_eq!(count_canonical_structures(&Graph::cycle(5), 4, 3, None).unwrap(), 0);
        assert_eq!(count_canonical_structures(&Graph::complete(3), 3, 3, None).unwrap(), 1);
        assert!(matches!(
            count_canonical_structures(&Graph::complete(8), 6, 3, Some(5)),
            Err(StarError::Budget(5))
        ));
    }
}
