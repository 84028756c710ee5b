//! H-bootstrap percolation: closures with witness traces, and replay checks.
//!
//! Starting from a spanning subgraph F of a host G, an edge of G may be added
//! whenever it lies in a copy of H in the current graph plus that edge. The
//! maximal reachable graph is unique; the scan order below only changes the
//! trace.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::embed::{find_embedding, has_embedding, is_embedding, EmbedQuery};
use crate::graph::{Graph, GraphError};
use crate::pattern::Pattern;

#[derive(Debug, Error)]
pub enum PercolationError {
    #[error("initial graph is not a spanning subgraph of the host")]
    NotSubgraph,
    #[error("bipartite mode needs a bipartition on both host and pattern")]
    MissingBipartition,
    #[error("malformed trace: {0}")]
    Trace(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Whether restored copies of H must align with the host bipartition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[default]
    Free,
    Bipartite,
}

impl Mode {
    pub fn from_flag(bipartite: bool) -> Self {
        if bipartite {
            Mode::Bipartite
        } else {
            Mode::Free
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub edge: (usize, usize),
    /// Host vertices in pattern-label order.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationTrace {
    pub initial: Graph,
    pub steps: Vec<TraceStep>,
}

#[derive(Serialize, Deserialize)]
struct TraceFile {
    initial_edges: Vec<[usize; 2]>,
    steps: Vec<StepFile>,
}

#[derive(Serialize, Deserialize)]
struct StepFile {
    edge: [usize; 2],
    witness: Vec<usize>,
}

impl PercolationTrace {
    pub fn new(initial: Graph) -> Self {
        PercolationTrace {
            initial,
            steps: Vec::new(),
        }
    }

    /// Initial graph plus every step edge.
    pub fn final_graph(&self) -> Graph {
        let mut g = self.initial.clone();
        for s in &self.steps {
            g.add_edge(s.edge.0, s.edge.1);
        }
        g
    }

    pub fn to_json(&self) -> String {
        let file = TraceFile {
            initial_edges: self.initial.edges_iter().map(|(u, v)| [u, v]).collect(),
            steps: self
                .steps
                .iter()
                .map(|s| StepFile {
                    edge: [s.edge.0, s.edge.1],
                    witness: s.witness.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("trace serializes")
    }

    /// Parses the JSON form; `host` supplies the vertex count and bipartition.
    pub fn from_json(text: &str, host: &Graph) -> Result<Self, PercolationError> {
        let file: TraceFile =
            serde_json::from_str(text).map_err(|e| PercolationError::Trace(e.to_string()))?;
        let mut initial = host.empty_like();
        for [u, v] in file.initial_edges {
            initial.try_add_edge(u, v)?;
        }
        let steps = file
            .steps
            .into_iter()
            .map(|s| TraceStep {
                edge: (s.edge[0].min(s.edge[1]), s.edge[0].max(s.edge[1])),
                witness: s.witness,
            })
            .collect();
        Ok(PercolationTrace { initial, steps })
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub graph: Graph,
    pub trace: PercolationTrace,
}

fn check_inputs(host: &Graph, initial: &Graph, pattern: &Graph, mode: Mode) -> Result<(), PercolationError> {
    if !initial.is_subgraph_of(host) {
        return Err(PercolationError::NotSubgraph);
    }
    if mode == Mode::Bipartite && (host.sides().is_none() || pattern.sides().is_none()) {
        return Err(PercolationError::MissingBipartition);
    }
    Ok(())
}

/// Closure of `initial` inside `host`, scanning candidate edges in
/// lexicographic order.
pub fn closure(host: &Graph, initial: &Graph, pattern: &Pattern, mode: Mode) -> Result<Closure, PercolationError> {
    let order = host.edges();
    closure_with_scan_order(host, initial, pattern, mode, &order)
}

/// Closure with an explicit scan order for the candidate edges. Host edges
/// missing from `scan` are appended in lexicographic order.
pub fn closure_with_scan_order(
    host: &Graph,
    initial: &Graph,
    pattern: &Pattern,
    mode: Mode,
    scan: &[(usize, usize)],
) -> Result<Closure, PercolationError> {
    check_inputs(host, initial, pattern.graph(), mode)?;
    let mut engine = Engine::new(host, initial.clone(), pattern.graph(), mode, true);
    engine.run(scan);
    let steps = engine.steps.take().unwrap_or_default();
    Ok(Closure {
        graph: engine.current,
        trace: PercolationTrace {
            initial: initial.clone(),
            steps,
        },
    })
}

/// Closed graph only, without witnesses.
pub fn closure_graph(host: &Graph, initial: &Graph, pattern: &Graph, mode: Mode) -> Result<Graph, PercolationError> {
    check_inputs(host, initial, pattern, mode)?;
    let mut engine = Engine::new(host, initial.clone(), pattern, mode, false);
    engine.run(&host.edges());
    Ok(engine.current)
}

pub fn is_weakly_saturated(host: &Graph, initial: &Graph, pattern: &Pattern, mode: Mode) -> Result<bool, PercolationError> {
    Ok(closure_graph(host, initial, pattern.graph(), mode)?.edge_count() == host.edge_count())
}

/// Witness for `edge` in `current`, which must already contain `edge`:
/// the first embedding of `pattern` whose image contains it.
pub fn find_witness(current: &Graph, pattern: &Graph, edge: (usize, usize), mode: Mode) -> Option<Vec<usize>> {
    let q = EmbedQuery::new()
        .cover(edge.0, edge.1)
        .respect_sides(mode == Mode::Bipartite);
    find_embedding(current, pattern, &q)
}

pub(crate) struct Engine<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    mode: Mode,
    pub(crate) current: Graph,
    degree: Vec<usize>,
    /// Degree pairs (deg x, deg y) over ordered pattern edges.
    degree_pairs: Vec<(usize, usize)>,
    reach: Option<usize>,
    pub(crate) steps: Option<Vec<TraceStep>>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(host: &'a Graph, initial: Graph, pattern: &'a Graph, mode: Mode, record: bool) -> Self {
        let pdeg = pattern.degrees();
        let mut degree_pairs: Vec<(usize, usize)> = pattern
            .edges_iter()
            .flat_map(|(x, y)| [(pdeg[x], pdeg[y]), (pdeg[y], pdeg[x])])
            .collect();
        degree_pairs.sort_unstable();
        degree_pairs.dedup();
        // A new copy of a connected H through {a, b} also contains the
        // candidate edge, so the candidate has an endpoint within distance
        // r - 1 of a or b. Disconnected patterns get a full re-enqueue.
        let reach = pattern.is_connected().then(|| pattern.n().saturating_sub(1));
        Engine {
            host,
            pattern,
            mode,
            degree: initial.degrees(),
            current: initial,
            degree_pairs,
            reach,
            steps: record.then(Vec::new),
        }
    }

    fn degree_filter(&self, a: usize, b: usize) -> bool {
        let (da, db) = (self.degree[a] + 1, self.degree[b] + 1);
        self.degree_pairs.iter().any(|&(x, y)| x <= da && y <= db)
    }

    /// Adds `{a, b}` if it completes a copy of H.
    pub(crate) fn try_restore(&mut self, a: usize, b: usize) -> bool {
        if self.current.has_edge(a, b) || !self.degree_filter(a, b) {
            return false;
        }
        self.current.add_edge(a, b);
        let q = EmbedQuery::new()
            .cover(a, b)
            .respect_sides(self.mode == Mode::Bipartite);
        let ok = match &mut self.steps {
            Some(steps) => match find_embedding(&self.current, self.pattern, &q) {
                Some(witness) => {
                    steps.push(TraceStep {
                        edge: (a.min(b), a.max(b)),
                        witness,
                    });
                    true
                }
                None => false,
            },
            None => has_embedding(&self.current, self.pattern, &q),
        };
        if ok {
            self.degree[a] += 1;
            self.degree[b] += 1;
        } else {
            self.current.remove_edge(a, b);
        }
        ok
    }

    fn done(&self) -> bool {
        self.current.edge_count() == self.host.edge_count()
    }

    fn run(&mut self, scan: &[(usize, usize)]) {
        let n = self.host.n();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut listed = BitSet::new(n * n);
        for &(u, v) in scan.iter().chain(self.host.edges().iter()) {
            let (u, v) = (u.min(v), u.max(v));
            if self.host.has_edge(u, v) && !self.current.has_edge(u, v) && listed.insert(u * n + v) {
                order.push((u, v));
            }
        }
        let mut queued = listed;
        let mut queue: VecDeque<(usize, usize)> = order.iter().copied().collect();
        loop {
            while let Some((u, v)) = queue.pop_front() {
                queued.remove(u * n + v);
                if self.done() {
                    return;
                }
                if self.try_restore(u, v) {
                    self.enqueue_near(u, v, &mut queue, &mut queued);
                }
            }
            let mut progress = false;
            for &(u, v) in &order {
                if self.try_restore(u, v) {
                    progress = true;
                    self.enqueue_near(u, v, &mut queue, &mut queued);
                }
            }
            if !progress {
                return;
            }
        }
    }

    fn enqueue_near(&self, a: usize, b: usize, queue: &mut VecDeque<(usize, usize)>, queued: &mut BitSet) {
        let n = self.host.n();
        let region = match self.reach {
            Some(depth) => {
                let mut seen = BitSet::from_iter(n, [a, b]);
                let mut frontier = vec![a, b];
                for _ in 0..depth {
                    let mut next = Vec::new();
                    for &x in &frontier {
                        for y in self.current.neighbors(x) {
                            if seen.insert(y) {
                                next.push(y);
                            }
                        }
                    }
                    if next.is_empty() {
                        break;
                    }
                    frontier = next;
                }
                seen
            }
            None => BitSet::full(n),
        };
        for w in region.iter() {
            let missing = self
                .host
                .row(w)
                .iter()
                .zip(self.current.row(w))
                .map(|(h, c)| h & !c)
                .collect::<Vec<u64>>();
            for x in crate::bitset::iter_words(&missing) {
                let (u, v) = (w.min(x), w.max(x));
                if queued.insert(u * n + v) {
                    queue.push_back((u, v));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    InitialNotSubgraph,
    EdgeNotInHost,
    EdgeAlreadyPresent,
    WitnessNotEmbedding,
    WitnessMissesEdge,
    WitnessCrossesSides,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("trace violation at step {step:?}: {kind:?}")]
pub struct TraceViolation {
    /// Step index, or `None` for a problem with the initial graph.
    pub step: Option<usize>,
    pub kind: ViolationKind,
}

/// Replays `trace` against `host`, checking every step's witness against
/// the graph built so far.
pub fn verify_trace(host: &Graph, pattern: &Pattern, trace: &PercolationTrace, mode: Mode) -> Result<(), TraceViolation> {
    let fail = |step: Option<usize>, kind| Err(TraceViolation { step, kind });
    if !trace.initial.is_subgraph_of(host) {
        return fail(None, ViolationKind::InitialNotSubgraph);
    }
    let h = pattern.graph();
    let mut current = trace.initial.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        let (a, b) = step.edge;
        if !host.has_edge(a, b) {
            return fail(Some(i), ViolationKind::EdgeNotInHost);
        }
        if current.has_edge(a, b) {
            return fail(Some(i), ViolationKind::EdgeAlreadyPresent);
        }
        current.add_edge(a, b);
        let w = &step.witness;
        if !is_embedding(&current, h, w) {
            return fail(Some(i), ViolationKind::WitnessNotEmbedding);
        }
        let covers = h
            .edges_iter()
            .any(|(x, y)| (w[x] == a && w[y] == b) || (w[x] == b && w[y] == a));
        if !covers {
            return fail(Some(i), ViolationKind::WitnessMissesEdge);
        }
        if mode == Mode::Bipartite {
            let aligned = match (host.sides(), h.sides()) {
                (Some(hs), Some(ps)) => (0..h.n()).all(|x| hs[w[x]] == ps[x]),
                _ => false,
            };
            if !aligned {
                return fail(Some(i), ViolationKind::WitnessCrossesSides);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn path_closes_to_triangle() {
        let k3 = Pattern::clique(3).unwrap();
        let c = closure(&Graph::complete(3), &graph(3, &[(0, 1), (1, 2)]), &k3, Mode::Free).unwrap();
        assert!(c.graph.is_complete());
        assert_eq!(c.trace.steps.len(), 1);
        assert_eq!(c.trace.steps[0].edge, (0, 2));
        let w = &c.trace.steps[0].witness;
        assert_eq!(w.len(), 3);
        verify_trace(&Graph::complete(3), &k3, &c.trace, Mode::Free).unwrap();
    }

    #[test]
    fn empty_start_stays_empty() {
        let k3 = Pattern::clique(3).unwrap();
        let c = closure(&Graph::complete(4), &Graph::new(4), &k3, Mode::Free).unwrap();
        assert_eq!(c.graph.edge_count(), 0);
        assert!(c.trace.steps.is_empty());
    }

    #[test]
    fn star_start_closes_k4() {
        let k3 = Pattern::clique(3).unwrap();
        let f = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = closure(&Graph::complete(4), &f, &k3, Mode::Free).unwrap();
        assert!(c.graph.is_complete());
        assert_eq!(c.trace.steps.len(), 3);
    }

    #[test]
    fn triangles_close_k9_under_barbell() {
        let bb = Pattern::barbell(3).unwrap();
        let f = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3), Graph::complete(3)]);
        let c = closure(&Graph::complete(9), &f, &bb, Mode::Free).unwrap();
        assert!(c.graph.is_complete());
        verify_trace(&Graph::complete(9), &bb, &c.trace, Mode::Free).unwrap();
    }

    #[test]
    fn saturation_examples() {
        let k3 = Pattern::clique(3).unwrap();
        // K_5 minus the K_4 on {1,2,3,4}.
        let f = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(is_weakly_saturated(&Graph::complete(5), &f, &k3, Mode::Free).unwrap());
        assert!(!is_weakly_saturated(&Graph::complete(4), &graph(4, &[(0, 1)]), &k3, Mode::Free).unwrap());

        let c4 = Pattern::biclique(2, 2).unwrap();
        let host = Graph::complete_bipartite(2, 2);
        let mut path = host.empty_like();
        path.add_edge(0, 2);
        path.add_edge(2, 1);
        path.add_edge(1, 3);
        assert!(is_weakly_saturated(&host, &path, &c4, Mode::Bipartite).unwrap());
    }

    #[test]
    fn input_errors() {
        let k3 = Pattern::clique(3).unwrap();
        let host = graph(3, &[(0, 1)]);
        assert!(matches!(
            closure(&host, &graph(3, &[(1, 2)]), &k3, Mode::Free),
            Err(PercolationError::NotSubgraph)
        ));
        assert!(matches!(
            closure(&Graph::complete(3), &Graph::new(3), &k3, Mode::Bipartite),
            Err(PercolationError::MissingBipartition)
        ));
    }

    #[test]
    fn verify_detects_reordering_and_bad_witness() {
        let k3 = Pattern::clique(3).unwrap();
        let host = Graph::complete(4);
        let f = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = closure(&host, &f, &k3, Mode::Free).unwrap();
        assert!(c.graph.is_complete());
        verify_trace(&host, &k3, &c.trace, Mode::Free).unwrap();

        // {0,3} needs one of the edges restored before it.
        let mut reordered = c.trace.clone();
        let pos = reordered.steps.iter().position(|s| s.edge == (0, 3)).unwrap();
        let step = reordered.steps.remove(pos);
        reordered.steps.insert(0, step);
        let err = verify_trace(&host, &k3, &reordered, Mode::Free).unwrap_err();
        assert_eq!(err.step, Some(0));
        assert_eq!(err.kind, ViolationKind::WitnessNotEmbedding);

        let mut off = c.trace.clone();
        off.steps[0].witness = vec![1, 2, 3];
        off.steps[0].edge = (0, 2);
        let mut t = PercolationTrace::new(f.clone());
        t.steps.push(TraceStep {
            edge: (0, 2),
            witness: vec![1, 2, 3],
        });
        // {1,2,3} is not yet a triangle and misses {0,2} anyway.
        assert!(verify_trace(&host, &k3, &t, Mode::Free).is_err());
        let mut g = f.clone();
        g.add_edge(1, 3);
        let mut t2 = PercolationTrace::new(g);
        t2.steps.push(TraceStep {
            edge: (0, 2),
            witness: vec![1, 2, 3],
        });
        assert_eq!(
            verify_trace(&host, &k3, &t2, Mode::Free).unwrap_err().kind,
            ViolationKind::WitnessMissesEdge
        );
    }

    #[test]
    fn json_round_trip() {
        let k3 = Pattern::clique(3).unwrap();
        let host = Graph::complete(4);
        let c = closure(&host, &graph(4, &[(0, 1), (0, 2), (0, 3)]), &k3, Mode::Free).unwrap();
        let text = c.trace.to_json();
        assert!(text.contains("initial_edges"));
        let back = PercolationTrace::from_json(&text, &host).unwrap();
        assert_eq!(back, c.trace);
        assert!(PercolationTrace::from_json("{", &host).is_err());
    }
}
