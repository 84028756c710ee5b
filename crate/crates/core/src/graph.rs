//! Dense simple undirected graphs and host generators.
//!
//! Vertices are `0..n`. Adjacency is stored as one packed bit row per
//! vertex, so neighbourhood intersection (common neighbours, embedding
//! extension, clique growth) is a word-wise AND.
//!
//! Text format (hosts, patterns, witnesses):
//!
//! ```text
//! n m [b k]
//! u v        (m lines, 0 <= u < v < n, no duplicates)
//! ```
//!
//! The optional `b k` suffix puts the first `k` vertices on side A of a
//! bipartition and the rest on side B.

use std::fmt;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{iter_words, words_for, BitSet};
use crate::seed::Seed;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    OutOfRange(usize, usize, usize),
    #[error("edge ({0}, {1}) joins two vertices on the same side of the bipartition")]
    SameSide(usize, usize),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("malformed graph file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Finite simple undirected graph on `0..n` with an optional bipartition.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edge_count: usize,
    sides: Option<Vec<Side>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; stride * n],
            edge_count: 0,
            sides: None,
        }
    }

    /// Empty graph whose first `a` vertices form side A.
    pub fn new_bipartite(n: usize, a: usize) -> Self {
        assert!(a <= n);
        let mut g = Graph::new(n);
        g.sides = Some((0..n).map(|v| if v < a { Side::A } else { Side::B }).collect());
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Same vertex set and bipartition, no edges.
    pub fn empty_like(&self) -> Self {
        Graph {
            n: self.n,
            stride: self.stride,
            rows: vec![0; self.rows.len()],
            edge_count: 0,
            sides: self.sides.clone(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// K_{a,b}: sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new_bipartite(a + b, a);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            let u = (v + 1) % n;
            if u != v && !g.has_edge(u, v) {
                g.add_edge(v, u);
            }
        }
        g
    }

    /// Disjoint union, relabelling the i-th graph after all earlier ones.
    /// The bipartition survives only if every part has one.
    pub fn disjoint_union(parts: &[Graph]) -> Self {
        let n = parts.iter().map(|g| g.n).sum();
        let mut out = Graph::new(n);
        if parts.iter().all(|g| g.sides.is_some()) && !parts.is_empty() {
            out.sides = Some(
                parts
                    .iter()
                    .flat_map(|g| g.sides.as_ref().unwrap().iter().copied())
                    .collect(),
            );
        }
        let mut offset = 0;
        for g in parts {
            for (u, v) in g.edges() {
                out.add_edge(u + offset, v + offset);
            }
            offset += g.n;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    pub fn side(&self, v: usize) -> Option<Side> {
        self.sides.as_ref().map(|s| s[v])
    }

    /// Replaces the bipartition; fails if an existing edge would violate it.
    pub fn set_sides(&mut self, sides: Option<Vec<Side>>) -> Result<(), GraphError> {
        if let Some(s) = &sides {
            assert_eq!(s.len(), self.n);
            if let Some((u, v)) = self.edges_iter().find(|&(u, v)| s[u] == s[v]) {
                return Err(GraphError::SameSide(u, v));
            }
        }
        self.sides = sides;
        Ok(())
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / 64] & (1u64 << (v % 64)) != 0
    }

    /// Adds `{u, v}` and reports whether it was new.
    ///
    /// Panics on self-loops, out-of-range vertices, or an edge inside one
    /// side of the bipartition; use [`Graph::try_add_edge`] for untrusted input.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        match self.try_add_edge(u, v) {
            Ok(fresh) => fresh,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::OutOfRange(u, v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if let Some(s) = &self.sides {
            if s[u] == s[v] {
                return Err(GraphError::SameSide(u, v));
            }
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.rows[u * self.stride + v / 64] |= 1u64 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1u64 << (u % 64);
        self.edge_count += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.stride + v / 64] &= !(1u64 << (v % 64));
        self.rows[v * self.stride + u / 64] &= !(1u64 << (u % 64));
        self.edge_count -= 1;
        true
    }

    pub fn clear_edges(&mut self) {
        self.rows.iter_mut().for_each(|w| *w = 0);
        self.edge_count = 0;
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_words(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> BitSet {
        BitSet::from_words(self.n, self.row(v).to_vec())
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            iter_words(self.row(u))
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges_iter().collect()
    }

    /// True if both graphs have the same vertex count and every edge of
    /// `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Adds every edge of `other` (same vertex count).
    pub fn union_with(&mut self, other: &Graph) {
        assert_eq!(self.n, other.n);
        for (u, v) in other.edges_iter() {
            self.add_edge(u, v);
        }
    }

    /// Subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        if let Some(s) = &self.sides {
            g.sides = Some(vertices.iter().map(|&v| s[v]).collect());
        }
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.row(v).iter().all(|&w| w == 0))
            .collect()
    }

    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.row(v).iter().any(|&w| w != 0))
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = BitSet::new(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}", self.n, self.edge_count));
        if let Some(s) = &self.sides {
            let k = s.iter().take_while(|&&x| x == Side::A).count();
            if s[k..].iter().all(|&x| x == Side::B) {
                out.push_str(&format!(" b {k}"));
            }
        }
        out.push('\n');
        for (u, v) in self.edges_iter() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(hl, &format!("expected an integer, found {s:?}")))
        };
        let (n, m, split) = match fields.as_slice() {
            [n, m] => (num(n)?, num(m)?, None),
            [n, m, "b", k] => (num(n)?, num(m)?, Some(num(k)?)),
            _ => return Err(parse_err(hl, "header must be `n m` or `n m b k`")),
        };
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = match split {
            Some(k) if k > n => return Err(parse_err(hl, "side A larger than n")),
            Some(k) => Graph::new_bipartite(n, k),
            None => Graph::new(n),
        };
        let mut count = 0;
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = f.as_slice() else {
                return Err(parse_err(ln, "expected `u v`"));
            };
            let u = u
                .parse::<usize>()
                .map_err(|_| parse_err(ln, "bad vertex"))?;
            let v = v
                .parse::<usize>()
                .map_err(|_| parse_err(ln, "bad vertex"))?;
            if u >= v || v >= n {
                return Err(parse_err(ln, "edges must satisfy 0 <= u < v < n"));
            }
            let fresh = g.try_add_edge(u, v).map_err(|e| parse_err(ln, &e.to_string()))?;
            if !fresh {
                return Err(parse_err(ln, "duplicate edge"));
            }
            count += 1;
        }
        if count != m {
            return Err(parse_err(hl, &format!("header declares {m} edges, found {count}")));
        }
        Ok(g)
    }

    pub fn read_file(path: &Path) -> Result<Graph, GraphError> {
        let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Graph::from_text(&text)
    }

    pub fn write_file(&self, path: &Path) -> Result<(), GraphError> {
        std::fs::write(path, self.to_text()).map_err(|source| GraphError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .field("sides", &self.sides)
            .finish()
    }
}

/// Host graph recipes.
#[derive(Clone, Debug)]
pub enum HostKind {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Gnp { n: usize, p: f64, seed: Seed },
    DisjointUnion(Vec<Graph>),
    FromFile(PathBuf),
}

pub fn generate_host(kind: &HostKind) -> Result<Graph, GraphError> {
    match kind {
        HostKind::Complete(n) => {
            if *n == 0 {
                return Err(GraphError::Empty);
            }
            Ok(Graph::complete(*n))
        }
        HostKind::CompleteBipartite(a, b) => {
            if a + b == 0 {
                return Err(GraphError::Empty);
            }
            Ok(Graph::complete_bipartite(*a, *b))
        }
        HostKind::Gnp { n, p, seed } => gnp(*n, *p, *seed),
        HostKind::DisjointUnion(parts) => {
            if parts.iter().map(Graph::n).sum::<usize>() == 0 {
                return Err(GraphError::Empty);
            }
            Ok(Graph::disjoint_union(parts))
        }
        HostKind::FromFile(path) => Graph::read_file(path),
    }
}

/// Samples G(n, p) from `seed`.
///
/// Pairs are visited in the order (1,0), (2,0), (2,1), (3,0), ... and gaps
/// between consecutive edges are drawn from the geometric distribution, which
/// is equivalent to flipping an independent p-coin for every pair but costs
/// O(n + m) draws.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<Graph, GraphError> {
    let mut g = Graph::new(n);
    gnp_into(&mut g, p, seed)?;
    Ok(g)
}

/// Like [`gnp`] but reuses `g`'s storage (its edges are cleared first).
pub fn gnp_into(g: &mut Graph, p: f64, seed: Seed) -> Result<(), GraphError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GraphError::Probability(p));
    }
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    g.clear_edges();
    if p == 0.0 {
        return Ok(());
    }
    if p == 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        return Ok(());
    }
    let mut rng = seed.rng();
    let log_q = (1.0 - p).ln();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        // Anything past the remaining pair count ends the walk.
        if skip >= (n * n) as f64 {
            break;
        }
        w += 1 + skip as i64;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            g.add_edge(v, w as usize);
        }
    }
    Ok(())
}
