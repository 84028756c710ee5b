//! Subgraph embeddings, common neighbourhoods and clique search.
//!
//! An embedding of a pattern P into a host G is an injective map
//! `f: V(P) -> V(G)` sending every edge of P to an edge of G. It is returned
//! as a vector indexed by pattern vertex. Enumeration backtracks over the
//! pattern vertices in label order and tries host candidates in increasing
//! label order, so the output is lexicographically sorted. Pinned vertices
//! and their adjacency constraints are folded into the candidate sets before
//! the search starts.

use std::ops::ControlFlow;

use crate::bitset::{iter_words, BitSet};
use crate::graph::{Graph, Side};

#[derive(Clone, Debug, Default)]
pub struct EmbedQuery {
    pins: Vec<(usize, usize)>,
    must_cover: Option<(usize, usize)>,
    limit: Option<usize>,
    respect_sides: bool,
    within: Option<BitSet>,
    domains: Vec<(usize, BitSet)>,
}

impl EmbedQuery {
    pub fn new() -> Self {
        Self::default()
    }

    /// Forces pattern vertex `x` onto host vertex `v`.
    pub fn pin(mut self, x: usize, v: usize) -> Self {
        self.pins.push((x, v));
        self
    }

    pub fn pins(mut self, pins: &[(usize, usize)]) -> Self {
        self.pins.extend_from_slice(pins);
        self
    }

    /// Only embeddings whose image contains the host edge `{a, b}`.
    pub fn cover(mut self, a: usize, b: usize) -> Self {
        self.must_cover = Some((a, b));
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    /// Pattern side A must land on host side A (and B on B).
    pub fn respect_sides(mut self, yes: bool) -> Self {
        self.respect_sides = yes;
        self
    }

    /// Restricts every image to `set`.
    pub fn within(mut self, set: BitSet) -> Self {
        self.within = Some(set);
        self
    }

    /// Restricts the image of pattern vertex `x` to `set`.
    pub fn domain(mut self, x: usize, set: BitSet) -> Self {
        self.domains.push((x, set));
        self
    }
}

/// All embeddings of `pattern` into `host` matching `query`, in
/// lexicographic order, truncated to the query limit.
pub fn enumerate_embeddings(host: &Graph, pattern: &Graph, query: &EmbedQuery) -> Vec<Vec<usize>> {
    let limit = query.limit.unwrap_or(usize::MAX);
    if limit == 0 {
        return Vec::new();
    }
    let Some((a, b)) = query.must_cover else {
        return search(host, pattern, query, &query.pins, limit);
    };
    if !host.has_edge(a, b) {
        return Vec::new();
    }
    // The preimages of a and b are unique, so splitting on which pattern
    // edge covers {a, b} partitions the embeddings.
    let mut found = Vec::new();
    for (x, y) in pattern.edges_iter().flat_map(|(x, y)| [(x, y), (y, x)]) {
        let clash = query.pins.iter().any(|&(p, h)| {
            (p == x && h != a) || (p == y && h != b) || (h == a && p != x) || (h == b && p != y)
        });
        if clash {
            continue;
        }
        let mut pins = query.pins.clone();
        pins.push((x, a));
        pins.push((y, b));
        found.extend(search(host, pattern, query, &pins, limit));
    }
    found.sort_unstable();
    found.truncate(limit);
    found
}

/// Whether any embedding matches `query`; stops at the first one found.
pub fn has_embedding(host: &Graph, pattern: &Graph, query: &EmbedQuery) -> bool {
    let Some((a, b)) = query.must_cover else {
        return !search(host, pattern, query, &query.pins, 1).is_empty();
    };
    if !host.has_edge(a, b) {
        return false;
    }
    pattern.edges_iter().flat_map(|(x, y)| [(x, y), (y, x)]).any(|(x, y)| {
        let clash = query.pins.iter().any(|&(p, h)| {
            (p == x && h != a) || (p == y && h != b) || (h == a && p != x) || (h == b && p != y)
        });
        if clash {
            return false;
        }
        let mut pins = query.pins.clone();
        pins.push((x, a));
        pins.push((y, b));
        !search(host, pattern, query, &pins, 1).is_empty()
    })
}

/// First embedding in enumeration order, if any.
pub fn find_embedding(host: &Graph, pattern: &Graph, query: &EmbedQuery) -> Option<Vec<usize>> {
    let q = query.clone().limit(1);
    enumerate_embeddings(host, pattern, &q).into_iter().next()
}

/// Checks that `map` is an embedding of `pattern` into `host`.
pub fn is_embedding(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    if map.len() != pattern.n() || map.iter().any(|&v| v >= host.n()) {
        return false;
    }
    let mut seen = BitSet::new(host.n());
    if !map.iter().all(|&v| seen.insert(v)) {
        return false;
    }
    pattern.edges_iter().all(|(x, y)| host.has_edge(map[x], map[y]))
}

fn search(
    host: &Graph,
    pattern: &Graph,
    query: &EmbedQuery,
    pins: &[(usize, usize)],
    limit: usize,
) -> Vec<Vec<usize>> {
    let r = pattern.n();
    let n = host.n();
    let stride = host.stride();
    let mut pinned: Vec<Option<usize>> = vec![None; r];
    let mut pinned_images = BitSet::new(n);
    for &(x, v) in pins {
        if x >= r || v >= n {
            return Vec::new();
        }
        match pinned[x] {
            Some(w) if w != v => return Vec::new(),
            Some(_) => continue,
            None => {}
        }
        if !pinned_images.insert(v) {
            return Vec::new();
        }
        pinned[x] = Some(v);
    }
    if r > n {
        return Vec::new();
    }

    let side_masks = if query.respect_sides {
        host.sides().zip(pattern.sides()).map(|(hs, _)| {
            let a = BitSet::from_iter(n, (0..n).filter(|&v| hs[v] == Side::A));
            let mut b = BitSet::full(n);
            b.difference_with(&a);
            (a, b)
        })
    } else {
        None
    };

    let mut init: Vec<BitSet> = Vec::with_capacity(r);
    for x in 0..r {
        let mut c = query.within.clone().unwrap_or_else(|| BitSet::full(n));
        if let Some((a, b)) = &side_masks {
            match pattern.side(x) {
                Some(Side::A) => c.intersect_with(a),
                Some(Side::B) => c.intersect_with(b),
                None => {}
            }
        }
        for (dx, set) in &query.domains {
            if *dx == x {
                c.intersect_with(set);
            }
        }
        match pinned[x] {
            Some(v) => {
                let keep = c.contains(v);
                c.clear();
                if keep {
                    c.insert(v);
                }
            }
            None => c.difference_with(&pinned_images),
        }
        for y in pattern.neighbors(x) {
            if let Some(v) = pinned[y] {
                c.intersect_words(host.row(v));
            }
        }
        if c.is_empty() {
            return Vec::new();
        }
        init.push(c);
    }

    let back: Vec<Vec<usize>> = (0..r)
        .map(|x| {
            pattern
                .neighbors(x)
                .filter(|&y| y < x && pinned[y].is_none())
                .collect()
        })
        .collect();

    let mut state = State {
        host,
        init: &init,
        back: &back,
        map: vec![usize::MAX; r],
        used: vec![0; stride],
        scratch: vec![0; stride],
        out: Vec::new(),
        limit,
    };
    let _ = state.extend(0);
    state.out
}

struct State<'a> {
    host: &'a Graph,
    init: &'a [BitSet],
    back: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<u64>,
    scratch: Vec<u64>,
    out: Vec<Vec<usize>>,
    limit: usize,
}

impl State<'_> {
    fn extend(&mut self, x: usize) -> ControlFlow<()> {
        if x == self.map.len() {
            self.out.push(self.map.clone());
            return if self.out.len() >= self.limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            };
        }
        let mut cand: Vec<u64> = self.init[x].words().to_vec();
        for &y in &self.back[x] {
            let row = self.host.row(self.map[y]);
            for (c, w) in cand.iter_mut().zip(row) {
                *c &= *w;
            }
        }
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !*u;
        }
        std::mem::swap(&mut self.scratch, &mut cand);
        let cands: Vec<usize> = iter_words(&self.scratch).collect();
        std::mem::swap(&mut self.scratch, &mut cand);
        for v in cands {
            self.map[x] = v;
            self.used[v / 64] |= 1 << (v % 64);
            let flow = self.extend(x + 1);
            self.used[v / 64] &= !(1 << (v % 64));
            flow?;
        }
        self.map[x] = usize::MAX;
        ControlFlow::Continue(())
    }
}

/// Vertices outside `s` adjacent to every vertex of `s`; all vertices when
/// `s` is empty.
pub fn common_neighbors(g: &Graph, s: &[usize]) -> Vec<usize> {
    common_neighbor_set(g, s).to_vec()
}

pub fn common_neighbor_set(g: &Graph, s: &[usize]) -> BitSet {
    let mut c = BitSet::full(g.n());
    for &v in s {
        c.intersect_words(g.row(v));
    }
    for &v in s {
        c.remove(v);
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyClique {
    pub vertices: Vec<usize>,
    /// Whether `vertices` reached the requested stop size.
    pub reached: bool,
}

/// Greedy clique search: from each start vertex in label order, repeatedly
/// add the lowest-labelled vertex adjacent to everything chosen so far.
/// Returns the first clique reaching `stop_size` (truncated to it), else the
/// largest clique seen.
pub fn greedy_clique(g: &Graph, stop_size: Option<usize>) -> GreedyClique {
    greedy_clique_within(g, &BitSet::full(g.n()), stop_size)
}

/// [`greedy_clique`] restricted to the vertices of `allowed`.
pub fn greedy_clique_within(g: &Graph, allowed: &BitSet, stop_size: Option<usize>) -> GreedyClique {
    let mut best: Vec<usize> = Vec::new();
    let stop = stop_size.unwrap_or(usize::MAX);
    if stop == 0 {
        return GreedyClique {
            vertices: Vec::new(),
            reached: true,
        };
    }
    for start in allowed.iter() {
        let mut clique = vec![start];
        let mut cand = allowed.clone();
        cand.intersect_words(g.row(start));
        while clique.len() < stop {
            let Some(v) = cand.first() else { break };
            clique.push(v);
            cand.intersect_words(g.row(v));
        }
        if clique.len() >= stop {
            clique.sort_unstable();
            return GreedyClique {
                vertices: clique,
                reached: true,
            };
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    GreedyClique {
        reached: stop_size.is_none(),
        vertices: best,
    }
}

/// Visits every clique of exactly `size` vertices, as sorted vertex lists in
/// lexicographic order, until `visit` breaks.
pub fn for_each_clique<F>(g: &Graph, size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn rec<F: FnMut(&[usize]) -> ControlFlow<()>>(
        g: &Graph,
        size: usize,
        clique: &mut Vec<usize>,
        cand: &BitSet,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if clique.len() == size {
            return visit(clique);
        }
        let need = size - clique.len();
        if cand.count() < need {
            return ControlFlow::Continue(());
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.intersect_words(g.row(v));
            // Only larger labels, so each clique appears once.
            next.clear_below(v + 1);
            clique.push(v);
            let flow = rec(g, size, clique, &next, visit);
            clique.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    if size == 0 {
        return visit(&[]);
    }
    let mut clique = Vec::with_capacity(size);
    rec(g, size, &mut clique, &BitSet::full(g.n()), &mut visit)
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}
