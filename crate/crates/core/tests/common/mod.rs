#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wsat_core::Graph;

/// Edge bit index of {u, v}, u < v, in a graph on `n` vertices.
fn bit(n: usize, u: usize, v: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        p.swap(j, k - 1);
    }
}

/// Smallest edge mask over all relabelings.
fn canonical(n: usize, mask: u32, perms: &[Vec<usize>], pairs: &[(usize, usize)]) -> u32 {
    perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u32, |acc, (_, &(u, v))| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    acc | 1 << bit(n, a, b)
                })
        })
        .min()
        .unwrap_or(0)
}

fn mask_graph(n: usize, mask: u32, pairs: &[(usize, usize)]) -> Graph {
    let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// for n = 1..=max_n, built by adding a vertex to each smaller class.
pub fn all_graphs_up_to(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<BTreeSet<u32>> = vec![BTreeSet::from([0u32])];
    for n in 2..=max_n {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let prev_pairs: Vec<(usize, usize)> = (0..n - 1).flat_map(|u| (u + 1..n - 1).map(move |v| (u, v))).collect();
        let mut next = BTreeSet::new();
        for &m in levels.last().unwrap() {
            let mut base = 0u32;
            for (i, &(u, v)) in prev_pairs.iter().enumerate() {
                if m >> i & 1 == 1 {
                    base |= 1 << bit(n, u, v);
                }
            }
            for nb in 0u32..1 << (n - 1) {
                let mut mask = base;
                for u in 0..n - 1 {
                    if nb >> u & 1 == 1 {
                        mask |= 1 << bit(n, u, n - 1);
                    }
                }
                next.insert(canonical(n, mask, &perms, &pairs));
            }
        }
        levels.push(next);
    }
    levels
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let n = i + 1;
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            set.iter().map(|&m| mask_graph(n, m, &pairs)).collect()
        })
        .collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random subgraph keeping each edge with probability `p`.
pub fn random_subgraph(rng: &mut ChaCha8Rng, g: &Graph, p: f64) -> Graph {
    let mut f = g.empty_like();
    for (u, v) in g.edges_iter() {
        if rng.gen_bool(p) {
            f.add_edge(u, v);
        }
    }
    f
}

pub fn shuffled_edges(rng: &mut ChaCha8Rng, g: &Graph) -> Vec<(usize, usize)> {
    let mut e = g.edges();
    e.shuffle(rng);
    e
}

/// Closure by repeated full passes, checking every missing host edge against
/// every injective map of the pattern. Independent of the library engine.
pub fn naive_closure(host: &Graph, initial: &Graph, pattern: &Graph) -> Graph {
    let mut cur = initial.clone();
    let k = pattern.n();
    let pe = pattern.edges();
    loop {
        let mut added = false;
        for (a, b) in host.edges() {
            if cur.has_edge(a, b) {
                continue;
            }
            cur.add_edge(a, b);
            let mut map = vec![usize::MAX; k];
            let mut used = vec![false; host.n()];
            let ok = search(&cur, &pe, &mut map, &mut used, 0, (a, b));
            if ok {
                added = true;
            } else {
                cur.remove_edge(a, b);
            }
        }
        if !added {
            return cur;
        }
    }
}

fn search(g: &Graph, pe: &[(usize, usize)], map: &mut Vec<usize>, used: &mut Vec<bool>, i: usize, e: (usize, usize)) -> bool {
    if i == map.len() {
        let all = pe.iter().all(|&(x, y)| g.has_edge(map[x], map[y]));
        let covers = pe.iter().any(|&(x, y)| {
            let (p, q) = (map[x].min(map[y]), map[x].max(map[y]));
            (p, q) == e
        });
        return all && covers;
    }
    for v in 0..g.n() {
        if used[v] {
            continue;
        }
        map[i] = v;
        used[v] = true;
        let partial_ok = pe
            .iter()
            .filter(|&&(x, y)| x <= i && y <= i)
            .all(|&(x, y)| g.has_edge(map[x], map[y]));
        if partial_ok && search(g, pe, map, used, i + 1, e) {
            used[v] = false;
            return true;
        }
        used[v] = false;
    }
    false
}
