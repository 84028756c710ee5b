//! Pattern graphs H together with the data the transference machinery needs.

use std::path::PathBuf;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Side};

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("pattern has isolated vertex {0}")]
    IsolatedVertex(usize),
    #[error("pattern must have at least two vertices")]
    TooSmall,
    #[error("designated vertex {w1} has degree {degree}, but the minimum degree is {min}")]
    NotMinimumDegree { w1: usize, degree: usize, min: usize },
    #[error("designated vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("invalid pattern parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug)]
pub enum PatternKind {
    Clique(usize),
    Biclique(usize, usize),
    Star(usize),
    Barbell(usize),
    FromFile { path: PathBuf, w1: Option<usize> },
}

/// A pattern H with designated vertices.
///
/// `w1` has degree `δ(H) = d + 1` and `w2` is a neighbour of it. `h_prime` is
/// H with `w1` and `w2` deleted; `h_double_prime` is H minus the edge
/// `{w1, w2}`.
#[derive(Clone, Debug)]
pub struct Pattern {
    h: Graph,
    label: String,
    w1: usize,
    w2: usize,
    h_prime: Graph,
    prime_to_h: Vec<usize>,
    h_double_prime: Graph,
}

impl Pattern {
    /// Wraps `h`, choosing `w1` as the lowest-labelled minimum-degree vertex
    /// unless one is given, and `w2` as the lowest-labelled neighbour of `w1`.
    pub fn new(h: Graph, w1: Option<usize>, label: impl Into<String>) -> Result<Self, PatternError> {
        if h.n() < 2 {
            return Err(PatternError::TooSmall);
        }
        if let Some(&v) = h.isolated_vertices().first() {
            return Err(PatternError::IsolatedVertex(v));
        }
        let min = h.min_degree();
        let w1 = match w1 {
            Some(v) if v >= h.n() => return Err(PatternError::OutOfRange(v)),
            Some(v) if h.degree(v) != min => {
                return Err(PatternError::NotMinimumDegree {
                    w1: v,
                    degree: h.degree(v),
                    min,
                })
            }
            Some(v) => v,
            None => (0..h.n()).find(|&v| h.degree(v) == min).unwrap(),
        };
        let w2 = h.neighbors(w1).next().expect("w1 is not isolated");
        let prime_to_h: Vec<usize> = (0..h.n()).filter(|&v| v != w1 && v != w2).collect();
        let h_prime = h.induced(&prime_to_h);
        let mut h_double_prime = h.clone();
        h_double_prime.remove_edge(w1, w2);
        Ok(Pattern {
            h,
            label: label.into(),
            w1,
            w2,
            h_prime,
            prime_to_h,
            h_double_prime,
        })
    }

    pub fn clique(s: usize) -> Result<Self, PatternError> {
        if s < 2 {
            return Err(PatternError::Parameters(format!("K_{s} needs s >= 2")));
        }
        Pattern::new(Graph::complete(s), None, format!("K_{s}"))
    }

    /// K_{s,t} with side A = `0..s`.
    pub fn biclique(s: usize, t: usize) -> Result<Self, PatternError> {
        if s == 0 || t == 0 {
            return Err(PatternError::Parameters(format!("K_{{{s},{t}}} needs s, t >= 1")));
        }
        Pattern::new(Graph::complete_bipartite(s, t), None, format!("K_{{{s},{t}}}"))
    }

    /// K_{1,t} with centre 0 and leaves `1..=t`. The minimum degree is 1, so
    /// `w1` is the leaf 1 and `w2` the centre.
    pub fn star(t: usize) -> Result<Self, PatternError> {
        if t == 0 {
            return Err(PatternError::Parameters("K_{1,t} needs t >= 1".into()));
        }
        let mut p = Pattern::new(Graph::complete_bipartite(1, t), None, format!("K_{{1,{t}}}"))?;
        if t == 1 {
            // K_2: both ends are leaves.
            p.label = "K_2".into();
        }
        Ok(p)
    }

    /// Two disjoint t-cliques on `0..t` and `t..2t` joined by the edge `{t-1, t}`.
    pub fn barbell(t: usize) -> Result<Self, PatternError> {
        if t < 2 {
            return Err(PatternError::Parameters("barbell needs t >= 2".into()));
        }
        let mut g = Graph::new(2 * t);
        for base in [0, t] {
            for u in base..base + t {
                for v in u + 1..base + t {
                    g.add_edge(u, v);
                }
            }
        }
        g.add_edge(t - 1, t);
        Pattern::new(g, None, format!("barbell_{t}"))
    }

    pub fn from_kind(kind: &PatternKind) -> Result<Self, PatternError> {
        match kind {
            PatternKind::Clique(s) => Pattern::clique(*s),
            PatternKind::Biclique(s, t) => Pattern::biclique(*s, *t),
            PatternKind::Star(t) => Pattern::star(*t),
            PatternKind::Barbell(t) => Pattern::barbell(*t),
            PatternKind::FromFile { path, w1 } => {
                let g = Graph::read_file(path)?;
                Pattern::new(g, *w1, path.display().to_string())
            }
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.h
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn w1(&self) -> usize {
        self.w1
    }

    pub fn w2(&self) -> usize {
        self.w2
    }

    /// |V(H)|.
    pub fn r(&self) -> usize {
        self.h.n()
    }

    /// δ(H) - 1.
    pub fn d(&self) -> usize {
        self.h.min_degree() - 1
    }

    pub fn min_degree(&self) -> usize {
        self.h.min_degree()
    }

    pub fn h_prime(&self) -> &Graph {
        &self.h_prime
    }

    /// `prime_to_h()[i]` is the vertex of H that vertex `i` of H' came from.
    pub fn prime_to_h(&self) -> &[usize] {
        &self.prime_to_h
    }

    pub fn h_double_prime(&self) -> &Graph {
        &self.h_double_prime
    }

    /// H with `w2` deleted, and for each of its vertices the original label.
    pub fn h_minus_w2(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.h.n()).filter(|&v| v != self.w2).collect();
        (self.h.induced(&keep), keep)
    }

    /// N_H(w1) \ {w2}, the d vertices whose images are prescribed by V_v.
    pub fn w1_other_neighbors(&self) -> Vec<usize> {
        self.h.neighbors(self.w1).filter(|&v| v != self.w2).collect()
    }

    pub fn is_bipartite_pattern(&self) -> bool {
        self.h.sides().is_some()
    }

    /// Side of pattern vertex `v`, when H carries a bipartition.
    pub fn side(&self, v: usize) -> Option<Side> {
        self.h.side(v)
    }

    pub fn is_connected(&self) -> bool {
        self.h.is_connected()
    }
}
