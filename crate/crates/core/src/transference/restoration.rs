//! The sparse subgraph F and the ten-step schedule that restores G from it.

use serde::Serialize;

use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::percolation::{Engine, Mode, PercolationTrace};

use super::family::SaturatedFamily;
use super::partition::TransferencePartition;
use super::properties::{all_hat_uv, all_uv};
use super::TransferError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCountReport {
    pub f_edges: usize,
    /// |E(F¹_n)|.
    pub family_edges: usize,
    /// |E(F¹_k)| restricted to its core.
    pub core_k_edges: usize,
    /// |E(F¹_n)| restricted to its core.
    pub core_n_edges: usize,
    /// |E(F)| = |E(F¹_n)| + core_k_edges - core_n_edges.
    pub identity_holds: bool,
    pub equals_family: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepSummary {
    pub step: &'static str,
    pub restored: usize,
}

#[derive(Clone, Debug)]
pub struct Restoration {
    pub f: Graph,
    pub trace: PercolationTrace,
    pub report: EdgeCountReport,
    pub steps: Vec<StepSummary>,
}

/// F: a copy of F¹_k on K with S on the core, the edges from Z to D, and
/// the edges from each outside vertex to its V_v.
pub fn build_initial(
    g: &Graph,
    p: &TransferencePartition,
    family: &dyn SaturatedFamily,
) -> Result<(Graph, EdgeCountReport), TransferError> {
    let n = g.n();
    let k = p.k.len();
    let (fk, core_k) = family.member(k).map_err(TransferError::Family)?;
    if core_k.len() != p.s.len() {
        return Err(TransferError::Family("core size changed with k".into()));
    }
    // Label-order map K -> 0..k sending S onto the core.
    let mut inverse = vec![usize::MAX; k];
    for (&a, &b) in core_k.iter().zip(&p.s) {
        inverse[a] = b;
    }
    let rest_targets = (0..k).filter(|x| !core_k.contains(x));
    let rest_sources = p.k.iter().filter(|v| !p.s.contains(v));
    for (a, &b) in rest_targets.zip(rest_sources) {
        inverse[a] = b;
    }
    let mut f = g.empty_like();
    for (a, b) in fk.edges_iter() {
        f.try_add_edge(inverse[a], inverse[b])?;
        if !g.has_edge(inverse[a], inverse[b]) {
            return Err(TransferError::NotInHost(inverse[a], inverse[b]));
        }
    }
    for &z in &p.z {
        for &d in &p.d {
            f.add_edge(z, d);
        }
    }
    for a in &p.attachments {
        for &x in &a.v_v {
            f.add_edge(a.v, x);
        }
    }

    let (fn_, core_n) = family.member(n).map_err(TransferError::Family)?;
    let core_k_edges = fk.induced(&core_k).edge_count();
    let core_n_edges = fn_.induced(&core_n).edge_count();
    let f_edges = f.edge_count();
    let report = EdgeCountReport {
        f_edges,
        family_edges: fn_.edge_count(),
        core_k_edges,
        core_n_edges,
        identity_holds: f_edges + core_n_edges == fn_.edge_count() + core_k_edges,
        equals_family: f_edges == fn_.edge_count(),
    };
    Ok((f, report))
}

fn pairs_within(a: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &x) in a.iter().enumerate() {
        for &y in &a[i + 1..] {
            out.push((x, y));
        }
    }
    out
}

fn pairs_between(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &x in a {
        for &y in b {
            if x != y {
                out.push((x, y));
            }
        }
    }
    out
}

/// Runs the schedule. Each step repeatedly scans its target edges, adding
/// any that currently completes a copy of H, until the step's edges are all
/// present or a full scan adds nothing.
pub fn run_restoration(
    g: &Graph,
    p: &TransferencePartition,
    pattern: &Pattern,
    family: &dyn SaturatedFamily,
) -> Result<Restoration, TransferError> {
    let (f, report) = build_initial(g, p, family)?;
    let t = p.set(&p.t);
    let z_minus_t: Vec<usize> = p.z.iter().copied().filter(|&v| !t.contains(v)).collect();
    let k_minus_s: Vec<usize> = p.k.iter().copied().filter(|v| !p.s.contains(v)).collect();
    let s_minus_d: Vec<usize> = p.s.iter().copied().filter(|v| !p.d.contains(v)).collect();
    let g1_minus_s: Vec<usize> = p.g1.iter().copied().filter(|v| !p.s.contains(v)).collect();
    let uv = all_uv(g, p, pattern)?;
    let hat = all_hat_uv(g, p, pattern)?;
    let mut far_part: Vec<usize> = [k_minus_s.as_slice(), &p.z2, &p.z3].concat();
    far_part.sort_unstable();

    let mut schedule: Vec<(&'static str, Vec<(usize, usize)>)> = vec![
        ("1", pairs_within(&p.k)),
        ("2", pairs_between(&p.k, &p.z)),
        ("3", pairs_within(&p.t)),
        ("4", pairs_between(&z_minus_t, &p.t)),
        ("5", pairs_within(&z_minus_t)),
        (
            "6",
            p.outside
                .iter()
                .zip(&uv)
                .flat_map(|(&v, u)| u.iter().map(move |x| (v, x)))
                .collect(),
        ),
        ("7", pairs_within(&p.outside)),
        ("8a", pairs_between(&p.outside, &far_part)),
        ("8b", pairs_between(&p.outside, &p.z1)),
        ("9", pairs_between(&p.d, &p.outside)),
        (
            "10a",
            hat.iter()
                .flat_map(|(v, u)| u.iter().map(move |x| (*v, x)))
                .collect(),
        ),
    ];
    let mut near: Vec<usize> = [g1_minus_s.as_slice(), &p.v3].concat();
    near.sort_unstable();
    let mut low: Vec<usize> = [p.v1.as_slice(), &p.v2].concat();
    low.sort_unstable();
    schedule.push(("10b", pairs_between(&s_minus_d, &near)));
    schedule.push(("10c", pairs_between(&s_minus_d, &low)));

    let mut engine = Engine::new(g, f.clone(), pattern.graph(), Mode::Free, true);
    let mut steps = Vec::new();
    for (name, targets) in schedule {
        let targets: Vec<(usize, usize)> = targets
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .filter(|&(a, b)| g.has_edge(a, b))
            .collect();
        let mut restored = 0;
        loop {
            let mut progress = false;
            for &(a, b) in &targets {
                if engine.try_restore(a, b) {
                    progress = true;
                    restored += 1;
                }
            }
            if !progress {
                break;
            }
        }
        if let Some(&(a, b)) = targets.iter().find(|&&(a, b)| !engine.current.has_edge(a, b)) {
            return Err(TransferError::StepFailed { step: name, edge: (a, b) });
        }
        steps.push(StepSummary { step: name, restored });
    }
    if engine.current.edge_count() != g.edge_count() {
        let missing = g
            .edges_iter()
            .find(|&(a, b)| !engine.current.has_edge(a, b))
            .expect("some edge is missing");
        return Err(TransferError::StepFailed {
            step: "final",
            edge: missing,
        });
    }
    let trace = PercolationTrace {
        initial: f.clone(),
        steps: engine.steps.take().unwrap_or_default(),
    };
    Ok(Restoration {
        f,
        trace,
        report,
        steps,
    })
}
