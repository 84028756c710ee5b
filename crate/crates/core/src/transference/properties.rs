//! The nine deterministic conditions under which the restoration schedule
//! is guaranteed to succeed.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::embed::{find_embedding, is_clique, EmbedQuery};
use crate::graph::Graph;
use crate::pattern::Pattern;

use super::partition::{compute_uv, is_h_completable, TransferencePartition};
use super::TransferError;

#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub name: &'static str,
    pub passed: bool,
    /// Quantified instances examined.
    pub instances: u64,
    pub violations: u64,
    /// The copy of H' (or other certificate) for the first instance.
    pub witness: Option<Vec<usize>>,
    /// The first failing instance.
    pub violation: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub conditions: Vec<ConditionResult>,
    pub first_passed: bool,
    pub second_passed: bool,
    pub passed: bool,
}

impl PropertyReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

struct Tally {
    result: ConditionResult,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            result: ConditionResult {
                name,
                passed: true,
                instances: 0,
                violations: 0,
                witness: None,
                violation: None,
            },
        }
    }

    fn record(&mut self, instance: &[usize], outcome: Option<Vec<usize>>) {
        self.result.instances += 1;
        match outcome {
            Some(w) => {
                if self.result.witness.is_none() {
                    self.result.witness = Some(w);
                }
            }
            None => {
                self.result.passed = false;
                self.result.violations += 1;
                if self.result.violation.is_none() {
                    self.result.violation = Some(instance.to_vec());
                }
            }
        }
    }

    fn done(self) -> ConditionResult {
        self.result
    }
}

/// A copy of H' inside `g[set]`, as images of the vertices of H'.
pub fn copy_within(g: &Graph, pattern: &Pattern, set: &BitSet) -> Option<Vec<usize>> {
    let hp = pattern.h_prime();
    if set.count() < hp.n() {
        return None;
    }
    find_embedding(g, hp, &EmbedQuery::new().within(set.clone()))
}

fn and(a: &BitSet, b: &BitSet) -> BitSet {
    let mut c = a.clone();
    c.intersect_with(b);
    c
}

fn union(parts: &[&[usize]], n: usize) -> BitSet {
    BitSet::from_iter(n, parts.iter().flat_map(|p| p.iter().copied()))
}

/// U_v(H_v, V_v) for every vertex outside K ∪ Z, in partition order.
pub fn all_uv(g: &Graph, p: &TransferencePartition, pattern: &Pattern) -> Result<Vec<BitSet>, TransferError> {
    let z2 = p.set(&p.z2);
    p.attachments
        .iter()
        .map(|a| compute_uv(g, a.v, &a.copy, &a.v_v, pattern, &z2))
        .collect()
}

/// Û_v for every v in S \ D, in label order.
pub fn all_hat_uv(g: &Graph, p: &TransferencePartition, pattern: &Pattern) -> Result<Vec<(usize, BitSet)>, TransferError> {
    let v2 = p.set(&p.v2);
    p.s.iter()
        .filter(|v| !p.d.contains(v))
        .map(|&v| Ok((v, compute_uv(g, v, &p.h_d, &p.d, pattern, &v2)?)))
        .collect()
}

pub fn check_properties(g: &Graph, p: &TransferencePartition, pattern: &Pattern) -> Result<PropertyReport, TransferError> {
    let n = g.n();
    let nb = |v: usize| g.neighbor_set(v);
    let z = p.set(&p.z);
    let t = p.set(&p.t);
    let mut conditions = Vec::new();

    // 1: K is a clique.
    let mut c = Tally::new("first.1");
    let k_ok = is_clique(g, &p.k);
    c.record(&p.k, k_ok.then(|| p.k.clone()));
    conditions.push(c.done());

    // 2: adjacent pairs in Z \ T complete through a copy of H' inside T.
    let mut c = Tally::new("first.2");
    let z_minus_t: Vec<usize> = p.z.iter().copied().filter(|&v| !t.contains(v)).collect();
    for (i, &a) in z_minus_t.iter().enumerate() {
        for &b in &z_minus_t[i + 1..] {
            if !g.has_edge(a, b) {
                continue;
            }
            let found = [(a, b), (b, a)].into_iter().find_map(|(x, y)| {
                let mut q = EmbedQuery::new().pin(pattern.w1(), x).pin(pattern.w2(), y).limit(1);
                for &h in pattern.prime_to_h() {
                    q = q.domain(h, t.clone());
                }
                find_embedding(g, pattern.graph(), &q)
                    .map(|f| pattern.prime_to_h().iter().map(|&h| f[h]).collect::<Vec<_>>())
            });
            c.record(&[a, b], found);
        }
    }
    conditions.push(c.done());

    // 3: each outside vertex has its copy inside Z1.
    let mut c = Tally::new("first.3");
    let z1 = p.set(&p.z1);
    for a in &p.attachments {
        let inside = a.copy.vertices().iter().all(|&x| z1.contains(x));
        let ok = inside && is_h_completable(g, a.v, None, &a.copy, Some(&a.v_v), pattern)?.is_some();
        c.record(&[a.v], ok.then(|| a.copy.map.clone()));
    }
    conditions.push(c.done());

    let uv = all_uv(g, p, pattern)?;

    // 4: every pair of outside vertices shares a copy in U_v1 ∩ U_v2.
    let mut c = Tally::new("first.4");
    for i in 0..p.outside.len() {
        for j in i + 1..p.outside.len() {
            let found = copy_within(g, pattern, &and(&uv[i], &uv[j]));
            c.record(&[p.outside[i], p.outside[j]], found);
        }
    }
    conditions.push(c.done());

    // 5: v outside, u in (K \ S) ∪ Z2 ∪ Z3: copy in U_v ∩ N(u).
    let mut c = Tally::new("first.5");
    let k_minus_s: Vec<usize> = p.k.iter().copied().filter(|v| !p.s.contains(v)).collect();
    let targets5 = union(&[&k_minus_s, &p.z2, &p.z3], n).to_vec();
    for (i, &v) in p.outside.iter().enumerate() {
        for &u in &targets5 {
            c.record(&[v, u], copy_within(g, pattern, &and(&uv[i], &nb(u))));
        }
    }
    conditions.push(c.done());

    // 6: v outside, u in Z1: copy in Z3 ∩ N(v) ∩ N(u).
    let mut c = Tally::new("first.6");
    let z3 = p.set(&p.z3);
    for &v in &p.outside {
        let zv = and(&z3, &nb(v));
        for &u in &p.z1 {
            c.record(&[v, u], copy_within(g, pattern, &and(&zv, &nb(u))));
        }
    }
    conditions.push(c.done());

    // 7: every u outside S has a copy in Z ∩ N(u).
    let mut c = Tally::new("first.7");
    let s = p.set(&p.s);
    for u in (0..n).filter(|&u| !s.contains(u)) {
        c.record(&[u], copy_within(g, pattern, &and(&z, &nb(u))));
    }
    conditions.push(c.done());

    // Second property, 1: H_D inside D ∪ V1 and copies in Û_v ∩ N(u).
    let mut c = Tally::new("second.1");
    let d = p.set(&p.d);
    let v1 = p.set(&p.v1);
    let others = pattern.w1_other_neighbors();
    let hd_ok = p.h_d.is_copy_in(g, pattern)
        && pattern.prime_to_h().iter().zip(&p.h_d.map).all(|(&h, &img)| {
            if others.contains(&h) {
                d.contains(img)
            } else {
                v1.contains(img)
            }
        });
    c.record(&p.h_d.map, hd_ok.then(|| p.h_d.map.clone()));
    let hat = all_hat_uv(g, p, pattern)?;
    let g1_minus_s: Vec<usize> = p.g1.iter().copied().filter(|&v| !s.contains(v)).collect();
    let targets_s1 = union(&[&g1_minus_s, &p.v3], n).to_vec();
    for (v, hat_v) in &hat {
        for &u in &targets_s1 {
            c.record(&[*v, u], copy_within(g, pattern, &and(hat_v, &nb(u))));
        }
    }
    conditions.push(c.done());

    // Second property, 2: v in S \ D, u in V1 ∪ V2: copy in V3 ∩ N(u) ∩ N(v).
    let mut c = Tally::new("second.2");
    let v3 = p.set(&p.v3);
    let targets_s2 = union(&[&p.v1, &p.v2], n).to_vec();
    for (v, _) in &hat {
        let base = and(&v3, &nb(*v));
        for &u in &targets_s2 {
            c.record(&[*v, u], copy_within(g, pattern, &and(&base, &nb(u))));
        }
    }
    conditions.push(c.done());

    let first_passed = conditions.iter().filter(|c| c.name.starts_with("first")).all(|c| c.passed);
    let second_passed = conditions.iter().filter(|c| c.name.starts_with("second")).all(|c| c.passed);
    Ok(PropertyReport {
        conditions,
        first_passed,
        second_passed,
        passed: first_passed && second_passed,
    })
}
