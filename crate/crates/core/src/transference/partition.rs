//! Vertex sets and attached copies of H' used by the restoration schedule.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::embed::{common_neighbor_set, enumerate_embeddings, find_embedding, greedy_clique_within, EmbedQuery};
use crate::graph::Graph;
use crate::pattern::Pattern;

use super::family::SaturatedFamily;
use super::TransferError;

/// A copy of H' in the host: `map[i]` is the image of vertex `i` of H'.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HCopy {
    pub map: Vec<usize>,
}

impl HCopy {
    pub fn vertices(&self) -> &[usize] {
        &self.map
    }

    /// Whether the images are distinct and every edge of H' lands on an edge.
    pub fn is_copy_in(&self, g: &Graph, pattern: &Pattern) -> bool {
        crate::embed::is_embedding(g, pattern.h_prime(), &self.map)
    }
}

/// The copy H_v ⊆ Z1 attached to a vertex v outside K ∪ Z, and V_v, the
/// images of N_H(w1) \ {w2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub v: usize,
    pub copy: HCopy,
    pub v_v: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferencePartition {
    pub n: usize,
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
    pub k: Vec<usize>,
    pub s: Vec<usize>,
    pub d: Vec<usize>,
    pub r: Vec<usize>,
    pub z: Vec<usize>,
    pub t: Vec<usize>,
    pub z1: Vec<usize>,
    pub z2: Vec<usize>,
    pub z3: Vec<usize>,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub v3: Vec<usize>,
    /// Vertices outside K ∪ Z, increasing.
    pub outside: Vec<usize>,
    /// One per vertex of `outside`, in the same order.
    pub attachments: Vec<Attachment>,
    /// Copy of H' in D ∪ V1 with N_H(w1) \ {w2} mapped onto D.
    pub h_d: HCopy,
}

impl TransferencePartition {
    pub fn set(&self, items: &[usize]) -> BitSet {
        BitSet::from_iter(self.n, items.iter().copied())
    }

    pub fn attachment(&self, v: usize) -> Option<&Attachment> {
        self.outside
            .binary_search(&v)
            .ok()
            .map(|i| &self.attachments[i])
    }
}

/// Splits `items` into three consecutive parts of near-equal size, earlier
/// parts taking the remainder.
pub fn thirds(items: &[usize]) -> [Vec<usize>; 3] {
    let q = items.len() / 3;
    let rem = items.len() % 3;
    let a = q + usize::from(rem > 0);
    let b = a + q + usize::from(rem > 1);
    [items[..a].to_vec(), items[a..b].to_vec(), items[b..].to_vec()]
}

/// Builds the partition for `g` deterministically from vertex labels.
pub fn build_partition(
    g: &Graph,
    pattern: &Pattern,
    family: &dyn SaturatedFamily,
) -> Result<TransferencePartition, TransferError> {
    let n = g.n();
    if !n.is_multiple_of(2) || n == 0 {
        return Err(TransferError::OddOrder(n));
    }
    let half = n / 2;
    let g1: Vec<usize> = (0..half).collect();
    let g2: Vec<usize> = (half..n).collect();
    let r = pattern.r();
    let d = pattern.d();
    let core = family.core_size();
    if core < d {
        return Err(TransferError::Family(format!("core size {core} is smaller than d = {d}")));
    }
    let target = ((n as f64).ln().ceil() as usize).max(core + r);
    let clique = greedy_clique_within(g, &BitSet::from_iter(n, g1.iter().copied()), Some(target));
    if !clique.reached {
        return Err(TransferError::CliqueTooSmall {
            found: clique.vertices.len(),
            needed: target,
        });
    }
    let k = clique.vertices;
    let s: Vec<usize> = k[..core].to_vec();
    let dd: Vec<usize> = s[..d].to_vec();
    let rr: Vec<usize> = k[core..core + r].to_vec();

    let g2_set = BitSet::from_iter(n, g2.iter().copied());
    let mut z_set = common_neighbor_set(g, &dd);
    z_set.intersect_with(&g2_set);
    let z = z_set.to_vec();
    let mut t_set = common_neighbor_set(g, &rr);
    t_set.intersect_with(&z_set);
    let t = t_set.to_vec();
    let [z1, z2, z3] = thirds(&z);
    let [v1, v2, v3] = thirds(&g2);

    let mut taken = BitSet::from_iter(n, k.iter().copied());
    taken.union_with(&z_set);
    let outside: Vec<usize> = (0..n).filter(|&v| !taken.contains(v)).collect();

    let (minus, minus_to_h) = pattern.h_minus_w2();
    let w1_minus = minus_to_h.iter().position(|&x| x == pattern.w1()).expect("w1 survives");
    let z1_set = BitSet::from_iter(n, z1.iter().copied());
    let others = pattern.w1_other_neighbors();
    let mut attachments = Vec::with_capacity(outside.len());
    for &v in &outside {
        let mut q = EmbedQuery::new().pin(w1_minus, v).limit(1);
        for x in (0..minus.n()).filter(|&x| x != w1_minus) {
            q = q.domain(x, z1_set.clone());
        }
        let f = enumerate_embeddings(g, &minus, &q)
            .into_iter()
            .next()
            .ok_or(TransferError::AttachmentMissing(v))?;
        let image_of = |h: usize| f[minus_to_h.iter().position(|&x| x == h).expect("vertex of H - w2")];
        let copy = HCopy {
            map: pattern.prime_to_h().iter().map(|&h| image_of(h)).collect(),
        };
        let mut v_v: Vec<usize> = others.iter().map(|&h| image_of(h)).collect();
        v_v.sort_unstable();
        attachments.push(Attachment { v, copy, v_v });
    }

    let d_set = BitSet::from_iter(n, dd.iter().copied());
    let v1_set = BitSet::from_iter(n, v1.iter().copied());
    let mut q = EmbedQuery::new();
    for (i, &h) in pattern.prime_to_h().iter().enumerate() {
        q = q.domain(i, if others.contains(&h) { d_set.clone() } else { v1_set.clone() });
    }
    let h_d = find_embedding(g, pattern.h_prime(), &q)
        .map(|map| HCopy { map })
        .ok_or(TransferError::CoreCopyMissing)?;

    Ok(TransferencePartition {
        n,
        g1,
        g2,
        k,
        s,
        d: dd,
        r: rr,
        z,
        t,
        z1,
        z2,
        z3,
        v1,
        v2,
        v3,
        outside,
        attachments,
        h_d,
    })
}

/// Decides whether `(v, u, h_tilde[, v_tilde])` is H-completable in `g`, or
/// `(v, h_tilde[, v_tilde])` when `u` is `None`.
///
/// Returns the completing embedding indexed by vertex of H, with `None` at
/// `w2` in the single-vertex form. Inside `h_tilde` only the edges of the
/// copy itself may be used, so H' must map onto the copy exactly.
pub fn is_h_completable(
    g: &Graph,
    v: usize,
    u: Option<usize>,
    h_tilde: &HCopy,
    v_tilde: Option<&[usize]>,
    pattern: &Pattern,
) -> Result<Option<Vec<Option<usize>>>, TransferError> {
    if h_tilde.map.len() != pattern.h_prime().n() || !h_tilde.is_copy_in(g, pattern) {
        return Err(TransferError::InvalidCopy);
    }
    let copy = h_tilde.vertices();
    if copy.contains(&v) || u.is_some_and(|u| u == v || copy.contains(&u)) {
        return Err(TransferError::InvalidCopy);
    }
    if let Some(vt) = v_tilde {
        if vt.len() != pattern.d() || vt.iter().any(|x| !copy.contains(x)) {
            return Err(TransferError::InvalidCopy);
        }
    }

    // Local host: [v, u?, copy...].
    let mut local: Vec<usize> = vec![v];
    local.extend(u);
    let offset = local.len();
    local.extend_from_slice(copy);
    let m = local.len();
    let mut lg = Graph::new(m);
    for (x, y) in pattern.h_prime().edges_iter() {
        lg.add_edge(offset + x, offset + y);
    }
    for a in 0..offset {
        for b in a + 1..m {
            if g.has_edge(local[a], local[b]) {
                lg.add_edge(a, b);
            }
        }
    }

    let (target, to_h) = match u {
        Some(_) => (pattern.graph().clone(), (0..pattern.r()).collect::<Vec<_>>()),
        None => pattern.h_minus_w2(),
    };
    let pos = |h: usize| to_h.iter().position(|&x| x == h);
    let mut q = EmbedQuery::new().pin(pos(pattern.w1()).expect("w1 present"), 0).limit(1);
    if u.is_some() {
        q = q.pin(pos(pattern.w2()).expect("w2 present"), 1);
    }
    if let Some(vt) = v_tilde {
        let inside = BitSet::from_iter(m, (offset..m).filter(|&i| vt.contains(&local[i])));
        let mut rest = BitSet::from_iter(m, offset..m);
        rest.difference_with(&inside);
        let others = pattern.w1_other_neighbors();
        for &h in pattern.prime_to_h() {
            let set = if others.contains(&h) { inside.clone() } else { rest.clone() };
            q = q.domain(pos(h).expect("H' vertex present"), set);
        }
    }
    Ok(find_embedding(&lg, &target, &q).map(|f| {
        let mut out = vec![None; pattern.r()];
        for (i, &img) in f.iter().enumerate() {
            out[to_h[i]] = Some(local[img]);
        }
        out
    }))
}

/// U_v(H_v, V_v): neighbours u of v in `z2` for which `(v, u, copy, v_v)`
/// is H-completable.
pub fn compute_uv(
    g: &Graph,
    v: usize,
    copy: &HCopy,
    v_v: &[usize],
    pattern: &Pattern,
    z2: &BitSet,
) -> Result<BitSet, TransferError> {
    let mut out = BitSet::new(g.n());
    for u in z2.iter() {
        if u == v || !g.has_edge(u, v) || copy.vertices().contains(&u) {
            continue;
        }
        if is_h_completable(g, v, Some(u), copy, Some(v_v), pattern)?.is_some() {
            out.insert(u);
        }
    }
    Ok(out)
}
