//! Queue number parameterized by vertex cover.
//!
//! Vertices outside a cover `C` are grouped by their neighborhood (their
//! type). A type class larger than `2·h^τ + 1` can lose a member without
//! changing whether an h-queue layout exists, and a layout of the smaller
//! graph is lifted back by placing the removed vertex right after a member
//! with the same queue signature. The reduced graph has a bounded number of
//! orders up to swapping same-type vertices, which is searched exhaustively.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{GraphError, VcError};
use crate::graph::{Edge, Graph, VertexSet};
use crate::layout::{self, min_queues_for_order, positions, validate_layout, validate_partial, LinearLayout, ABSENT};
use crate::params::{is_vertex_cover, min_vertex_cover, VertexCoverCertificate};

/// Non-cover vertices whose neighborhood is exactly `neighborhood`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeClass {
    pub neighborhood: VertexSet,
    pub members: Vec<usize>,
}

/// Cover vertices first in id order, then the rest in id order. The edge
/// between `u` and the cover vertex `c_i` goes to queue `i`, where `u` is a
/// non-cover vertex or an earlier cover vertex, so every queue is a star.
pub fn construct_tau_layout(g: &Graph, cover: &VertexCoverCertificate) -> Result<LinearLayout, VcError> {
    if let Some(&e) = g.edges().iter().find(|e| !cover.cover.contains(e.0) && !cover.cover.contains(e.1)) {
        return Err(VcError::InvalidCover(e));
    }
    let mut rank = vec![0usize; g.n()];
    for (i, c) in cover.cover.iter().enumerate() {
        rank[c] = i + 1;
    }
    let order: Vec<usize> = cover.cover.iter().chain((0..g.n()).filter(|&v| rank[v] == 0)).collect();
    let queues = g.edges().iter().map(|&e| (e, rank[e.0].max(rank[e.1]))).collect();
    let num_queues = if g.m() == 0 { 0 } else { cover.size() };
    Ok(LinearLayout::new(order, queues, num_queues))
}

/// Classes sorted by neighborhood; members in id order. Isolated vertices
/// form the class with the empty neighborhood.
pub fn type_partition(g: &Graph, cover: &VertexSet) -> Vec<TypeClass> {
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in (0..g.n()).filter(|&v| !cover.contains(v)) {
        classes.entry(g.neighbors(v).to_vec()).or_default().push(v);
    }
    classes
        .into_iter()
        .map(|(nb, members)| TypeClass { neighborhood: VertexSet::from_unsorted(nb), members })
        .collect()
}

/// `2·h^τ + 1`, saturating.
pub fn trim_bound(h: usize, tau: usize) -> usize {
    let power = u32::try_from(tau).ok().and_then(|t| h.checked_pow(t)).unwrap_or(usize::MAX);
    power.saturating_mul(2).saturating_add(1)
}

/// One removed vertex; ids refer to the graph the kernel was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trim {
    pub vertex: usize,
    pub neighborhood: VertexSet,
    /// Class size just before this removal.
    pub class_size: usize,
}

#[derive(Clone, Debug)]
pub struct VcKernel {
    pub graph: Graph,
    /// `origin[kernel id] = id in the input graph`.
    pub origin: Vec<usize>,
    /// The cover in kernel ids.
    pub cover: VertexSet,
    pub trims: Vec<Trim>,
    pub bound: usize,
}

impl VcKernel {
    /// Trim log over the input graph's labels, mirroring the treedepth
    /// kernel's removal log.
    pub fn trims_to_json(&self, g: &Graph) -> Value {
        Value::Array(
            self.trims
                .iter()
                .map(|t| {
                    let nb: Vec<&str> = t.neighborhood.iter().map(|v| g.label(v)).collect();
                    serde_json::json!({
                        "removed": [g.label(t.vertex)],
                        "type": nb,
                        "class_size": t.class_size,
                    })
                })
                .collect(),
        )
    }
}

/// Removes the largest-id members of every type class until each has at
/// most `2·h^τ + 1` members.
pub fn build_vc_kernel(g: &Graph, cover: &VertexCoverCertificate, h: usize) -> VcKernel {
    let bound = trim_bound(h, cover.size());
    let mut trims = Vec::new();
    let mut removed = vec![false; g.n()];
    for class in type_partition(g, &cover.cover) {
        let mut size = class.members.len();
        for &v in class.members.iter().rev() {
            if size <= bound {
                break;
            }
            trims.push(Trim { vertex: v, neighborhood: class.neighborhood.clone(), class_size: size });
            removed[v] = true;
            size -= 1;
        }
    }
    let keep: VertexSet = (0..g.n()).filter(|&v| !removed[v]).collect();
    let (graph, origin) = g.induced_subgraph(&keep).expect("kept vertices belong to g");
    let cover_k = origin.iter().enumerate().filter(|&(_, &o)| cover.cover.contains(o)).map(|(i, _)| i).collect();
    VcKernel { graph, origin, cover: cover_k, trims, bound }
}

/// An h-queue layout of `gstar` if one exists.
///
/// Orders are enumerated as multiset permutations: each cover vertex is its
/// own symbol and each type class one symbol with multiplicity, its members
/// laid out in id order. Prefixes that already force a rainbow of more than
/// `h` edges are cut.
pub fn solve_kernel(gstar: &Graph, cover: &VertexSet, h: usize) -> Option<LinearLayout> {
    let mut groups: Vec<Vec<usize>> = cover.iter().map(|c| vec![c]).collect();
    groups.extend(type_partition(gstar, cover).into_iter().map(|c| c.members));
    let mut search = OrderSearch {
        g: gstar,
        groups,
        used: Vec::new(),
        pos: vec![ABSENT; gstar.n()],
        order: Vec::with_capacity(gstar.n()),
        h,
    };
    search.used = vec![0; search.groups.len()];
    if !search.dfs() {
        return None;
    }
    let layout = min_queues_for_order(gstar, &search.order);
    (layout.num_queues() <= h).then_some(layout)
}

struct OrderSearch<'g> {
    g: &'g Graph,
    groups: Vec<Vec<usize>>,
    used: Vec<usize>,
    pos: Vec<usize>,
    order: Vec<usize>,
    h: usize,
}

impl OrderSearch<'_> {
    fn dfs(&mut self) -> bool {
        if self.order.len() == self.g.n() {
            return true;
        }
        for gi in 0..self.groups.len() {
            let Some(&v) = self.groups[gi].get(self.used[gi]) else {
                continue;
            };
            self.used[gi] += 1;
            self.pos[v] = self.order.len();
            self.order.push(v);
            if layout::prefix_rainbow_bound(self.g.edges(), &self.pos) <= self.h && self.dfs() {
                return true;
            }
            self.order.pop();
            self.pos[v] = ABSENT;
            self.used[gi] -= 1;
        }
        false
    }
}

/// Queue of each edge `uw`, `w` ranging over `neighborhood` in id order.
pub fn queue_signature(layout: &LinearLayout, u: usize, neighborhood: &VertexSet) -> Vec<usize> {
    neighborhood.iter().map(|w| layout.queue_of(Edge::new(u, w)).unwrap_or(0)).collect()
}

/// Reinserts `v` (of type `neighborhood`) into a layout of `g - v`.
///
/// Members of the class present in the layout are grouped by queue
/// signature; `v` goes immediately right of the leftmost member of the first
/// signature group with at least three members and copies that member's
/// queues.
pub fn extend_vc_layout(layout: &LinearLayout, g: &Graph, v: usize, neighborhood: &VertexSet) -> Result<LinearLayout, VcError> {
    if g.neighbors(v) != neighborhood.as_slice() {
        return Err(VcError::WrongType(v));
    }
    let pos = positions(g.n(), layout.order());
    if pos[v] != ABSENT {
        return Err(VcError::Internal(format!("vertex {v} is already placed")));
    }
    let mut out = layout.clone();
    if neighborhood.is_empty() {
        let last = layout.order().len().checked_sub(1);
        out.insert_vertex(last, v, []);
        return Ok(out);
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for &u in layout.order() {
        if u != v && g.neighbors(u) == neighborhood.as_slice() {
            groups.entry(queue_signature(layout, u, neighborhood)).or_default().push((pos[u], u));
        }
    }
    let (signature, members) = groups.into_iter().find(|(_, m)| m.len() >= 3).ok_or(VcError::NoEquivalentTriple)?;
    let (anchor_pos, _) = members.into_iter().min().expect("group is non-empty");
    let edges = neighborhood.iter().zip(signature).map(|(w, q)| (Edge::new(v, w), q));
    out.insert_vertex(Some(anchor_pos), v, edges);
    match validate_partial(g, &out)? {
        layout::Validation::Valid => Ok(out),
        layout::Validation::Nested(x) => Err(VcError::Internal(format!(
            "reinserting {v} produced nesting edges {} and {} in queue {}",
            x.outer, x.inner, x.queue
        ))),
    }
}

/// Queue number of a connected graph with an optimal layout.
///
/// Computes a minimum cover, then binary searches `h` in `1..=τ` (the cover
/// layout always achieves `τ`), building and solving a fresh kernel per
/// probe. The final kernel layout is lifted by reinserting trimmed vertices
/// in reverse order.
pub fn queue_number_vc(g: &Graph) -> Result<(usize, LinearLayout), VcError> {
    let comps = g.connected_components().len();
    if comps > 1 {
        return Err(GraphError::Disconnected(comps).into());
    }
    let cover = min_vertex_cover(g, g.n()).expect("the full vertex set is a cover");
    if g.m() == 0 {
        return Ok((0, LinearLayout::single_queue(g, (0..g.n()).collect())));
    }
    let tau = cover.size();
    let (mut lo, mut hi) = (1, tau);
    let mut found: Option<(VcKernel, LinearLayout)> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let kernel = build_vc_kernel(g, &cover, mid);
        match solve_kernel(&kernel.graph, &kernel.cover, mid) {
            Some(l) => {
                hi = mid;
                found = Some((kernel, l));
            }
            None => lo = mid + 1,
        }
    }
    let layout = match found {
        Some((kernel, l)) => lift(g, &kernel, &l)?,
        None => construct_tau_layout(g, &cover)?,
    };
    match validate_layout(g, &layout)? {
        layout::Validation::Valid if layout.num_queues() <= hi => Ok((hi, layout)),
        other => Err(VcError::Internal(format!("final layout failed validation: {other:?}"))),
    }
}

/// Lifts a kernel layout to the graph the kernel was built from.
pub fn lift(g: &Graph, kernel: &VcKernel, layout: &LinearLayout) -> Result<LinearLayout, VcError> {
    let mut out = layout.map_vertices(&kernel.origin);
    for t in kernel.trims.iter().rev() {
        out = extend_vc_layout(&out, g, t.vertex, &t.neighborhood)?;
    }
    Ok(out)
}

/// Checks a cover before handing it to the kernel functions.
pub fn certify_cover(g: &Graph, cover: VertexSet) -> Result<VertexCoverCertificate, VcError> {
    if let Some(&e) = g.edges().iter().find(|e| !cover.contains(e.0) && !cover.contains(e.1)) {
        return Err(VcError::InvalidCover(e));
    }
    debug_assert!(is_vertex_cover(g, &cover));
    Ok(VertexCoverCertificate { cover })
}
