use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::signature::{decompose_at, AnchoredComponent, Canonicalizer, ComponentSignature};
use super::thresholds::Thresholds;
use crate::error::KernelError;
use crate::graph::{Graph, VertexSet};
use crate::params::{treedepth, TreedepthDecomposition};

/// Outcome of one pruning step, in the ids of the graph it was applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruning {
    pub anchor: usize,
    /// `k - depth(anchor) + 1`.
    pub level: usize,
    pub path: Vec<usize>,
    pub removed: VertexSet,
    /// The other members of the removed component's class.
    pub class: Vec<VertexSet>,
    pub signature: ComponentSignature,
    /// `G - B`, its vertices' ids in the input graph, and the decomposition
    /// restricted to it.
    pub graph: Graph,
    pub origin: Vec<usize>,
    pub tree: TreedepthDecomposition,
}

impl Pruning {
    pub fn class_size(&self) -> usize {
        self.class.len() + 1
    }
}

/// Removes one component below `t` if the pruning hypotheses hold at `t`
/// under `thresholds`, with `k` the height bound of the decomposition.
///
/// Of the classes meeting the size requirement, the one with the smallest
/// signature is used, and of its members the one with the smallest vertex.
pub fn prune_once(
    g: &Graph,
    td: &TreedepthDecomposition,
    k: usize,
    t: usize,
    thresholds: &Thresholds,
    canon: &mut Canonicalizer,
) -> Result<Option<Pruning>, KernelError> {
    let depth = td.depth(t);
    if depth >= k {
        return Ok(None);
    }
    let level = k - depth + 1;
    let (size, children) = thresholds.eval(k, level);
    let (comps, m_t) = decompose_at(g, td, t);
    if !children.reached_by(comps.len()) || !size.admits(m_t) {
        return Ok(None);
    }
    let (_, below) = thresholds.eval(k, level - 1);
    for q in td.descendants(t) {
        if !below.admits(decompose_at(g, td, q).0.len()) {
            return Ok(None);
        }
    }

    let mut classes: BTreeMap<ComponentSignature, Vec<&AnchoredComponent>> = BTreeMap::new();
    for c in &comps {
        classes.entry(canon.signature(c)?).or_default().push(c);
    }
    let required = thresholds.class_requirement(k, level);
    let Some((signature, members)) = classes.into_iter().find(|(_, m)| required.reached_by(m.len())) else {
        return Ok(None);
    };
    let removed = members[0].vertices.clone();
    let class = members[1..].iter().map(|c| c.vertices.clone()).collect();
    let (graph, origin) = g.remove_vertices(&removed)?;
    let keep: VertexSet = origin.iter().copied().collect();
    Ok(Some(Pruning {
        anchor: t,
        level,
        path: td.ancestors(t),
        removed,
        class,
        signature,
        graph,
        origin,
        tree: td.restrict(&keep),
    }))
}

/// One entry of the removal log, in ids of the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub anchor: usize,
    pub depth: usize,
    pub level: usize,
    pub path: Vec<usize>,
    pub removed: VertexSet,
    pub class: Vec<VertexSet>,
}

impl Removal {
    pub fn class_size(&self) -> usize {
        self.class.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdKernel {
    pub graph: Graph,
    /// Original id of every kernel vertex.
    pub origin: Vec<usize>,
    pub tree: TreedepthDecomposition,
    /// Height bound the thresholds were evaluated with.
    pub k: usize,
    pub removals: Vec<Removal>,
}

impl TdKernel {
    pub fn removal_log_json(&self, g: &Graph) -> Value {
        let labels = |s: &VertexSet| s.iter().map(|v| g.label(v).to_string()).collect::<Vec<_>>();
        Value::Array(
            self.removals
                .iter()
                .map(|r| {
                    json!({
                        "anchor": g.label(r.anchor),
                        "depth": r.depth,
                        "level": r.level,
                        "removed": labels(&r.removed),
                        "class_size": r.class_size(),
                    })
                })
                .collect(),
        )
    }
}

/// Bottom-up pruning: scan depth `k - 1` up to the root, restarting from the
/// bottom after every removal, until nothing fires.
pub fn kernelize_1queue(g: &Graph, thresholds: &Thresholds, canon: &mut Canonicalizer) -> Result<TdKernel, KernelError> {
    let td = treedepth(g, g.n())?.expect("treedepth never exceeds n");
    kernelize_with(g, td, thresholds, canon)
}

/// [`kernelize_1queue`] with a given decomposition.
pub fn kernelize_with(
    g: &Graph,
    td: TreedepthDecomposition,
    thresholds: &Thresholds,
    canon: &mut Canonicalizer,
) -> Result<TdKernel, KernelError> {
    if !td.is_valid_for(g) {
        return Err(KernelError::Internal("decomposition does not cover the graph".into()));
    }
    let k = td.height();
    let mut kernel = TdKernel { graph: g.clone(), origin: (0..g.n()).collect(), tree: td, k, removals: Vec::new() };
    'restart: loop {
        for depth in (1..k).rev() {
            for t in (0..kernel.graph.n()).filter(|&t| kernel.tree.depth(t) == depth) {
                let Some(p) = prune_once(&kernel.graph, &kernel.tree, k, t, thresholds, canon)? else {
                    continue;
                };
                let up = |s: &VertexSet| s.iter().map(|v| kernel.origin[v]).collect::<VertexSet>();
                kernel.removals.push(Removal {
                    anchor: kernel.origin[t],
                    depth,
                    level: p.level,
                    path: p.path.iter().map(|&v| kernel.origin[v]).collect(),
                    removed: up(&p.removed),
                    class: p.class.iter().map(up).collect(),
                });
                kernel.origin = p.origin.iter().map(|&v| kernel.origin[v]).collect();
                kernel.graph = p.graph;
                kernel.tree = p.tree;
                continue 'restart;
            }
        }
        return Ok(kernel);
    }
}
