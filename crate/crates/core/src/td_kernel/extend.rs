//! Re-inserting a pruned component into a 1-queue layout of the rest.
//!
//! The components equivalent to the removed one `B` are grouped by the
//! pattern their vertices form with the anchor path in the current order.
//! Inside one group, two components `C_x`, `C_y` whose counterpart edges
//! cross for every internal edge delimit a slot: `C_x` is cut into blocks
//! and each block of `B` goes right before the first counterpart of the
//! block in `C_y`.

use std::collections::BTreeMap;

use super::signature::{AnchoredComponent, Canonical, Canonicalizer};
use crate::error::KernelError;
use crate::graph::{Graph, VertexSet};
use crate::layout::{positions, validate_partial, LinearLayout, ABSENT};

/// An entry of an order pattern: the `j`-th path vertex (root first) or the
/// component vertex with canonical index `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Path(usize),
    Member(usize),
}

/// A component under a fixed canonical order, with the pattern it forms
/// together with the path. Two placed components with equal keys are
/// order-equivalent, and index `j` pairs up counterparts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placed {
    pub vertices: Vec<usize>,
    pub key: Vec<Tag>,
}

impl Placed {
    /// Picks, among the canonical orders of the component, the one whose
    /// pattern is smallest.
    pub fn new(pos: &[usize], path: &[usize], canonical: &Canonical) -> Self {
        canonical
            .labelings
            .iter()
            .map(|l| Placed { vertices: l.clone(), key: pattern(pos, path, l) })
            .min_by(|a, b| a.key.cmp(&b.key))
            .expect("at least one canonical order")
    }

    fn at(&self, pos: &[usize], j: usize) -> usize {
        pos[self.vertices[j]]
    }
}

fn pattern(pos: &[usize], path: &[usize], members: &[usize]) -> Vec<Tag> {
    let mut tagged: Vec<(usize, Tag)> = path
        .iter()
        .enumerate()
        .map(|(j, &p)| (pos[p], Tag::Path(j)))
        .chain(members.iter().enumerate().map(|(j, &v)| (pos[v], Tag::Member(j))))
        .collect();
    tagged.sort_unstable();
    tagged.into_iter().map(|(_, t)| t).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Separate,
    Interleaving,
    Nesting,
}

/// How the segments between counterparts of `v` and `w` in `a` and `b`
/// relate.
pub fn classify_pair(g: &Graph, pos: &[usize], a: &Placed, b: &Placed, v: usize, w: usize) -> Result<PairKind, KernelError> {
    if a.key != b.key {
        return Err(KernelError::NotOrderEquivalent);
    }
    let seg = |c: &Placed| {
        let (p, q) = (c.at(pos, v), c.at(pos, w));
        (p.min(q), p.max(q))
    };
    let (s, t) = (seg(a), seg(b));
    if s.1 < t.0 || t.1 < s.0 {
        return Ok(PairKind::Separate);
    }
    if (s.0 < t.0 && t.1 < s.1) || (t.0 < s.0 && s.1 < t.1) {
        if g.has_edge(a.vertices[v], a.vertices[w]) {
            return Err(KernelError::EdgeNesting);
        }
        return Ok(PairKind::Nesting);
    }
    Ok(PairKind::Interleaving)
}

/// The chain `D_1, D_2, ...` of pairwise separate group members for the
/// template edge `vw`, as indices into the group, and the member of the
/// chain each group member is assigned to (as an index into `ds`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSequence {
    pub ds: Vec<usize>,
    pub assignment: Vec<usize>,
}

pub fn d_sequence(g: &Graph, pos: &[usize], group: &[Placed], v: usize, w: usize) -> Result<DSequence, KernelError> {
    let mut by_v: Vec<usize> = (0..group.len()).collect();
    by_v.sort_by_key(|&i| group[i].at(pos, v));
    let mut ds = Vec::new();
    if let Some(&first) = by_v.first() {
        ds.push(first);
        loop {
            let last = *ds.last().expect("nonempty");
            let mut next = None;
            for &i in &by_v {
                if group[i].at(pos, v) > group[last].at(pos, v)
                    && classify_pair(g, pos, &group[last], &group[i], v, w)? == PairKind::Separate
                {
                    next = Some(i);
                    break;
                }
            }
            match next {
                Some(i) => ds.push(i),
                None => break,
            }
        }
    }
    let assignment = (0..group.len())
        .map(|q| {
            let vq = group[q].at(pos, v);
            ds.iter().rposition(|&d| group[d].at(pos, v) <= vq).expect("first of the chain is leftmost")
        })
        .collect();
    Ok(DSequence { ds, assignment })
}

/// Internal edges of the group's template, as canonical index pairs.
fn template_edges(g: &Graph, group: &[Placed]) -> Vec<(usize, usize)> {
    let Some(first) = group.first() else {
        return Vec::new();
    };
    let n = first.vertices.len();
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| g.has_edge(first.vertices[i], first.vertices[j]))
        .collect()
}

/// Two group members assigned to the same chain member for every template
/// edge, returned as `(x, y)` with every vertex of `x` left of its
/// counterpart in `y`.
pub fn find_delimiting_pair(g: &Graph, pos: &[usize], group: &[Placed]) -> Result<Option<(usize, usize)>, KernelError> {
    let edges = template_edges(g, group);
    let mut vectors = vec![Vec::with_capacity(edges.len()); group.len()];
    for &(v, w) in &edges {
        let seq = d_sequence(g, pos, group, v, w)?;
        for (q, &l) in seq.assignment.iter().enumerate() {
            vectors[q].push(l);
        }
    }
    for p in 0..group.len() {
        for q in (p + 1)..group.len() {
            if vectors[p] == vectors[q] {
                let (x, y) = if group[p].at(pos, 0) < group[q].at(pos, 0) { (p, q) } else { (q, p) };
                check_orientation(pos, &group[x], &group[y])?;
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

fn check_orientation(pos: &[usize], x: &Placed, y: &Placed) -> Result<(), KernelError> {
    if (0..x.vertices.len()).all(|j| x.at(pos, j) < y.at(pos, j)) {
        Ok(())
    } else {
        Err(KernelError::Orientation)
    }
}

/// A maximal run of vertices of `C_x` (canonical indices, left to right)
/// that the counterparts in `C_y` do not split and whose neighbors do not lie
/// on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub members: Vec<usize>,
}

/// Greedy left-to-right partition of `x` into blocks. Only neighbors inside
/// the component count; edges to the anchor path are safe by themselves.
pub fn blocks_of(g: &Graph, pos: &[usize], x: &Placed, y: &Placed) -> Result<Vec<Block>, KernelError> {
    check_orientation(pos, x, y)?;
    let mut sweep: Vec<usize> = (0..x.vertices.len()).collect();
    sweep.sort_by_key(|&j| x.at(pos, j));
    // (has a neighbor to the left, has a neighbor to the right)
    let sides: Vec<(bool, bool)> = (0..x.vertices.len())
        .map(|j| {
            let here = x.at(pos, j);
            let inside = (0..x.vertices.len()).filter(|&i| g.has_edge(x.vertices[j], x.vertices[i])).map(|i| x.at(pos, i));
            inside.fold((false, false), |(l, r), p| (l || p < here, r || p > here))
        })
        .collect();
    let fits = |members: &[usize]| {
        let lo = members.iter().map(|&j| x.at(pos, j)).min().unwrap_or(0);
        let hi = members.iter().map(|&j| x.at(pos, j)).max().unwrap_or(0);
        let unsplit = members.iter().all(|&j| {
            let p = y.at(pos, j);
            p < lo || p > hi
        });
        let one_sided = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || !(sides[a].0 && sides[b].1)));
        unsplit && one_sided
    };
    let mut blocks: Vec<Block> = Vec::new();
    for j in sweep {
        if let Some(last) = blocks.last_mut() {
            last.members.push(j);
            if fits(&last.members) {
                continue;
            }
            last.members.pop();
        }
        blocks.push(Block { members: vec![j] });
    }
    Ok(blocks)
}

/// Inserts the vertices of `b` into `order`: for every block, its
/// counterparts in `b` go immediately before the counterpart in `y` of the
/// block's first member.
pub fn insert_blocks(order: &[usize], blocks: &[Block], y: &Placed, b: &[usize]) -> Vec<usize> {
    let mut out = order.to_vec();
    for block in blocks {
        let anchor = y.vertices[block.members[0]];
        let at = out.iter().position(|&u| u == anchor).expect("counterpart is placed");
        out.splice(at..at, block.members.iter().map(|&j| b[j]));
    }
    out
}

/// Groups placed components by order pattern, largest group first.
pub fn order_classes(pos: &[usize], path: &[usize], members: &[Canonical]) -> Vec<Vec<Placed>> {
    let mut groups: BTreeMap<Vec<Tag>, Vec<Placed>> = BTreeMap::new();
    for c in members {
        let p = Placed::new(pos, path, c);
        groups.entry(p.key.clone()).or_default().push(p);
    }
    let mut out: Vec<Vec<Placed>> = groups.into_values().collect();
    out.sort_by_key(|grp| std::cmp::Reverse(grp.len()));
    out
}

/// Extends a 1-queue layout of `G - B` to one of `G`.
///
/// `g` may contain vertices outside both the layout and `b`; they are
/// ignored. `path` is the anchor path (root first, anchor last) and `class`
/// lists the components still in the layout that are equivalent to `b`.
pub fn extend_layout(
    g: &Graph,
    layout: &LinearLayout,
    path: &[usize],
    class: &[VertexSet],
    b: &VertexSet,
    canon: &mut Canonicalizer,
) -> Result<LinearLayout, KernelError> {
    let anchor = *path.last().ok_or_else(|| KernelError::StructureAbsent("empty anchor path".into()))?;
    let pos = positions(g.n(), layout.order());
    if b.iter().any(|v| pos[v] != ABSENT) {
        return Err(KernelError::StructureAbsent("removed component is already placed".into()));
    }
    if class.iter().flat_map(|c| c.iter()).chain(path.iter().copied()).any(|v| pos[v] == ABSENT) {
        return Err(KernelError::StructureAbsent("equivalent component or path vertex is not placed".into()));
    }
    if layout.num_queues() > 1 || !validate_partial(g, layout)?.is_valid() {
        return Err(KernelError::StructureAbsent("input is not a 1-queue layout".into()));
    }

    let removed = canon.canonical(&AnchoredComponent::new(g, anchor, path, b.clone()))?;
    let members = class
        .iter()
        .map(|c| canon.canonical(&AnchoredComponent::new(g, anchor, path, c.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    if members.iter().any(|m| m.signature != removed.signature) {
        return Err(KernelError::Internal("class members are not equivalent to the removed component".into()));
    }

    for group in order_classes(&pos, path, &members) {
        let Some((x, y)) = find_delimiting_pair(g, &pos, &group)? else {
            continue;
        };
        let blocks = blocks_of(g, &pos, &group[x], &group[y])?;
        let order = insert_blocks(layout.order(), &blocks, &group[y], removed.order());
        let out = LinearLayout::single_queue(g, order);
        return match validate_partial(g, &out)? {
            v if v.is_valid() => Ok(out),
            v => Err(KernelError::Internal(format!("extended layout is invalid: {v:?}"))),
        };
    }
    Err(KernelError::StructureAbsent("no delimiting pair among the equivalent components".into()))
}
