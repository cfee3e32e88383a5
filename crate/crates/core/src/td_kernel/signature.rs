//! Components hanging below a decomposition vertex, and canonical forms that
//! decide when two of them are interchangeable.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::KernelError;
use crate::graph::{Edge, Graph, VertexSet};
use crate::params::TreedepthDecomposition;

pub const DEFAULT_CANON_CAP: usize = 8;

/// One connected component of `G - P_t` that contains a child of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredComponent {
    pub anchor: usize,
    /// `t` and its ancestors, root first.
    pub path: Vec<usize>,
    pub vertices: VertexSet,
    pub internal_edges: Vec<Edge>,
    /// `attachments[j]`: the vertices of `path` adjacent to the `j`-th
    /// member of `vertices`.
    pub attachments: Vec<VertexSet>,
}

impl AnchoredComponent {
    /// Builds the component record for `vertices` below `path` in `g`.
    pub fn new(g: &Graph, anchor: usize, path: &[usize], vertices: VertexSet) -> Self {
        let internal_edges = g
            .edges()
            .iter()
            .copied()
            .filter(|e| vertices.contains(e.0) && vertices.contains(e.1))
            .collect();
        let attachments = vertices
            .iter()
            .map(|v| g.neighbors(v).iter().copied().filter(|u| path.contains(u)).collect())
            .collect();
        AnchoredComponent { anchor, path: path.to_vec(), vertices, internal_edges, attachments }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Attachment set of the `j`-th vertex as a bitmask over `path` indices.
    fn mask(&self, j: usize) -> u64 {
        self.attachments[j]
            .iter()
            .map(|p| 1u64 << self.path.iter().position(|&q| q == p).expect("attachment lies on path"))
            .fold(0, |a, b| a | b)
    }
}

/// The components of `G - P_t` containing a child of `t`, sorted by smallest
/// vertex, and `m_t`, the size of the largest one.
pub fn decompose_at(g: &Graph, td: &TreedepthDecomposition, t: usize) -> (Vec<AnchoredComponent>, usize) {
    let path = td.ancestors(t);
    let mut alive = vec![true; g.n()];
    for &p in &path {
        alive[p] = false;
    }
    let children = td.children(t);
    let comps: Vec<AnchoredComponent> = g
        .components_within(&alive)
        .into_iter()
        .filter(|c| children.iter().any(|&ch| c.contains(ch)))
        .map(|c| AnchoredComponent::new(g, t, &path, c))
        .collect();
    let m_t = comps.iter().map(AnchoredComponent::len).max().unwrap_or(0);
    (comps, m_t)
}

/// Canonical form of an anchored component: vertex count, attachment masks
/// and internal degrees in canonical order, and the relabeled edge list.
/// Bit `j` of a mask stands for the `j`-th vertex of the path, root first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSignature {
    pub size: usize,
    pub attachments: Vec<u64>,
    pub degrees: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// A signature together with every vertex order of the component that
/// realizes it. Position `j` of each order is the vertex with canonical
/// index `j`; two orders differ by an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub signature: ComponentSignature,
    pub labelings: Vec<Vec<usize>>,
}

impl Canonical {
    /// The first canonical order.
    pub fn order(&self) -> &[usize] {
        &self.labelings[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct LocalForm {
    masks: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

struct CanonForm {
    signature: ComponentSignature,
    /// Local indices per canonical position.
    labelings: Vec<Vec<usize>>,
}

/// Memoized exhaustive canonicalization.
pub struct Canonicalizer {
    cap: usize,
    cache: HashMap<LocalForm, Rc<CanonForm>>,
}

impl Default for Canonicalizer {
    fn default() -> Self {
        Canonicalizer::new(DEFAULT_CANON_CAP)
    }
}

impl Canonicalizer {
    pub fn new(cap: usize) -> Self {
        Canonicalizer { cap, cache: HashMap::new() }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn signature(&mut self, c: &AnchoredComponent) -> Result<ComponentSignature, KernelError> {
        Ok(self.canonical(c)?.signature)
    }

    pub fn canonical(&mut self, c: &AnchoredComponent) -> Result<Canonical, KernelError> {
        if c.len() > self.cap {
            return Err(KernelError::ComponentTooLarge { size: c.len(), cap: self.cap });
        }
        let verts = c.vertices.as_slice();
        let local = |v: usize| verts.binary_search(&v).expect("edge inside component");
        let mut edges: Vec<(usize, usize)> = c.internal_edges.iter().map(|e| (local(e.0), local(e.1))).collect();
        edges.sort_unstable();
        let form = LocalForm { masks: (0..c.len()).map(|j| c.mask(j)).collect(), edges };
        let canon = match self.cache.get(&form) {
            Some(hit) => Rc::clone(hit),
            None => {
                let computed = Rc::new(canonicalize(&form));
                self.cache.insert(form, Rc::clone(&computed));
                computed
            }
        };
        Ok(Canonical {
            signature: canon.signature.clone(),
            labelings: canon.labelings.iter().map(|l| l.iter().map(|&j| verts[j]).collect()).collect(),
        })
    }
}

/// Minimizes (masks, degrees, adjacency) lexicographically over all orders
/// that sort vertices by (mask, degree). Ties are automorphisms.
fn canonicalize(form: &LocalForm) -> CanonForm {
    let n = form.masks.len();
    let mut adj = vec![vec![false; n]; n];
    let mut degree = vec![0usize; n];
    for &(a, b) in &form.edges {
        adj[a][b] = true;
        adj[b][a] = true;
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut base: Vec<usize> = (0..n).collect();
    base.sort_by_key(|&v| (form.masks[v], degree[v], v));
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || (form.masks[base[i]], degree[base[i]]) != (form.masks[base[start]], degree[base[start]]) {
            cells.push((start, i));
            start = i;
        }
    }

    let mut best: Option<Vec<bool>> = None;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    let mut order = base.clone();
    permute_cells(&mut order, &cells, 0, &mut |order| {
        let code: Vec<bool> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| adj[order[i]][order[j]]).collect();
        match best.as_ref().map(|b| code.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => winners.push(order.to_vec()),
            _ => {
                best = Some(code);
                winners = vec![order.to_vec()];
            }
        }
    });
    let first = &winners[0];
    let mut at = vec![0usize; n];
    for (i, &v) in first.iter().enumerate() {
        at[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = form
        .edges
        .iter()
        .map(|&(a, b)| (at[a].min(at[b]), at[a].max(at[b])))
        .collect();
    edges.sort_unstable();
    CanonForm {
        signature: ComponentSignature {
            size: n,
            attachments: first.iter().map(|&v| form.masks[v]).collect(),
            degrees: first.iter().map(|&v| degree[v]).collect(),
            edges,
        },
        labelings: winners,
    }
}

fn permute_cells(order: &mut Vec<usize>, cells: &[(usize, usize)], c: usize, visit: &mut impl FnMut(&[usize])) {
    match cells.get(c) {
        None => visit(order),
        Some(&(lo, hi)) => permute_range(order, lo, hi, &mut |order| permute_cells(order, cells, c + 1, visit)),
    }
}

/// Visits every permutation of `order[i..hi]`.
fn permute_range(order: &mut Vec<usize>, i: usize, hi: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if i + 1 >= hi {
        visit(order);
        return;
    }
    for j in i..hi {
        order.swap(i, j);
        permute_range(order, i + 1, hi, visit);
        order.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::broom;

    fn chain_tree(g: &Graph, chain: &[usize]) -> TreedepthDecomposition {
        // `chain` is a root-first path; every other vertex hangs below its
        // deepest neighbor on the chain.
        let mut parent = vec![None; g.n()];
        for w in chain.windows(2) {
            parent[w[1]] = Some(w[0]);
        }
        for v in 0..g.n() {
            if !chain.contains(&v) && v != chain[0] {
                let p = chain.iter().rev().find(|&&c| g.has_edge(c, v)).copied().unwrap_or(*chain.last().unwrap());
                parent[v] = Some(p);
            }
        }
        TreedepthDecomposition::from_parents(parent).unwrap()
    }

    #[test]
    fn leaf_anchor_is_empty() {
        let g = broom(3);
        let td = chain_tree(&g, &[0, 1]);
        assert_eq!(decompose_at(&g, &td, 2), (vec![], 0));
    }

    #[test]
    fn broom_components_are_leaves() {
        let g = broom(4);
        let td = chain_tree(&g, &[0, 1]);
        let (comps, m) = decompose_at(&g, &td, 1);
        assert_eq!(m, 1);
        assert_eq!(comps.iter().map(|c| c.vertices.as_slice().to_vec()).collect::<Vec<_>>(), vec![vec![2], vec![3], vec![4], vec![5]]);
        let mut canon = Canonicalizer::default();
        let sigs: Vec<_> = comps.iter().map(|c| canon.signature(c).unwrap()).collect();
        assert!(sigs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn different_attachments_differ() {
        // Root 0, child 1; leaf 2 sees only 1, leaf 3 sees 0 and 1.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3), (0, 3)]);
        let td = chain_tree(&g, &[0, 1]);
        let (comps, _) = decompose_at(&g, &td, 1);
        let mut canon = Canonicalizer::default();
        assert_ne!(canon.signature(&comps[0]).unwrap(), canon.signature(&comps[1]).unwrap());
    }

    #[test]
    fn rotated_triangles_agree() {
        // Two triangles below path 0-1; in each, one vertex sees 0 and the
        // others see 1, with the special vertex at different local indices.
        let g = Graph::from_edges(
            8,
            [(0, 1), (2, 3), (3, 4), (2, 4), (5, 6), (6, 7), (5, 7), (2, 0), (3, 1), (4, 1), (7, 0), (5, 1), (6, 1)],
        );
        let td = chain_tree(&g, &[0, 1]);
        let (comps, m) = decompose_at(&g, &td, 1);
        assert_eq!((comps.len(), m), (2, 3));
        let mut canon = Canonicalizer::default();
        let a = canon.canonical(&comps[0]).unwrap();
        let b = canon.canonical(&comps[1]).unwrap();
        assert_eq!(a.signature, b.signature);
        // The two vertices seeing only 1 are swapped by an automorphism.
        assert_eq!(a.labelings.len(), 2);
        assert_eq!(a.order()[0], 2);
        assert_eq!(b.order()[0], 7);
    }

    #[test]
    fn cap_is_enforced() {
        let g = broom(2);
        let td = chain_tree(&g, &[0, 1]);
        let (comps, _) = decompose_at(&g, &td, 1);
        let big = AnchoredComponent { vertices: VertexSet::from_unsorted((2..20).collect()), attachments: vec![VertexSet::new(); 18], ..comps[0].clone() };
        assert_eq!(Canonicalizer::new(8).signature(&big), Err(KernelError::ComponentTooLarge { size: 18, cap: 8 }));
    }
}
