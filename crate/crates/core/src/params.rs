//! Treedepth decompositions and minimum vertex covers.
//!
//! Both solvers are exact and exponential; they are meant for the small
//! instances the kernels produce. Each takes a budget and answers `None`
//! when the parameter exceeds it.

use std::collections::HashMap;

use serde_json::{Map, Value};

use crate::error::{GraphError, ParamError};
use crate::graph::{Graph, VertexSet};

/// Rooted forest whose ancestor closure contains every edge of its graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    height: usize,
}

impl TreedepthDecomposition {
    /// Builds from parent links; `None` if the links contain a cycle or point
    /// outside `0..parent.len()`.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Option<Self> {
        let n = parent.len();
        if parent.iter().flatten().any(|&p| p >= n) {
            return None;
        }
        let mut depth = vec![0usize; n];
        for v in 0..n {
            let mut chain = Vec::new();
            let mut cur = v;
            while depth[cur] == 0 {
                chain.push(cur);
                if chain.len() > n {
                    return None;
                }
                match parent[cur] {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            let mut d = if depth[cur] == 0 { 0 } else { depth[cur] };
            for &u in chain.iter().rev() {
                d += 1;
                depth[u] = d;
            }
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        Some(TreedepthDecomposition { parent, depth, height })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Root has depth 1.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.parent[u] == Some(v)).collect()
    }

    /// Ancestors of `t` including `t`, root first.
    pub fn ancestors(&self, t: usize) -> Vec<usize> {
        let mut out = vec![t];
        let mut cur = t;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn is_ancestor(&self, a: usize, mut d: usize) -> bool {
        loop {
            if a == d {
                return true;
            }
            match self.parent[d] {
                Some(p) => d = p,
                None => return false,
            }
        }
    }

    /// Proper descendants of `t`.
    pub fn descendants(&self, t: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| v != t && self.is_ancestor(t, v)).collect()
    }

    /// The first edge of `g` whose endpoints are not in ancestor relation.
    pub fn closure_violation(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges()
            .iter()
            .find(|e| !self.is_ancestor(e.0, e.1) && !self.is_ancestor(e.1, e.0))
            .map(|e| (e.0, e.1))
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.n() == g.n() && self.closure_violation(g).is_none()
    }

    /// Restricts to `keep`, renumbering by position in `keep`. A vertex whose
    /// parent is dropped hangs from its nearest kept ancestor, so the closure
    /// property carries over to the induced subgraph.
    pub fn restrict(&self, keep: &VertexSet) -> Self {
        let mut index = vec![usize::MAX; self.n()];
        for (new, old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let parent = keep
            .iter()
            .map(|v| {
                let mut cur = self.parent[v];
                while let Some(p) = cur {
                    if index[p] != usize::MAX {
                        return Some(index[p]);
                    }
                    cur = self.parent[p];
                }
                None
            })
            .collect();
        TreedepthDecomposition::from_parents(parent).expect("restriction of a forest is a forest")
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let mut parent = Map::new();
        for v in 0..self.n() {
            let p = self.parent[v].map_or(Value::Null, |p| Value::from(g.label(p)));
            parent.insert(g.label(v).to_string(), p);
        }
        serde_json::json!({ "parent": parent, "height": self.height })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::empty(n);
        for v in it {
            b.set(v);
        }
        b
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn has(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

#[derive(Clone, Copy, Debug)]
enum Memo {
    Exact { height: usize, root: usize },
    Above(usize),
}

const MEMO_CAP: usize = 1 << 22;

struct TdSolver<'g> {
    g: &'g Graph,
    memo: HashMap<Bits, Memo>,
}

impl<'g> TdSolver<'g> {
    fn components(&self, set: &Bits) -> Vec<Bits> {
        let mut rest = set.clone();
        let mut out = Vec::new();
        loop {
            let Some(start) = rest.iter().next() else { break };
            let mut comp = Bits::empty(self.g.n());
            let mut stack = vec![start];
            rest.clear(start);
            comp.set(start);
            while let Some(v) = stack.pop() {
                for &u in self.g.neighbors(v) {
                    if rest.has(u) {
                        rest.clear(u);
                        comp.set(u);
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn internal_degree(&self, set: &Bits, v: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&u| set.has(u)).count()
    }

    /// Closure of a height-d forest on s vertices has at most s(d-1) edges.
    fn lower_bound(&self, set: &Bits, size: usize) -> usize {
        if size <= 1 {
            return size;
        }
        let m: usize = set.iter().map(|v| self.internal_degree(set, v)).sum::<usize>() / 2;
        2.max(1 + m.div_ceil(size))
    }

    /// `Some(td)` of the connected set if it is at most `budget`.
    fn solve(&mut self, set: &Bits, budget: usize) -> Option<usize> {
        let size = set.count();
        if size == 1 {
            return (budget >= 1).then_some(1);
        }
        let lb = self.lower_bound(set, size);
        if budget < lb {
            return None;
        }
        match self.memo.get(set) {
            Some(&Memo::Exact { height, .. }) => return (height <= budget).then_some(height),
            Some(&Memo::Above(b)) if budget <= b => return None,
            _ => {}
        }
        if budget <= 3 {
            let mask: Vec<bool> = (0..self.g.n()).map(|v| set.has(v)).collect();
            if path_with_edges(self.g, &mask, 1 << budget) {
                self.remember(set, Memo::Above(budget));
                return None;
            }
        }

        let mut candidates: Vec<usize> = set.iter().collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(self.internal_degree(set, v)), v));
        let mut limit = budget;
        let mut best: Option<(usize, usize)> = None;
        for v in candidates {
            let mut rest = set.clone();
            rest.clear(v);
            let mut comps = self.components(&rest);
            comps.sort_by_key(|c| std::cmp::Reverse(c.count()));
            let mut worst = 0;
            let mut ok = true;
            for c in &comps {
                match self.solve(c, limit - 1) {
                    Some(h) => worst = worst.max(h),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let h = worst + 1;
                best = Some((h, v));
                if h <= lb {
                    break;
                }
                limit = h - 1;
            }
        }
        match best {
            Some((height, root)) => {
                self.remember(set, Memo::Exact { height, root });
                Some(height)
            }
            None => {
                self.remember(set, Memo::Above(budget));
                None
            }
        }
    }

    fn remember(&mut self, set: &Bits, entry: Memo) {
        if self.memo.len() < MEMO_CAP || self.memo.contains_key(set) {
            self.memo.insert(set.clone(), entry);
        }
    }

    /// Writes parent links for the connected `set` of known treedepth `height`.
    fn build(&mut self, set: &Bits, height: usize, above: Option<usize>, parent: &mut [Option<usize>]) {
        let root = if set.count() == 1 {
            set.iter().next().unwrap()
        } else if let Some(&Memo::Exact { root, .. }) = self.memo.get(set) {
            root
        } else {
            // Evicted by the memo cap: find a root achieving `height` again.
            let vs: Vec<usize> = set.iter().collect();
            *vs.iter()
                .find(|&&v| {
                    let mut rest = set.clone();
                    rest.clear(v);
                    self.components(&rest).iter().all(|c| self.solve(c, height - 1).is_some())
                })
                .expect("a root realizing the height exists")
        };
        parent[root] = above;
        let mut rest = set.clone();
        rest.clear(root);
        for c in self.components(&rest) {
            let h = self.solve(&c, height - 1).expect("child within height");
            self.build(&c, h, Some(root), parent);
        }
    }
}

/// Optimal treedepth decomposition of a connected graph if its height is at
/// most `budget`.
pub fn treedepth(g: &Graph, budget: usize) -> Result<Option<TreedepthDecomposition>, ParamError> {
    if g.n() == 0 {
        return Ok(Some(TreedepthDecomposition { parent: vec![], depth: vec![], height: 0 }));
    }
    let comps = g.connected_components().len();
    if comps > 1 {
        return Err(GraphError::Disconnected(comps).into());
    }
    if budget == 0 {
        return Ok(None);
    }
    if budget <= 4 && has_long_path(g, budget as u32)? {
        return Ok(None);
    }
    let mut solver = TdSolver { g, memo: HashMap::new() };
    let all = Bits::from_iter(g.n(), 0..g.n());
    let Some(height) = solver.solve(&all, budget) else {
        return Ok(None);
    };
    let mut parent = vec![None; g.n()];
    solver.build(&all, height, None, &mut parent);
    let td = TreedepthDecomposition::from_parents(parent).expect("built from a recursion tree");
    debug_assert_eq!(td.height(), height);
    debug_assert!(td.is_valid_for(g));
    Ok(Some(td))
}

/// True iff `g` has a simple path with `2^k` edges. Only `2^k <= 64` is
/// supported.
pub fn has_long_path(g: &Graph, k: u32) -> Result<bool, ParamError> {
    if k > 6 {
        return Err(ParamError::PathTooLong(k));
    }
    Ok(path_with_edges(g, &vec![true; g.n()], 1 << k))
}

fn path_with_edges(g: &Graph, mask: &[bool], len: usize) -> bool {
    let alive = mask.iter().filter(|&&b| b).count();
    if alive < len + 1 {
        return false;
    }
    let mut visited = vec![false; g.n()];
    (0..g.n()).filter(|&v| mask[v]).any(|v| extend_path(g, mask, &mut visited, v, len))
}

fn extend_path(g: &Graph, mask: &[bool], visited: &mut [bool], v: usize, remaining: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    visited[v] = true;
    let found = g
        .neighbors(v)
        .iter()
        .any(|&u| mask[u] && !visited[u] && extend_path(g, mask, visited, u, remaining - 1));
    visited[v] = false;
    found
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCoverCertificate {
    pub cover: VertexSet,
}

impl VertexCoverCertificate {
    pub fn size(&self) -> usize {
        self.cover.len()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let labels: Vec<&str> = self.cover.iter().map(|v| g.label(v)).collect();
        serde_json::json!({ "cover": labels })
    }
}

/// True iff every edge of `g` has an endpoint in `cover`.
pub fn is_vertex_cover(g: &Graph, cover: &VertexSet) -> bool {
    g.edges().iter().all(|e| cover.contains(e.0) || cover.contains(e.1))
}

/// A minimum vertex cover if its size is at most `budget`.
///
/// Iterative deepening over a bounded search tree: branch on an uncovered
/// edge (take one endpoint or the other), after forcing the neighbor of every
/// degree-one vertex and every vertex whose degree exceeds the remaining
/// budget.
pub fn min_vertex_cover(g: &Graph, budget: usize) -> Option<VertexCoverCertificate> {
    let limit = budget.min(g.n());
    for k in 0..=limit {
        let mut taken = vec![false; g.n()];
        if cover_branch(g, &mut taken, k) {
            let cover: VertexSet = (0..g.n()).filter(|&v| taken[v]).collect();
            debug_assert!(is_vertex_cover(g, &cover));
            return Some(VertexCoverCertificate { cover });
        }
    }
    None
}

fn live_degree(g: &Graph, taken: &[bool], v: usize) -> usize {
    if taken[v] {
        return 0;
    }
    g.neighbors(v).iter().filter(|&&u| !taken[u]).count()
}

fn cover_branch(g: &Graph, taken: &mut [bool], mut k: usize) -> bool {
    let mut forced = Vec::new();
    let undo = |taken: &mut [bool], forced: &[usize]| {
        for &v in forced {
            taken[v] = false;
        }
    };
    loop {
        let mut changed = false;
        for v in 0..g.n() {
            let d = live_degree(g, taken, v);
            if d == 0 {
                continue;
            }
            let pick = if d > k {
                Some(v)
            } else if d == 1 {
                g.neighbors(v).iter().copied().find(|&u| !taken[u])
            } else {
                None
            };
            if let Some(u) = pick {
                if k == 0 {
                    undo(taken, &forced);
                    return false;
                }
                taken[u] = true;
                forced.push(u);
                k -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let degrees: Vec<usize> = (0..g.n()).map(|v| live_degree(g, taken, v)).collect();
    let live_edges: usize = degrees.iter().sum::<usize>() / 2;
    if live_edges == 0 {
        return true;
    }
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    if k == 0 || live_edges > k * max_deg {
        undo(taken, &forced);
        return false;
    }
    let u = (0..g.n()).max_by_key(|&v| (degrees[v], std::cmp::Reverse(v))).unwrap();
    let w = g.neighbors(u).iter().copied().find(|&x| !taken[x]).unwrap();
    for pick in [u, w] {
        taken[pick] = true;
        if cover_branch(g, taken, k - 1) {
            return true;
        }
        taken[pick] = false;
    }
    undo(taken, &forced);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn td_of(g: &Graph) -> usize {
        treedepth(g, g.n()).unwrap().unwrap().height()
    }

    #[test]
    fn treedepth_small_cases() {
        assert_eq!(td_of(&Graph::from_edges(1, [])), 1);
        for n in 1..=7 {
            assert_eq!(td_of(&complete(n)), n);
        }
        // Frozen from the root-removal brute force in tests/params.rs.
        assert_eq!(td_of(&path(7)), 3);
        assert_eq!(td_of(&path(8)), 4);
        assert_eq!(td_of(&star(6)), 2);
        assert_eq!(td_of(&cycle(6)), 4);
    }

    #[test]
    fn treedepth_budget() {
        assert!(treedepth(&path(7), 2).unwrap().is_none());
        assert_eq!(treedepth(&path(7), 3).unwrap().unwrap().height(), 3);
        assert!(treedepth(&complete(5), 4).unwrap().is_none());
    }

    #[test]
    fn treedepth_rejects_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert_eq!(treedepth(&g, 4), Err(ParamError::Graph(GraphError::Disconnected(2))));
    }

    #[test]
    fn decomposition_closure() {
        let g = cycle(7);
        let td = treedepth(&g, 7).unwrap().unwrap();
        assert!(td.is_valid_for(&g));
        assert_eq!(td.roots().len(), 1);
        let bad = TreedepthDecomposition::from_parents(vec![None, Some(0), Some(0)]).unwrap();
        assert_eq!(bad.closure_violation(&path(3)), Some((1, 2)));
        assert!(TreedepthDecomposition::from_parents(vec![Some(1), Some(0)]).is_none());
    }

    #[test]
    fn restriction_keeps_closure() {
        let g = path(7);
        let td = treedepth(&g, 7).unwrap().unwrap();
        let keep = VertexSet::from_unsorted(vec![0, 1, 2, 4, 5]);
        let (h, _) = g.induced_subgraph(&keep).unwrap();
        let r = td.restrict(&keep);
        assert!(r.is_valid_for(&h));
        assert!(r.height() <= td.height());
    }

    #[test]
    fn long_paths() {
        assert!(has_long_path(&path(5), 2).unwrap());
        assert!(!has_long_path(&path(4), 2).unwrap());
        assert!(!has_long_path(&complete(2), 1).unwrap());
        assert_eq!(has_long_path(&path(3), 7), Err(ParamError::PathTooLong(7)));
    }

    #[test]
    fn vertex_covers() {
        let c = min_vertex_cover(&star(5), 5).unwrap();
        assert_eq!(c.cover.as_slice(), &[0]);
        assert_eq!(min_vertex_cover(&complete_bipartite(3, 3), 6).unwrap().size(), 3);
        assert_eq!(min_vertex_cover(&path(4), 4).unwrap().size(), 2);
        assert!(min_vertex_cover(&complete_bipartite(3, 3), 2).is_none());
        assert_eq!(min_vertex_cover(&Graph::from_edges(3, []), 0).unwrap().size(), 0);
        assert_eq!(min_vertex_cover(&complete(6), 10).unwrap().size(), 5);
    }

    #[test]
    fn json_forms() {
        let g = crate::graph::parse_graph("a b\nb c").unwrap();
        let td = treedepth(&g, 3).unwrap().unwrap();
        assert_eq!(td.to_json(&g), serde_json::json!({"parent": {"a": "b", "b": null, "c": "b"}, "height": 2}));
        let c = min_vertex_cover(&g, 3).unwrap();
        assert_eq!(c.to_json(&g), serde_json::json!({"cover": ["b"]}));
    }
}
