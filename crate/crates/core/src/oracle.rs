//! Brute-force ground truth: search over every vertex order.
//!
//! Kept deliberately separate from the kernels and from the chain
//! computation in [`crate::layout`]; the only shared piece is turning the
//! optimal order into a witness layout. The search is exact but pruned: a
//! prefix is abandoned as soon as it forces a rainbow larger than the
//! target, twins (vertices with equal neighborhoods apart from each other)
//! are placed in increasing id order, and failed prefixes are remembered by
//! their frontier. Frontiers are compared up to swapping interchangeable
//! components hanging off a small separator, and one such copy is dropped
//! first to get a lower bound from the smaller graph.

use std::collections::HashSet;

use crate::error::OracleError;
use crate::graph::{Graph, VertexSet};
use crate::layout::{min_queues_for_order, LinearLayout};

pub const DEFAULT_CAP: usize = 10;

const MEMO_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub queue_number: usize,
    pub witness: LinearLayout,
    /// Complete orders reached by the search, over all targets tried.
    pub orders_examined: u64,
}

/// Minimum number of queues over all orders of `g`.
pub fn oracle_queue_number(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    check_cap(g, cap)?;
    let mut search = Search::new(g);
    let mut h = if g.m() == 0 { 0 } else { 1 };
    if let Some(sub) = search.copies.drop_one(g) {
        let r = oracle_queue_number(&sub, cap)?;
        h = h.max(r.queue_number);
        search.leaves += r.orders_examined;
    }
    loop {
        if let Some(order) = search.run(h) {
            let witness = min_queues_for_order(g, &order);
            debug_assert!(witness.num_queues() <= h);
            return Ok(OracleResult { queue_number: h, witness, orders_examined: search.leaves });
        }
        h += 1;
    }
}

/// Whether some order of `g` has no two nesting independent edges, with a
/// 1-queue witness if so.
pub fn oracle_is_1queue(g: &Graph, cap: usize) -> Result<(bool, Option<LinearLayout>), OracleError> {
    check_cap(g, cap)?;
    let mut search = Search::new(g);
    if let Some(sub) = search.copies.drop_one(g) {
        if !oracle_is_1queue(&sub, cap)?.0 {
            return Ok((false, None));
        }
    }
    Ok(match search.run(1) {
        Some(order) => (true, Some(LinearLayout::single_queue(g, order))),
        None => (false, None),
    })
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    if g.n() > cap {
        return Err(OracleError::OverCap { n: g.n(), cap });
    }
    Ok(())
}

struct Search<'g> {
    g: &'g Graph,
    /// Twins with a smaller id, which must be placed first.
    earlier_twins: Vec<Vec<usize>>,
    pos: Vec<Option<usize>>,
    order: Vec<usize>,
    leaves: u64,
    copies: Copies,
    failed: HashSet<Frontier>,
}

type Frontier = (Vec<u64>, Vec<(usize, usize, usize, usize)>);

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let mut earlier_twins = vec![Vec::new(); n];
        for v in 0..n {
            for u in 0..v {
                let strip = |x: usize, y: usize| -> Vec<usize> {
                    g.neighbors(x).iter().copied().filter(|&w| w != y).collect()
                };
                if strip(u, v) == strip(v, u) {
                    earlier_twins[v].push(u);
                }
            }
        }
        Search { g, earlier_twins, pos: vec![None; n], order: Vec::with_capacity(n), leaves: 0, copies: Copies::find(g), failed: HashSet::new() }
    }

    fn run(&mut self, h: usize) -> Option<Vec<usize>> {
        self.order.clear();
        self.failed.clear();
        self.pos.iter_mut().for_each(|p| *p = None);
        if self.dfs(h) {
            Some(self.order.clone())
        } else {
            None
        }
    }

    fn dfs(&mut self, h: usize) -> bool {
        let n = self.g.n();
        if self.order.len() == n {
            self.leaves += 1;
            return true;
        }
        let key = self.frontier(h);
        if self.failed.contains(&key) {
            return false;
        }
        for v in 0..n {
            if self.pos[v].is_some() || self.earlier_twins[v].iter().any(|&u| self.pos[u].is_none()) {
                continue;
            }
            self.pos[v] = Some(self.order.len());
            self.order.push(v);
            if self.forced_rainbow() <= h && (h > 1 || !self.crossing_demands()) && self.dfs(h) {
                return true;
            }
            self.order.pop();
            self.pos[v] = None;
        }
        if self.failed.len() < MEMO_CAP {
            self.failed.insert(key);
        }
        false
    }

    fn frontier(&self, h: usize) -> Frontier {
        let n = self.g.n();
        let copies = &self.copies;
        let closed: Vec<(usize, usize)> = self
            .g
            .edges()
            .iter()
            .filter_map(|e| match (self.pos[e.0], self.pos[e.1]) {
                (Some(a), Some(b)) => Some((a.min(b), a.max(b))),
                _ => None,
            })
            .collect();
        let active: Vec<(usize, usize)> = self
            .order
            .iter()
            .enumerate()
            .filter(|&(_, &v)| self.g.neighbors(v).iter().any(|&u| self.pos[u].is_none()))
            // With one queue a surviving prefix has no closed edge right of
            // an active vertex.
            .map(|(p, &v)| (v, if h <= 1 { 0 } else { longest_chain(closed.iter().copied().filter(|&(a, _)| a > p).collect()) }))
            .collect();

        let mut placed = vec![0u64; n.div_ceil(64) + 1];
        for &v in &self.order {
            if copies.slot[v].is_none() {
                placed[v / 64] |= 1 << (v % 64);
            }
        }
        // Copies are renamed by first active appearance, then by which of
        // their vertices are placed.
        let mut rank: Vec<Vec<usize>> = Vec::with_capacity(copies.families.len());
        for (f, family) in copies.families.iter().enumerate() {
            let mut keyed: Vec<(usize, u64, usize)> = family
                .iter()
                .enumerate()
                .map(|(c, members)| {
                    let first = active
                        .iter()
                        .position(|&(v, _)| copies.slot[v].is_some_and(|(ff, cc, _)| ff == f && cc == c))
                        .unwrap_or(usize::MAX);
                    let mask = members
                        .iter()
                        .enumerate()
                        .filter(|&(_, &v)| self.pos[v].is_some())
                        .fold(0u64, |m, (j, _)| m | 1 << j);
                    (first, mask, c)
                })
                .collect();
            keyed.sort_unstable();
            let mut r = vec![0; family.len()];
            for (i, &(_, mask, c)) in keyed.iter().enumerate() {
                r[c] = i;
                placed.push(mask);
            }
            rank.push(r);
        }
        let tokens = active
            .iter()
            .map(|&(v, chain)| match copies.slot[v] {
                Some((f, c, j)) => (f, rank[f][c], j, chain),
                None => (usize::MAX, v, 0, chain),
            })
            .collect();
        (placed, tokens)
    }

    /// Size of a rainbow every completion of the current prefix contains.
    fn forced_rainbow(&self) -> usize {
        let mut closed: Vec<(usize, usize)> = Vec::new();
        let mut open_left = usize::MAX;
        for e in self.g.edges() {
            match (self.pos[e.0], self.pos[e.1]) {
                (Some(a), Some(b)) => closed.push((a.min(b), a.max(b))),
                (Some(a), None) | (None, Some(a)) => open_left = open_left.min(a),
                (None, None) => {}
            }
        }
        let depth = chain_depths(&mut closed);
        // Positions are distinct per vertex, so strict containment of spans
        // already means four distinct endpoints.
        closed
            .iter()
            .zip(&depth)
            .map(|(&(a, _), &d)| d + usize::from(open_left < a))
            .max()
            .unwrap_or(0)
    }
}

impl Search<'_> {
    /// With one queue, an unplaced `x` must precede an unplaced `y` whenever
    /// some placed neighbor of `x` lies left of some placed neighbor of `y`.
    /// True if two unplaced vertices each demand to come first.
    fn crossing_demands(&self) -> bool {
        let spans: Vec<(usize, usize)> = (0..self.g.n())
            .filter(|&x| self.pos[x].is_none())
            .filter_map(|x| {
                let placed = self.g.neighbors(x).iter().filter_map(|&a| self.pos[a]);
                let (lo, hi) = placed.fold((usize::MAX, 0), |(lo, hi), p| (lo.min(p), hi.max(p)));
                (lo != usize::MAX).then_some((lo, hi))
            })
            .collect();
        spans.iter().enumerate().any(|(i, &(lx, rx))| spans[..i].iter().any(|&(ly, ry)| lx < ry && ly < rx))
    }
}

/// Components of `G - S` for a separator `S` of at most three vertices,
/// grouped so that swapping two copies of a family along their matching is
/// an automorphism.
#[derive(Default)]
struct Copies {
    /// (family, copy, index within the copy) of every family vertex.
    slot: Vec<Option<(usize, usize, usize)>>,
    /// `families[f][c]` lists copy `c` in the order matching copy 0.
    families: Vec<Vec<Vec<usize>>>,
}

const COPY_MAX: usize = 8;
const SEPARATOR_MAX: usize = 3;

impl Copies {
    fn find(g: &Graph) -> Copies {
        let n = g.n();
        let mut best = Copies { slot: vec![None; n], families: Vec::new() };
        if n > 64 {
            return best;
        }
        let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
        let mut best_gain = 0.0;
        let mut sep = Vec::new();
        let mut consider = |sep: &[usize]| {
            let families = Self::families_for(&adj, sep);
            let gain: f64 = families.iter().map(|f| (2..=f.len()).map(|i| (i as f64).ln()).sum::<f64>()).sum();
            if gain > best_gain + 1e-9 {
                best_gain = gain;
                best.families = families;
            }
        };
        fn subsets(n: usize, start: usize, sep: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
            f(sep);
            if sep.len() == SEPARATOR_MAX {
                return;
            }
            for v in start..n {
                sep.push(v);
                subsets(n, v + 1, sep, f);
                sep.pop();
            }
        }
        subsets(n, 0, &mut sep, &mut consider);
        for (f, family) in best.families.iter().enumerate() {
            for (c, members) in family.iter().enumerate() {
                for (j, &v) in members.iter().enumerate() {
                    best.slot[v] = Some((f, c, j));
                }
            }
        }
        best
    }

    /// `g` without the last copy of its largest family. Queue number never
    /// grows under taking subgraphs, so this gives a lower bound.
    fn drop_one(&self, g: &Graph) -> Option<Graph> {
        let family = self.families.iter().max_by_key(|f| f.len())?;
        let last: VertexSet = family.last()?.iter().copied().collect();
        Some(g.remove_vertices(&last).expect("copy vertices belong to g").0)
    }

    fn families_for(adj: &[u64], sep: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let n = adj.len();
        let s_mask = sep.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut seen = s_mask;
        let mut families: Vec<Vec<Vec<usize>>> = Vec::new();
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj[v] & !comp & !s_mask;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            let members: Vec<usize> = (0..n).filter(|&v| comp >> v & 1 == 1).collect();
            if members.len() > COPY_MAX {
                continue;
            }
            let matched = families.iter_mut().find_map(|fam| {
                let image = match_copy(adj, comp, s_mask, &fam[0], &members)?;
                Some((fam, image))
            });
            match matched {
                Some((fam, image)) => fam.push(image),
                None => families.push(vec![members]),
            }
        }
        families.retain(|f| f.len() > 1);
        families
    }
}

/// Matching from copy `a` onto the component `b_mask`: edges inside the
/// copies and edges into the separator are preserved. Returns the image of
/// `a` in order.
fn match_copy(adj: &[u64], b_mask: u64, s_mask: u64, a: &[usize], b_members: &[usize]) -> Option<Vec<usize>> {
    if a.len() != b_members.len() {
        return None;
    }
    let a_mask = a.iter().fold(0u64, |m, &v| m | 1 << v);
    let local = |v: usize, mask: u64| (adj[v] & mask).count_ones();
    fn extend(
        adj: &[u64],
        a: &[usize],
        b: &[usize],
        image: &mut Vec<usize>,
        used: &mut u64,
        fits: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let i = image.len();
        if i == a.len() {
            return true;
        }
        for &y in b {
            if *used >> y & 1 == 1 || !fits(a[i], y) {
                continue;
            }
            if (0..i).any(|p| (adj[a[i]] >> a[p] & 1) != (adj[y] >> image[p] & 1)) {
                continue;
            }
            image.push(y);
            *used |= 1 << y;
            if extend(adj, a, b, image, used, fits) {
                return true;
            }
            image.pop();
            *used &= !(1 << y);
        }
        false
    }
    let fits = |x: usize, y: usize| adj[x] & s_mask == adj[y] & s_mask && local(x, a_mask) == local(y, b_mask);
    let mut image = Vec::with_capacity(a.len());
    extend(adj, a, b_members, &mut image, &mut 0, &fits).then_some(image)
}

/// Sorts spans by width; `depth[i]` is the most spans in a strictly nested
/// chain with `spans[i]` outermost.
fn chain_depths(spans: &mut [(usize, usize)]) -> Vec<usize> {
    spans.sort_by_key(|&(a, b)| b - a);
    let mut depth = vec![0usize; spans.len()];
    for i in 0..spans.len() {
        let (a, b) = spans[i];
        depth[i] = 1 + (0..i).filter(|&j| a < spans[j].0 && spans[j].1 < b).map(|j| depth[j]).max().unwrap_or(0);
    }
    depth
}

fn longest_chain(mut spans: Vec<(usize, usize)>) -> usize {
    chain_depths(&mut spans).into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::layout::validate_layout;

    #[test]
    fn cliques() {
        for n in 2..=6 {
            let r = oracle_queue_number(&complete(n), DEFAULT_CAP).unwrap();
            assert_eq!(r.queue_number, n / 2, "K{n}");
            assert!(validate_layout(&complete(n), &r.witness).unwrap().is_valid());
        }
    }

    #[test]
    fn k33() {
        assert_eq!(oracle_queue_number(&complete_bipartite(3, 3), DEFAULT_CAP).unwrap().queue_number, 2);
        assert!(!oracle_is_1queue(&complete_bipartite(3, 3), DEFAULT_CAP).unwrap().0);
    }

    #[test]
    fn one_queue_cases() {
        let (yes, w) = oracle_is_1queue(&cycle(6), DEFAULT_CAP).unwrap();
        assert!(yes);
        assert!(validate_layout(&cycle(6), &w.unwrap()).unwrap().is_valid());
        assert!(oracle_is_1queue(&path(2), DEFAULT_CAP).unwrap().0);
    }

    #[test]
    fn edgeless_and_cap() {
        let r = oracle_queue_number(&Graph::from_edges(3, []), DEFAULT_CAP).unwrap();
        assert_eq!(r.queue_number, 0);
        assert_eq!(
            oracle_queue_number(&path(11), DEFAULT_CAP),
            Err(OracleError::OverCap { n: 11, cap: 10 })
        );
        assert_eq!(oracle_queue_number(&path(11), 11).unwrap().queue_number, 1);
    }

    #[test]
    fn copies_found_below_separator() {
        // A hub with six pendant triangles.
        let mut edges = Vec::new();
        for c in 0..6 {
            let (a, b) = (1 + 2 * c, 2 + 2 * c);
            edges.extend([(0, a), (0, b), (a, b)]);
        }
        let g = Graph::from_edges(13, edges);
        let copies = Copies::find(&g);
        assert_eq!(copies.families.len(), 1);
        assert_eq!(copies.families[0].len(), 6);
        let mut plain = Search::new(&g);
        plain.copies = Copies { slot: vec![None; 13], families: Vec::new() };
        for h in 1..=2 {
            assert_eq!(Search::new(&g).run(h).is_some(), plain.run(h).is_some(), "h = {h}");
        }
    }

    #[test]
    fn twins_collapse_large_stars() {
        // 40 leaves are pairwise twins, so the search stays tiny.
        let r = oracle_queue_number(&star(40), 64).unwrap();
        assert_eq!(r.queue_number, 1);
    }
}
