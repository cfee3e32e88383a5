//! Exhaustive 1-queue order search, used on kernels.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::layout::{prefix_rainbow_bound, ABSENT};

/// An order of `g` without two nesting independent edges, if one exists.
///
/// Prefixes that already force a rainbow of two are abandoned, and vertices
/// with identical neighborhoods (apart from each other) are only tried in
/// increasing id order. A surviving prefix is summarized by its vertex set
/// and the sequence of placed vertices that still have unplaced neighbors;
/// failed summaries are not explored twice.
pub fn find_1queue_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut twin_before: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let nv: Vec<usize> = g.neighbors(v).iter().copied().collect();
        twin_before[v] = (0..v).rev().find(|&u| {
            let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| x != v).collect();
            nu == nv.iter().copied().filter(|&x| x != u).collect::<Vec<_>>()
        });
    }
    let mut s = Search { g, twin_before, pos: vec![ABSENT; n], order: Vec::with_capacity(n), failed: HashSet::new() };
    s.dfs().then_some(s.order)
}

struct Search<'g> {
    g: &'g Graph,
    twin_before: Vec<Option<usize>>,
    pos: Vec<usize>,
    order: Vec<usize>,
    failed: HashSet<(Vec<bool>, Vec<usize>)>,
}

impl Search<'_> {
    fn dfs(&mut self) -> bool {
        let g = self.g;
        if self.order.len() == g.n() {
            return true;
        }
        let placed: Vec<bool> = self.pos.iter().map(|&p| p != ABSENT).collect();
        let active: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().any(|&u| !placed[u]))
            .collect();
        let key = (placed, active);
        if self.failed.contains(&key) {
            return false;
        }
        for v in 0..g.n() {
            if self.pos[v] != ABSENT || self.twin_before[v].is_some_and(|u| self.pos[u] == ABSENT) {
                continue;
            }
            self.pos[v] = self.order.len();
            self.order.push(v);
            if prefix_rainbow_bound(g.edges(), &self.pos) <= 1 && self.dfs() {
                return true;
            }
            self.order.pop();
            self.pos[v] = ABSENT;
        }
        if self.failed.len() < 1 << 20 {
            self.failed.insert(key);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::layout::{validate_layout, LinearLayout};

    #[test]
    fn small_decisions() {
        assert!(find_1queue_order(&complete_bipartite(3, 3)).is_none());
        assert!(find_1queue_order(&complete(5)).is_none());
        for g in [cycle(4), path(6), star(9), complete(3)] {
            let order = find_1queue_order(&g).unwrap();
            assert!(validate_layout(&g, &LinearLayout::single_queue(&g, order)).unwrap().is_valid());
        }
    }
}
