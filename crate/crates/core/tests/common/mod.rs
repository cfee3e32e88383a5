#![allow(dead_code)]

use std::collections::BTreeSet;

use qlayout::graph::families;
use qlayout::layout::{edges_nest, positions};
use qlayout::params::TreedepthDecomposition;
use qlayout::{Edge, Graph};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

pub use rand::{Rng, SeedableRng};
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` vertices.
pub fn random_graph(r: &mut TestRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if r.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// A random spanning tree plus independent extra edges.
pub fn random_connected(r: &mut TestRng, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = r.gen_range(0..v);
        edges.insert((u, v));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if r.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Connected graph whose first `tau` vertices cover every edge; each
/// possible edge is present with probability `p`.
pub fn random_small_cover(r: &mut TestRng, n: usize, tau: usize, p: f64) -> Graph {
    loop {
        let mut edges = Vec::new();
        for a in 0..tau {
            for b in (a + 1)..tau {
                if r.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        for v in tau..n {
            for c in 0..tau {
                if r.gen_bool(p) {
                    edges.push((c, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_order(r: &mut TestRng, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    order
}

/// Largest set of pairwise nesting edges under `order`, by exhaustive
/// search over edge subsets (every subset extending a nesting set is tried).
pub fn brute_max_rainbow(g: &Graph, order: &[usize]) -> usize {
    let pos = positions(g.n(), order);
    let edges = g.edges();
    fn grow(edges: &[Edge], pos: &[usize], start: usize, chosen: &mut Vec<Edge>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for i in start..edges.len() {
            let e = edges[i];
            if chosen.iter().all(|&c| edges_nest(pos, c, e) || edges_nest(pos, e, c)) {
                chosen.push(e);
                grow(edges, pos, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(edges, &pos, 0, &mut Vec::new(), &mut best);
    best
}

/// Treedepth from the recursive definition, trying every root at every
/// level (no memoization).
pub fn brute_treedepth(g: &Graph) -> usize {
    fn td(g: &Graph, alive: &mut Vec<bool>) -> usize {
        let comps = g.components_within(alive);
        let mut worst = 0;
        for c in comps {
            let mut best = usize::MAX;
            for v in c.iter() {
                let mut sub = vec![false; g.n()];
                for u in c.iter() {
                    sub[u] = u != v;
                }
                best = best.min(1 + td(g, &mut sub));
            }
            worst = worst.max(best);
        }
        worst
    }
    td(g, &mut vec![true; g.n()])
}

/// Smallest vertex cover by subset enumeration.
pub fn brute_vertex_cover(g: &Graph) -> usize {
    let n = g.n();
    (0u32..(1 << n))
        .filter(|&mask| g.edges().iter().all(|e| mask >> e.0 & 1 == 1 || mask >> e.1 & 1 == 1))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Whether the edge set of `g` contains a rainbow of two under some order:
/// the 1-queue question answered by plain enumeration of all `n!` orders.
pub fn brute_is_1queue(g: &Graph) -> bool {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    fn rec(g: &Graph, order: &mut Vec<usize>, k: usize) -> bool {
        if k == order.len() {
            let pos = positions(g.n(), order);
            let e = g.edges();
            return !(0..e.len()).any(|i| (0..e.len()).any(|j| edges_nest(&pos, e[i], e[j])));
        }
        for i in k..order.len() {
            order.swap(k, i);
            if rec(g, order, k + 1) {
                return true;
            }
            order.swap(k, i);
        }
        false
    }
    rec(g, &mut order, 0)
}

/// All trees on `n` vertices up to isomorphism.
pub fn all_trees(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::from_edges(1, [])];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let edges: Vec<(usize, usize)> = t.edges().iter().map(|e| (e.0, e.1)).chain([(v, size - 1)]).collect();
                let g = Graph::from_edges(size, edges);
                if seen.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// Isomorphism invariant of a tree: smallest rooted encoding over all roots.
fn tree_code(g: &Graph) -> String {
    fn enc(g: &Graph, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = g.neighbors(v).iter().filter(|&&u| u != parent).map(|&u| enc(g, u, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..g.n()).map(|r| enc(g, r, usize::MAX)).min().unwrap_or_default()
}

/// Anchor path `0..path_len` (a path in `G`, a chain in `T`) with `copies`
/// identical copies of a random connected template hanging below its last
/// vertex, plus `extras` components with independently drawn templates.
/// Template vertices form a chain in `T` below the anchor.
pub struct Fan {
    pub graph: Graph,
    pub tree: TreedepthDecomposition,
    pub anchor: usize,
}

pub fn random_fan(r: &mut TestRng, path_len: usize, template_size: usize, copies: usize, extras: usize) -> Fan {
    let template = random_template(r, path_len, template_size);
    let mut edges: Vec<(usize, usize)> = (1..path_len).map(|i| (i - 1, i)).collect();
    let mut parent: Vec<Option<usize>> = (0..path_len).map(|i| i.checked_sub(1)).collect();
    let anchor = path_len - 1;
    let place = |t: &Template, edges: &mut Vec<(usize, usize)>, parent: &mut Vec<Option<usize>>| {
        let base = parent.len();
        for j in 0..t.size {
            parent.push(Some(if j == 0 { anchor } else { base + j - 1 }));
        }
        for &(a, b) in &t.edges {
            edges.push((base + a, base + b));
        }
        for (j, att) in t.attachments.iter().enumerate() {
            for &p in att {
                edges.push((p, base + j));
            }
        }
    };
    for _ in 0..copies {
        place(&template, &mut edges, &mut parent);
    }
    for _ in 0..extras {
        let size = r.gen_range(1..=template_size.max(1));
        let t = random_template(r, path_len, size);
        place(&t, &mut edges, &mut parent);
    }
    let graph = Graph::from_edges(parent.len(), edges);
    let tree = TreedepthDecomposition::from_parents(parent).expect("chain forest");
    Fan { graph, tree, anchor }
}

struct Template {
    size: usize,
    edges: Vec<(usize, usize)>,
    attachments: Vec<Vec<usize>>,
}

fn random_template(r: &mut TestRng, path_len: usize, size: usize) -> Template {
    let mut edges = BTreeSet::new();
    for v in 1..size {
        edges.insert((r.gen_range(0..v), v));
    }
    for a in 0..size {
        for b in (a + 1)..size {
            if r.gen_bool(0.25) {
                edges.insert((a, b));
            }
        }
    }
    let mut attachments: Vec<Vec<usize>> = (0..size)
        .map(|_| (0..path_len).filter(|_| r.gen_bool(0.35)).collect())
        .collect();
    if attachments.iter().all(Vec::is_empty) {
        let j = r.gen_range(0..size);
        attachments[j].push(path_len - 1);
    }
    Template { size, edges: edges.into_iter().collect(), attachments }
}

pub fn cliques() -> Vec<Graph> {
    (2..=8).map(families::complete).collect()
}
