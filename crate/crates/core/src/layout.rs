//! Linear layouts: a vertex order plus an edge-to-queue assignment.
//!
//! Queues are numbered from 1. A layout may cover only a subset of a host
//! graph's vertices (the kernels lift layouts vertex by vertex); such a
//! layout is checked with [`validate_partial`] against the subgraph induced
//! by its order.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::LayoutError;
use crate::graph::{Edge, Graph};

pub const ABSENT: usize = usize::MAX;

/// Position of every vertex of a graph with `n` vertices; [`ABSENT`] for
/// vertices not in `order`.
pub fn positions(n: usize, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![ABSENT; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// True iff the edges have four distinct endpoints and one strictly encloses
/// the other under `pos`.
pub fn edges_nest(pos: &[usize], e1: Edge, e2: Edge) -> bool {
    if !e1.independent(e2) {
        return false;
    }
    let (a, b) = span(pos, e1);
    let (c, d) = span(pos, e2);
    (a < c && d < b) || (c < a && b < d)
}

/// Endpoint positions of `e`, left first.
pub fn span(pos: &[usize], e: Edge) -> (usize, usize) {
    let (x, y) = (pos[e.0], pos[e.1]);
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLayout {
    order: Vec<usize>,
    queues: BTreeMap<Edge, usize>,
    num_queues: usize,
}

impl LinearLayout {
    pub fn new(order: Vec<usize>, queues: BTreeMap<Edge, usize>, num_queues: usize) -> Self {
        LinearLayout { order, queues, num_queues }
    }

    /// Every edge of `g` among the ordered vertices in queue 1.
    pub fn single_queue(g: &Graph, order: Vec<usize>) -> Self {
        let mut present = vec![false; g.n()];
        for &v in &order {
            present[v] = true;
        }
        let queues: BTreeMap<Edge, usize> = g.edges_within(&present).map(|e| (e, 1)).collect();
        let num_queues = usize::from(!queues.is_empty());
        LinearLayout { order, queues, num_queues }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn queues(&self) -> &BTreeMap<Edge, usize> {
        &self.queues
    }

    pub fn queue_of(&self, e: Edge) -> Option<usize> {
        self.queues.get(&e).copied()
    }

    pub fn num_queues(&self) -> usize {
        self.num_queues
    }

    pub fn positions(&self, n: usize) -> Vec<usize> {
        positions(n, &self.order)
    }

    /// Renames every vertex `v` to `map[v]`.
    pub fn map_vertices(&self, map: &[usize]) -> Self {
        LinearLayout {
            order: self.order.iter().map(|&v| map[v]).collect(),
            queues: self.queues.iter().map(|(e, &q)| (Edge::new(map[e.0], map[e.1]), q)).collect(),
            num_queues: self.num_queues,
        }
    }

    /// Concatenates orders; queue indices are kept as they are.
    pub fn concat(parts: impl IntoIterator<Item = LinearLayout>) -> Self {
        let mut out = LinearLayout { order: Vec::new(), queues: BTreeMap::new(), num_queues: 0 };
        for part in parts {
            out.order.extend(part.order);
            out.queues.extend(part.queues);
            out.num_queues = out.num_queues.max(part.num_queues);
        }
        out
    }

    /// Inserts `v` right after position `index` (or first when `index` is
    /// `None`) and assigns its edges.
    pub(crate) fn insert_vertex(&mut self, after: Option<usize>, v: usize, edges: impl IntoIterator<Item = (Edge, usize)>) {
        let at = after.map_or(0, |i| i + 1);
        self.order.insert(at, v);
        for (e, q) in edges {
            self.num_queues = self.num_queues.max(q);
            self.queues.insert(e, q);
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let pos = self.positions(g.n());
        let mut by_queue: BTreeMap<usize, Vec<(usize, usize, Edge)>> = BTreeMap::new();
        for (&e, &q) in &self.queues {
            let (l, r) = span(&pos, e);
            by_queue.entry(q).or_default().push((l, r, e));
        }
        let mut queues = Map::new();
        for (q, mut list) in by_queue {
            list.sort_unstable();
            let arr = list
                .into_iter()
                .map(|(l, r, _)| Value::from(vec![g.label(self.order[l]), g.label(self.order[r])]))
                .collect();
            queues.insert(q.to_string(), Value::Array(arr));
        }
        let order: Vec<&str> = self.order.iter().map(|&v| g.label(v)).collect();
        serde_json::json!({ "order": order, "queues": queues })
    }

    /// Reads the layout JSON format, resolving labels against `g`.
    pub fn from_json(g: &Graph, text: &str) -> Result<Self, LayoutError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| LayoutError::Format(e.to_string()))?;
        let index: std::collections::HashMap<&str, usize> =
            g.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let resolve = |v: &Value| -> Result<usize, LayoutError> {
            let label = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(LayoutError::Format(format!("bad vertex label {other}"))),
            };
            index.get(label.as_str()).copied().ok_or_else(|| LayoutError::Format(format!("unknown vertex {label:?}")))
        };
        let order = doc
            .get("order")
            .and_then(Value::as_array)
            .ok_or_else(|| LayoutError::Format("missing \"order\" array".into()))?
            .iter()
            .map(resolve)
            .collect::<Result<Vec<_>, _>>()?;
        let mut queues = BTreeMap::new();
        let mut num_queues = 0;
        if let Some(obj) = doc.get("queues") {
            let obj = obj.as_object().ok_or_else(|| LayoutError::Format("\"queues\" must be an object".into()))?;
            for (key, list) in obj {
                let q: usize = key
                    .parse()
                    .ok()
                    .filter(|&q| q >= 1)
                    .ok_or_else(|| LayoutError::Format(format!("queue key {key:?} is not a positive integer")))?;
                let list = list.as_array().ok_or_else(|| LayoutError::Format(format!("queue {q} is not a list")))?;
                for pair in list {
                    let ends = pair
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| LayoutError::Format(format!("queue {q}: {pair} is not an edge")))?;
                    let (a, b) = (resolve(&ends[0])?, resolve(&ends[1])?);
                    if a == b {
                        return Err(LayoutError::Format(format!("queue {q}: self-loop {pair}")));
                    }
                    if queues.insert(Edge::new(a, b), q).is_some() {
                        return Err(LayoutError::Format(format!("edge {pair} listed twice")));
                    }
                    num_queues = num_queues.max(q);
                }
            }
        }
        Ok(LinearLayout { order, queues, num_queues })
    }
}

/// Two same-queue independent edges where `outer` encloses `inner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub queue: usize,
    pub outer: Edge,
    pub inner: Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Nested(Violation),
}

impl Validation {
    pub fn is_valid(self) -> bool {
        self == Validation::Valid
    }
}

/// Checks a layout of all of `g`.
pub fn validate_layout(g: &Graph, l: &LinearLayout) -> Result<Validation, LayoutError> {
    if l.order.len() != g.n() {
        return Err(LayoutError::NotPermutation);
    }
    validate_partial(g, l)
}

/// Checks a layout of the subgraph of `g` induced by the layout's order.
pub fn validate_partial(g: &Graph, l: &LinearLayout) -> Result<Validation, LayoutError> {
    let mut present = vec![false; g.n()];
    for &v in &l.order {
        if v >= g.n() || present[v] {
            return Err(LayoutError::NotPermutation);
        }
        present[v] = true;
    }
    let mut expected = 0;
    for e in g.edges_within(&present) {
        expected += 1;
        match l.queues.get(&e) {
            None => return Err(LayoutError::MissingEdge(e)),
            Some(&q) if q == 0 || q > l.num_queues => {
                return Err(LayoutError::QueueOutOfRange { edge: e, queue: q, num_queues: l.num_queues })
            }
            Some(_) => {}
        }
    }
    if l.queues.len() != expected {
        let extra = l.queues.keys().find(|e| !(present[e.0] && present[e.1] && g.has_edge(e.0, e.1))).copied();
        return Err(LayoutError::ExtraEdge(extra.expect("queue map larger than edge set")));
    }

    let pos = l.positions(g.n());
    let mut by_queue: BTreeMap<usize, Vec<(usize, usize, Edge)>> = BTreeMap::new();
    for (&e, &q) in &l.queues {
        let (a, b) = span(&pos, e);
        by_queue.entry(q).or_default().push((a, b, e));
    }
    for (q, mut list) in by_queue {
        list.sort_unstable();
        for (i, &(a, b, outer)) in list.iter().enumerate() {
            for &(c, d, inner) in &list[i + 1..] {
                if c >= b {
                    break;
                }
                if a < c && d < b && outer.independent(inner) {
                    return Ok(Validation::Nested(Violation { queue: q, outer, inner }));
                }
            }
        }
    }
    Ok(Validation::Valid)
}

/// Pairwise independent, pairwise nesting edges, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rainbow {
    pub edges: Vec<Edge>,
}

impl Rainbow {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

struct NestingChains {
    spans: Vec<(usize, usize)>,
    /// Longest chain of edges strictly nested inside edge `i`, counting `i`.
    depth: Vec<usize>,
}

impl NestingChains {
    fn compute(edges: &[Edge], pos: &[usize]) -> Self {
        let spans: Vec<(usize, usize)> = edges.iter().map(|&e| span(pos, e)).collect();
        let mut by_width: Vec<usize> = (0..edges.len()).collect();
        by_width.sort_by_key(|&i| spans[i].1 - spans[i].0);
        let mut depth = vec![1; edges.len()];
        for (k, &i) in by_width.iter().enumerate() {
            let (a, b) = spans[i];
            let mut best = 0;
            // Narrower edges come first; equal widths cannot strictly nest.
            for &j in &by_width[..k] {
                let (c, d) = spans[j];
                if a < c && d < b {
                    best = best.max(depth[j]);
                }
            }
            depth[i] = best + 1;
        }
        NestingChains { spans, depth }
    }
}

/// A maximum rainbow under `order` (a permutation of the vertices of `g`).
///
/// Among maximum rainbows the one whose outermost-first sequence of
/// endpoint positions is lexicographically smallest is returned.
pub fn max_rainbow(g: &Graph, order: &[usize]) -> Rainbow {
    let pos = positions(g.n(), order);
    let edges = g.edges();
    let chains = NestingChains::compute(edges, &pos);
    let Some(&best) = chains.depth.iter().max() else {
        return Rainbow::default();
    };
    let mut out = Vec::with_capacity(best);
    let mut outer: Option<(usize, usize)> = None;
    for want in (1..=best).rev() {
        let pick = (0..edges.len())
            .filter(|&i| chains.depth[i] == want)
            .filter(|&i| outer.map_or(true, |(a, b)| a < chains.spans[i].0 && chains.spans[i].1 < b))
            .min_by_key(|&i| chains.spans[i])
            .expect("chain depth guarantees a continuation");
        out.push(edges[pick]);
        outer = Some(chains.spans[pick]);
    }
    Rainbow { edges: out }
}

/// Lower bound on the largest rainbow of any completion of a partial order.
///
/// `pos` holds the positions of the placed vertices (a prefix of the final
/// order) and [`ABSENT`] elsewhere. Closed edges form chains as usual; an
/// edge with one placed endpoint left of a chain's outermost edge will
/// enclose the whole chain once its other endpoint is placed.
pub(crate) fn prefix_rainbow_bound(edges: &[Edge], pos: &[usize]) -> usize {
    let mut closed = Vec::new();
    let mut open_left = usize::MAX;
    for &e in edges {
        match (pos[e.0] != ABSENT, pos[e.1] != ABSENT) {
            (true, true) => closed.push(e),
            (true, false) => open_left = open_left.min(pos[e.0]),
            (false, true) => open_left = open_left.min(pos[e.1]),
            (false, false) => {}
        }
    }
    let chains = NestingChains::compute(&closed, pos);
    chains
        .depth
        .iter()
        .zip(&chains.spans)
        .map(|(&d, &(a, _))| d + usize::from(open_left < a))
        .max()
        .unwrap_or(0)
}

/// The optimal queue assignment for a fixed order: each edge goes to
/// queue `1 + longest chain strictly nested inside it`.
pub fn min_queues_for_order(g: &Graph, order: &[usize]) -> LinearLayout {
    let pos = positions(g.n(), order);
    let chains = NestingChains::compute(g.edges(), &pos);
    let queues: BTreeMap<Edge, usize> = g.edges().iter().copied().zip(chains.depth.iter().copied()).collect();
    let num_queues = chains.depth.iter().copied().max().unwrap_or(0);
    LinearLayout { order: order.to_vec(), queues, num_queues }
}
