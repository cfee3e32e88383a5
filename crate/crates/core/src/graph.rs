//! Simple undirected graphs with dense vertex ids and preserved labels.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{GraphError, ParseError};

/// An undirected edge stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Normalizes the endpoint order. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn has(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// True iff the two edges share no endpoint.
    pub fn independent(self, other: Edge) -> bool {
        !self.has(other.0) && !self.has(other.1)
    }

    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A strictly increasing list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Immutable simple graph on vertices `0..n`.
///
/// Every vertex keeps the label it was loaded with; all output goes through
/// the labels so renumbering never leaks to the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph with labels `"0".."n-1"`. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Panics on self-loops or out-of-range endpoints; parsers validate first.
    pub fn with_labels(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = labels.len();
        let set: BTreeSet<Edge> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a < n && b < n, "edge {a}-{b} out of range for {n} vertices");
                Edge::new(a, b)
            })
            .collect();
        let mut adjacency = vec![Vec::new(); n];
        for e in &set {
            adjacency[e.0].push(e.1);
            adjacency[e.1].push(e.0);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { labels, adjacency, edges: set.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Graph::from_edges(0, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).collect())
    }

    /// Edges with both endpoints in `present` (a membership mask over this graph).
    pub fn edges_within<'a>(&'a self, present: &'a [bool]) -> impl Iterator<Item = Edge> + 'a {
        self.edges.iter().copied().filter(move |e| present[e.0] && present[e.1])
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut mask = vec![true; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if !mask[start] {
                continue;
            }
            out.push(self.flood(start, &mut mask));
        }
        out
    }

    /// Components of the subgraph induced by the vertices flagged in `alive`.
    pub fn components_within(&self, alive: &[bool]) -> Vec<VertexSet> {
        let mut mask = alive.to_vec();
        let mut out = Vec::new();
        for start in 0..self.n() {
            if mask[start] {
                out.push(self.flood(start, &mut mask));
            }
        }
        out
    }

    // Clears the visited vertices from `mask`.
    fn flood(&self, start: usize, mask: &mut [bool]) -> VertexSet {
        let mut comp = vec![start];
        mask[start] = false;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &u in &self.adjacency[v] {
                if mask[u] {
                    mask[u] = false;
                    comp.push(u);
                }
            }
        }
        VertexSet::from_unsorted(comp)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The subgraph induced by `s`, with `origin[new] = old`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(&bad) = s.as_slice().iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::UnknownVertex(bad));
        }
        let origin: Vec<usize> = s.as_slice().to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in origin.iter().enumerate() {
            index[old] = new;
        }
        let labels = origin.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.0] != usize::MAX && index[e.1] != usize::MAX)
            .map(|e| (index[e.0], index[e.1]));
        Ok((Graph::with_labels(labels, edges), origin))
    }

    /// `induced_subgraph` on the complement of `s`.
    pub fn remove_vertices(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(&bad) = s.as_slice().iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::UnknownVertex(bad));
        }
        let keep = (0..self.n()).filter(|v| !s.contains(*v)).collect();
        self.induced_subgraph(&keep)
    }

    /// JSON document `{"vertices": [...], "edges": [[a,b],...]}` over labels.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| Value::from(vec![self.labels[e.0].clone(), self.labels[e.1].clone()]))
            .collect();
        serde_json::json!({ "vertices": self.labels, "edges": edges })
    }

    /// One edge per line. Isolated vertices cannot be expressed in this format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&self.labels[e.0]);
            out.push(' ');
            out.push_str(&self.labels[e.1]);
            out.push('\n');
        }
        out
    }
}

/// Parses either input format. Text whose first non-blank character is `{`
/// is read as JSON, anything else as an edge list.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json_graph(text)
    } else {
        parse_edge_list(text)
    }
}

#[derive(Default)]
struct LabelTable {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelTable {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }
}

/// Whitespace separated label pairs; `#` comments and blank lines skipped.
/// Vertex ids follow first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut table = LabelTable::default();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::MalformedLine { line: lineno + 1, content: raw.to_string() });
        }
        if fields[0] == fields[1] {
            return Err(ParseError::SelfLoop(fields[0].to_string()));
        }
        let a = table.intern(fields[0]);
        let b = table.intern(fields[1]);
        edges.push((a, b));
    }
    Ok(Graph::with_labels(table.labels, edges))
}

fn json_label(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

#[derive(Deserialize)]
struct JsonGraph {
    #[serde(default)]
    vertices: Vec<Value>,
    edges: Vec<Vec<Value>>,
}

/// Vertex ids follow the order of `"vertices"`; endpoints not listed there
/// are appended in order of first appearance.
pub fn parse_json_graph(text: &str) -> Result<Graph, ParseError> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut table = LabelTable::default();
    for v in &doc.vertices {
        let label = json_label(v).ok_or_else(|| ParseError::Json(format!("bad vertex label {v}")))?;
        table.intern(&label);
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, pair) in doc.edges.iter().enumerate() {
        let labels: Option<Vec<String>> = pair.iter().map(json_label).collect();
        let labels = match labels {
            Some(l) if l.len() == 2 => l,
            _ => return Err(ParseError::Json(format!("edge #{i} is not a pair of labels"))),
        };
        if labels[0] == labels[1] {
            return Err(ParseError::SelfLoop(labels[0].clone()));
        }
        edges.push((table.intern(&labels[0]), table.intern(&labels[1])));
    }
    Ok(Graph::with_labels(table.labels, edges))
}

/// Small named graph families used throughout the tests and the demo.
pub mod families {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Root 0, handle vertex 1, and `leaves` pendant vertices on 1.
    pub fn broom(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 2, std::iter::once((0, 1)).chain((2..leaves + 2).map(|v| (1, v))))
    }
}
