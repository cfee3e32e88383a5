mod common;

use common::*;
use common::Rng;
use proptest::prelude::*;
use qlayout::graph::{parse_edge_list, parse_json_graph};
use qlayout::{parse_graph, Graph, VertexSet};

proptest! {
    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(0..12);
        let g = random_graph(&mut r, n, 0.3);
        prop_assert_eq!(&parse_json_graph(&g.to_json().to_string()).unwrap(), &g);
        // The edge list drops isolated vertices and renumbers by appearance,
        // so compare through the labels.
        let h = parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(h.m(), g.m());
        for e in h.edges() {
            let (a, b) = (h.label(e.0), h.label(e.1));
            prop_assert!(g.has_edge(g.vertex_by_label(a).unwrap(), g.vertex_by_label(b).unwrap()));
        }
    }

    #[test]
    fn removing_vertices_keeps_exactly_the_other_edges(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..12);
        let g = random_graph(&mut r, n, 0.4);
        let s: VertexSet = (0..n).filter(|_| r.gen_bool(0.3)).collect();
        let (h, origin) = g.remove_vertices(&s).unwrap();
        prop_assert_eq!(h.n(), n - s.len());
        let expected = g.edges().iter().filter(|e| !s.contains(e.0) && !s.contains(e.1)).count();
        prop_assert_eq!(h.m(), expected);
        for e in h.edges() {
            prop_assert!(g.has_edge(origin[e.0], origin[e.1]));
        }
    }
}

#[test]
fn labels_survive_parsing() {
    let g = parse_graph("# a triangle\nalpha beta\n\nbeta gamma\ngamma alpha\n").unwrap();
    assert_eq!(g.labels(), &["alpha", "beta", "gamma"]);
    assert_eq!(g.m(), 3);
    let j = parse_graph(r#"{"vertices": [3, 1, 2], "edges": [[1, 2]]}"#).unwrap();
    assert_eq!(j.labels(), &["3", "1", "2"]);
    assert_eq!(j, Graph::with_labels(vec!["3".into(), "1".into(), "2".into()], [(1, 2)]));
}
