mod common;

use common::*;
use common::Rng;
use proptest::prelude::*;
use qlayout::graph::families::complete;
use qlayout::layout::{edges_nest, max_rainbow, min_queues_for_order, positions, validate_layout};
use qlayout::{Edge, Graph, LinearLayout, Validation};

fn instance(seed: u64) -> (Graph, Vec<usize>) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=8);
    let p = r.gen_range(0.1..1.0);
    let g = random_graph(&mut r, n, p);
    let order = random_order(&mut r, n);
    (g, order)
}

#[test]
fn k8_identity_rainbow_matches_exhaustive_search() {
    let g = complete(8);
    let order: Vec<usize> = (0..8).collect();
    assert_eq!(brute_max_rainbow(&g, &order), 4);
    let r = max_rainbow(&g, &order);
    assert_eq!(r.edges, vec![Edge(0, 7), Edge(1, 6), Edge(2, 5), Edge(3, 4)]);
    assert_eq!(min_queues_for_order(&g, &order).num_queues(), 4);
}

#[test]
fn layout_json_survives_relabeling() {
    let g = qlayout::parse_graph("x y\ny z\nz w\nw x\n").unwrap();
    let l = min_queues_for_order(&g, &[3, 0, 2, 1]);
    let back = LinearLayout::from_json(&g, &l.to_json(&g).to_string()).unwrap();
    assert_eq!(back, l);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fixed_order_queues_equal_largest_rainbow(seed in any::<u64>()) {
        let (g, order) = instance(seed);
        let brute = brute_max_rainbow(&g, &order);
        let l = min_queues_for_order(&g, &order);
        prop_assert_eq!(l.num_queues(), brute);
        prop_assert_eq!(max_rainbow(&g, &order).size(), brute);
        prop_assert_eq!(validate_layout(&g, &l).unwrap(), Validation::Valid);
    }

    #[test]
    fn rainbow_witness_is_pairwise_nesting(seed in any::<u64>()) {
        let (g, order) = instance(seed);
        let pos = positions(g.n(), &order);
        let r = max_rainbow(&g, &order);
        for (i, &a) in r.edges.iter().enumerate() {
            prop_assert!(g.has_edge(a.0, a.1));
            for &b in &r.edges[i + 1..] {
                prop_assert!(edges_nest(&pos, a, b));
            }
        }
    }

    #[test]
    fn one_queue_fewer_always_nests(seed in any::<u64>()) {
        // Squeezing the optimal assignment into one queue less must create a
        // violation whenever some edges nest.
        let (g, order) = instance(seed);
        let l = min_queues_for_order(&g, &order);
        if l.num_queues() >= 2 {
            let h = l.num_queues();
            let queues = l.queues().iter().map(|(&e, &q)| (e, q.min(h - 1))).collect();
            let squeezed = LinearLayout::new(order.clone(), queues, h - 1);
            prop_assert!(!validate_layout(&g, &squeezed).unwrap().is_valid());
        }
    }
}
