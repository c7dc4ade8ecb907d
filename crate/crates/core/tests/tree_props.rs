mod common;

use cayley_core::tree::{ball_size, build_volume, sphere_size, SubgraphHandle};
use cayley_core::Vertex;
use proptest::prelude::*;

#[test]
fn subgraph_counts_match_generating_function() {
    for k in [2, 3] {
        let max_edges = if k == 2 { 7 } else { 5 };
        let vol = build_volume(k, max_edges).unwrap();
        let counts = vol.enumerate_connected_subgraphs(Vertex::ROOT, max_edges).unwrap();
        let oracle = common::rooted_subtree_counts(k, max_edges + 1);
        assert_eq!(counts, oracle[1..].to_vec(), "k = {k}");
    }
}

#[test]
fn clipped_enumeration_is_rejected() {
    let vol = build_volume(2, 3).unwrap();
    assert!(vol.enumerate_connected_subgraphs(Vertex::ROOT, 4).is_err());
    assert!(vol.enumerate_connected_subgraphs(Vertex::new(1), 3).is_err());
    assert_eq!(vol.enumerate_connected_subgraphs(Vertex::ROOT, 0).unwrap(), Vec::<u64>::new());
}

#[test]
fn connected_sets_off_the_root_are_counted_alike() {
    // every vertex of the regular tree looks the same when far from the halo
    let vol = build_volume(2, 6).unwrap();
    let at_root = vol.enumerate_connected_subgraphs(Vertex::ROOT, 4).unwrap();
    let off = vol.enumerate_connected_subgraphs(Vertex::new(2), 4).unwrap();
    assert_eq!(at_root, off);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sizes_match_closed_forms(k in 2usize..5, n in 0usize..5) {
        let vol = build_volume(k, n).unwrap();
        prop_assert_eq!(vol.num_vertices() as u128, ball_size(k, n + 1).unwrap());
        prop_assert_eq!(vol.inner_len() as u128, ball_size(k, n).unwrap());
        for m in 0..=n + 1 {
            prop_assert_eq!(vol.sphere(m).count() as u128, sphere_size(k, m).unwrap());
            prop_assert!(vol.sphere(m).all(|v| vol.depth(v) == m));
        }
        prop_assert_eq!(vol.num_edges(), vol.num_vertices() - 1);
    }

    #[test]
    fn distance_is_a_metric(k in 2usize..4, a in 0usize..40, b in 0usize..40, c in 0usize..40) {
        let vol = build_volume(k, 3).unwrap();
        let m = vol.num_vertices();
        let (a, b, c) = (Vertex::new(a % m), Vertex::new(b % m), Vertex::new(c % m));
        let ab = vol.distance(a, b).unwrap();
        prop_assert_eq!(ab, vol.distance(b, a).unwrap());
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(ab <= vol.distance(a, c).unwrap() + vol.distance(c, b).unwrap());
        prop_assert_eq!(vol.distance(Vertex::ROOT, a).unwrap(), vol.depth(a));
    }

    /// Random connected sets, grown by attaching random neighbours.
    #[test]
    fn boundary_sizes_of_random_subtrees(k in 2usize..4, picks in prop::collection::vec(any::<u32>(), 0..10)) {
        let vol = build_volume(k, 10).unwrap();
        let mut set = vec![Vertex::ROOT];
        for p in picks {
            let frontier = vol.vertex_boundary(&set).unwrap();
            set.push(frontier[p as usize % frontier.len()]);
        }
        let vb = vol.vertex_boundary(&set).unwrap();
        prop_assert_eq!(vb.len(), (k - 1) * set.len() + 2);
        let sub = SubgraphHandle::induced(&vol, &set).unwrap();
        prop_assert_eq!(sub.edges().len() + 1, set.len());
        prop_assert_eq!(vol.incident_edge_boundary(&sub).unwrap().len(), vb.len());
    }

    #[test]
    fn edge_labels_are_a_proper_colouring(k in 2usize..5) {
        let vol = build_volume(k, 3).unwrap();
        for v in vol.vertices().filter(|&v| vol.is_inner(v)) {
            let mut labels: Vec<u8> = vol.incident_edges(v).map(|e| vol.edge_label(e)).collect();
            labels.sort_unstable();
            let all: Vec<u8> = (1..=(k as u8 + 1)).collect();
            prop_assert_eq!(labels, all);
        }
    }
}
