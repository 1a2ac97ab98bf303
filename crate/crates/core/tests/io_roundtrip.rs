mod common;

use common::digraph;
use polarosc::export::{matrix_from_csv, matrix_to_csv, pattern_from_pbm, pattern_to_pbm};
use polarosc::graph::generators::{self, RandomParams, TwoClusterParams};
use polarosc::graph::io::{from_edge_list, from_json, graph_hash, parse_graph, to_edge_list, to_json};
use polarosc::spectral::support;
use proptest::prelude::*;

proptest! {
    #[test]
    fn graph_formats_round_trip(g in digraph(12)) {
        prop_assert_eq!(&from_json(&to_json(&g)).unwrap(), &g);
        prop_assert_eq!(&from_edge_list(&to_edge_list(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_graph(&to_edge_list(&g)).unwrap(), &g);
        prop_assert_eq!(graph_hash(&from_json(&to_json(&g)).unwrap()), graph_hash(&g));
    }

    #[test]
    fn matrix_dumps_round_trip(g in digraph(10)) {
        let l = g.laplacian();
        prop_assert_eq!(matrix_from_csv(&matrix_to_csv(&l)).unwrap(), l.clone());
        let pattern = support(&l, 0.0);
        prop_assert_eq!(pattern_from_pbm(&pattern_to_pbm(&pattern)).unwrap(), pattern);
    }
}

#[test]
fn generators_are_deterministic_per_seed() {
    let p = RandomParams { n: 15, directed: true, seed: 42, ..Default::default() };
    assert_eq!(generators::random(&p).unwrap(), generators::random(&p).unwrap());
    let q = RandomParams { seed: 43, ..p.clone() };
    assert_ne!(generators::random(&p).unwrap(), generators::random(&q).unwrap());
    let t = TwoClusterParams { seed: 7, ..Default::default() };
    assert_eq!(to_json(&generators::two_cluster(&t).unwrap()), to_json(&generators::two_cluster(&t).unwrap()));
}

#[test]
fn complete_graph_has_all_ordered_pairs() {
    assert_eq!(generators::complete(5, 1.0).unwrap().edge_count(), 20);
    assert_eq!(generators::path(4, 1.0).unwrap().edge_count(), 6);
}
