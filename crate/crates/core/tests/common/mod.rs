#![allow(dead_code)]

use polarosc::graph::WeightedDigraph;
use proptest::prelude::*;

/// Symmetric graph on `n` nodes from a per-pair weight list (0 = no link).
pub fn symmetric_from(n: usize, weights: &[f64]) -> WeightedDigraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let w = weights[k];
            k += 1;
            if w > 0.0 {
                edges.push((i, j, w));
                edges.push((j, i, w));
            }
        }
    }
    WeightedDigraph::new(n, edges).unwrap()
}

/// Symmetric graphs with small integer weights, isolated nodes allowed.
pub fn integer_graph(max_n: usize) -> impl Strategy<Value = WeightedDigraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(prop_oneof![2 => Just(0.0), 1 => Just(1.0), 1 => Just(2.0), 1 => Just(3.0)], pairs)
            .prop_map(move |w| symmetric_from(n, &w))
    })
}

/// Symmetric graphs with real weights in `[0.1, 2]` and a spanning path, so
/// every node has positive degree.
pub fn connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = WeightedDigraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(prop_oneof![1 => Just(0.0), 1 => 0.1f64..2.0], pairs).prop_map(move |mut w| {
            // pair (i, i+1) sits at index i*(2n−i−1)/2
            for i in 0..n - 1 {
                let idx = i * (2 * n - i - 1) / 2;
                if w[idx] == 0.0 {
                    w[idx] = 1.0;
                }
            }
            symmetric_from(n, &w)
        })
    })
}

/// Arbitrary digraphs with positive weights, possibly asymmetric.
pub fn digraph(max_n: usize) -> impl Strategy<Value = WeightedDigraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![1 => Just(0.0), 1 => 0.1f64..3.0], n * n).prop_map(move |w| {
            let edges = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| (i, j, w[i * n + j]))
                .filter(|e| e.2 > 0.0);
            WeightedDigraph::new(n, edges).unwrap()
        })
    })
}
