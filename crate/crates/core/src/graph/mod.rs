//! Weighted directed graphs and the matrices derived from them.
//!
//! For a digraph with link weights `w_ij` on `(i -> j)`:
//!
//! ```text
//! A_ij = w_ij                 adjacency
//! d_i  = sum_j w_ij           weighted out-degree
//! L    = D - A                Laplacian
//! H    = sqrt(D^-1) L         semi-normalized Laplacian
//! N    = sqrt(D^-1) L sqrt(D^-1)
//! ```
//!
//! `H` and `N` need every out-degree to be positive. Graphs with isolated
//! nodes still have a Laplacian; only [`LaplacianBundle`] refuses them.

mod components;
pub mod generators;
pub mod io;

pub use components::{fragment, weakly_connected_components, FragmentationResult};

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// A weighted digraph without self-loops or parallel edges.
///
/// Edges are kept sorted by `(source, target)` and all weights are strictly
/// positive, so two graphs built from the same edge set compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedDigraph {
    /// Validates and canonicalizes an edge list. Zero-weight edges are dropped.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("graph needs at least one node".into()));
        }
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for (source, target, weight) in edges {
            for index in [source, target] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if source == target {
                return Err(Error::SelfLoop(source));
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(Error::InvalidWeight {
                    source_node: source,
                    target,
                    weight,
                });
            }
            if !seen.insert((source, target)) {
                return Err(Error::DuplicateEdge {
                    source_node: source,
                    target,
                });
            }
            if weight > 0.0 {
                kept.push(Edge {
                    source,
                    target,
                    weight,
                });
            }
        }
        kept.sort_by_key(|e| (e.source, e.target));
        Ok(Self { n, edges: kept })
    }

    /// `n` nodes and no links.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, source: usize, target: usize) -> Option<f64> {
        self.edges
            .binary_search_by_key(&(source, target), |e| (e.source, e.target))
            .ok()
            .map(|k| self.edges[k].weight)
    }

    /// True when every link has a reverse link of the same weight.
    pub fn is_symmetric(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.weight(e.target, e.source) == Some(e.weight))
    }

    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).fold(0.0, f64::max)
    }

    pub fn out_degrees(&self) -> DVector<f64> {
        let mut d = DVector::zeros(self.n);
        for e in &self.edges {
            d[e.source] += e.weight;
        }
        d
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.source, e.target)] = e.weight;
        }
        a
    }

    /// `L = D - A`. Defined for every graph, including ones with isolated nodes.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = -self.adjacency();
        for (i, d) in self.out_degrees().iter().enumerate() {
            l[(i, i)] = *d;
        }
        l
    }

    /// The subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Self> {
        let mut local = vec![usize::MAX; self.n];
        for (k, &v) in nodes.iter().enumerate() {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { index: v, n: self.n });
            }
            local[v] = k;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (s, t) = (local[e.source], local[e.target]);
            (s != usize::MAX && t != usize::MAX).then_some((s, t, e.weight))
        });
        Self::new(nodes.len(), edges)
    }
}

/// Complete digraph on `n` nodes, every ordered pair linked with weight `w`.
pub fn complete_graph(n: usize, w: f64) -> Result<WeightedDigraph> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::InvalidParams(format!(
            "complete graph weight must be positive, got {w}"
        )));
    }
    let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j, w)));
    WeightedDigraph::new(n, edges)
}

/// Every matrix of the oscillation model for one graph.
#[derive(Debug, Clone)]
pub struct LaplacianBundle {
    pub adjacency: DMatrix<f64>,
    pub degrees: DVector<f64>,
    pub laplacian: DMatrix<f64>,
    /// `H = sqrt(D^-1) L`.
    pub semi_normalized: DMatrix<f64>,
    /// `N = sqrt(D^-1) L sqrt(D^-1)`.
    pub normalized: DMatrix<f64>,
}

impl LaplacianBundle {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.degrees)
    }

    pub fn sqrt_degrees(&self) -> DVector<f64> {
        self.degrees.map(f64::sqrt)
    }

    pub fn inv_sqrt_degrees(&self) -> DVector<f64> {
        self.degrees.map(|d| 1.0 / d.sqrt())
    }

    pub fn sqrt_degree_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.sqrt_degrees())
    }

    pub fn inv_sqrt_degree_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.inv_sqrt_degrees())
    }
}

pub fn laplacian_bundle(g: &WeightedDigraph) -> Result<LaplacianBundle> {
    let degrees = g.out_degrees();
    if let Some(node) = degrees.iter().position(|&d| d <= 0.0) {
        return Err(Error::ZeroOutDegree(node));
    }
    let adjacency = g.adjacency();
    let laplacian = g.laplacian();
    let inv_sqrt = degrees.map(|d| 1.0 / d.sqrt());

    let mut semi_normalized = laplacian.clone();
    for (i, mut row) in semi_normalized.row_iter_mut().enumerate() {
        row *= inv_sqrt[i];
    }
    let mut normalized = semi_normalized.clone();
    for (j, mut col) in normalized.column_iter_mut().enumerate() {
        col *= inv_sqrt[j];
    }
    Ok(LaplacianBundle {
        adjacency,
        degrees,
        laplacian,
        semi_normalized,
        normalized,
    })
}
