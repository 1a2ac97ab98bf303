//! Deterministic graph generators. All randomized generators take an explicit
//! seed and use ChaCha8, so output is identical across runs and platforms.
//!
//! Undirected generators emit both link directions with equal weight.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{complete_graph, WeightedDigraph};
use crate::error::{Error, Result};

fn check_weight(w: f64, what: &str) -> Result<()> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{what} must be positive, got {w}")))
    }
}

fn undirected(n: usize, pairs: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<WeightedDigraph> {
    WeightedDigraph::new(n, pairs.into_iter().flat_map(|(i, j, w)| [(i, j, w), (j, i, w)]))
}

pub fn path(n: usize, w: f64) -> Result<WeightedDigraph> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("path needs n >= 2, got {n}")));
    }
    check_weight(w, "weight")?;
    undirected(n, (0..n - 1).map(|i| (i, i + 1, w)))
}

pub fn cycle(n: usize, w: f64) -> Result<WeightedDigraph> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("cycle needs n >= 3, got {n}")));
    }
    check_weight(w, "weight")?;
    undirected(n, (0..n).map(|i| (i, (i + 1) % n, w)))
}

pub fn complete(n: usize, w: f64) -> Result<WeightedDigraph> {
    complete_graph(n, w).map_err(|e| match e {
        Error::InvalidSize(msg) => Error::InvalidParams(msg),
        other => other,
    })
}

/// Hub is node 0.
pub fn star(n: usize, w: f64) -> Result<WeightedDigraph> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("star needs n >= 2, got {n}")));
    }
    check_weight(w, "weight")?;
    undirected(n, (1..n).map(|i| (0, i, w)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoClusterParams {
    pub sizes: (usize, usize),
    /// Weight of links inside a cluster.
    pub intra: f64,
    /// Weight of the links joining the clusters.
    pub bridge: f64,
    /// Number of distinct undirected bridge links.
    pub bridges: usize,
    /// Probability of each extra chord inside a cluster, on top of its ring.
    pub chord_prob: f64,
    pub seed: u64,
}

impl Default for TwoClusterParams {
    fn default() -> Self {
        Self {
            sizes: (6, 6),
            intra: 1.0,
            bridge: 0.1,
            bridges: 2,
            chord_prob: 0.2,
            seed: 0,
        }
    }
}

/// Two ring-based clusters with random chords, joined by weak bridges.
/// Nodes `0..sizes.0` form the first cluster.
pub fn two_cluster(p: &TwoClusterParams) -> Result<WeightedDigraph> {
    let (na, nb) = p.sizes;
    if na < 2 || nb < 2 {
        return Err(Error::InvalidParams(format!(
            "clusters need at least 2 nodes each, got {na},{nb}"
        )));
    }
    check_weight(p.intra, "intra weight")?;
    check_weight(p.bridge, "bridge weight")?;
    if p.bridges == 0 || p.bridges > na * nb {
        return Err(Error::InvalidParams(format!(
            "bridges must be in 1..={}, got {}",
            na * nb,
            p.bridges
        )));
    }
    if !(0.0..=1.0).contains(&p.chord_prob) {
        return Err(Error::InvalidParams(format!(
            "chord probability must be in [0, 1], got {}",
            p.chord_prob
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut pairs = Vec::new();
    for (offset, size) in [(0, na), (na, nb)] {
        for i in 0..size {
            for j in i + 1..size {
                let ring = j == i + 1 || (i == 0 && j == size - 1 && size > 2);
                if ring || rng.random_bool(p.chord_prob) {
                    pairs.push((offset + i, offset + j, p.intra));
                }
            }
        }
    }
    let mut candidates: Vec<(usize, usize)> =
        (0..na).flat_map(|i| (na..na + nb).map(move |j| (i, j))).collect();
    candidates.shuffle(&mut rng);
    pairs.extend(candidates[..p.bridges].iter().map(|&(i, j)| (i, j, p.bridge)));
    undirected(na + nb, pairs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    /// Independent probability of each (unordered, or ordered when directed) pair.
    pub edge_prob: f64,
    pub weight_range: (f64, f64),
    /// Add a random spanning path first so the graph is connected.
    pub connected: bool,
    pub directed: bool,
    pub seed: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            n: 10,
            edge_prob: 0.3,
            weight_range: (0.1, 1.0),
            connected: true,
            directed: false,
            seed: 0,
        }
    }
}

pub fn random(p: &RandomParams) -> Result<WeightedDigraph> {
    let n = p.n;
    if n == 0 {
        return Err(Error::InvalidParams("random graph needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p.edge_prob) {
        return Err(Error::InvalidParams(format!(
            "edge probability must be in [0, 1], got {}",
            p.edge_prob
        )));
    }
    let (lo, hi) = p.weight_range;
    check_weight(lo, "minimum weight")?;
    if !(hi.is_finite() && hi >= lo) {
        return Err(Error::InvalidParams(format!("bad weight range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let weight = |rng: &mut ChaCha8Rng| if hi > lo { rng.random_range(lo..hi) } else { lo };

    let mut linked = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    if p.connected {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for w in order.windows(2) {
            let (i, j) = (w[0], w[1]);
            let wt = weight(&mut rng);
            linked[i][j] = true;
            linked[j][i] = true;
            edges.push((i, j, wt));
            // directed graphs still get a strongly connected backbone
            edges.push((j, i, if p.directed { weight(&mut rng) } else { wt }));
        }
    }
    for i in 0..n {
        let start = if p.directed { 0 } else { i + 1 };
        for j in start..n {
            if i == j || linked[i][j] || !rng.random_bool(p.edge_prob) {
                continue;
            }
            let wt = weight(&mut rng);
            linked[i][j] = true;
            edges.push((i, j, wt));
            if !p.directed {
                linked[j][i] = true;
                edges.push((j, i, wt));
            }
        }
    }
    WeightedDigraph::new(n, edges)
}
