use super::{Edge, WeightedDigraph};
use crate::error::{Error, Result};

/// Outcome of cutting weak links and completing what is left into cliques.
#[derive(Debug, Clone)]
pub struct FragmentationResult {
    /// Weakly connected components of the cut graph, each sorted, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Links removed because their weight fell below the threshold.
    pub cut_edges: Vec<Edge>,
    /// Disjoint union of complete digraphs, one per component.
    pub completed_graph: WeightedDigraph,
    pub clique_weight: f64,
}

impl FragmentationResult {
    pub fn singletons(&self) -> impl Iterator<Item = usize> + '_ {
        self.components
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Components of the graph with edge directions ignored.
///
/// Each component is sorted ascending and components are ordered by their
/// smallest node, so the output is canonical.
pub fn weakly_connected_components(g: &WeightedDigraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut dsu = DisjointSet::new(n);
    for e in g.edges() {
        dsu.union(e.source, e.target);
    }
    let mut slot = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let root = dsu.find(v);
        if slot[root] == usize::MAX {
            slot[root] = components.len();
            components.push(Vec::new());
        }
        components[slot[root]].push(v);
    }
    components
}

/// Cuts every link with weight below `threshold`, then rewires each weakly
/// connected component of the remainder into a complete digraph whose links
/// all carry `clique_weight`. Singleton components stay isolated.
/// A zero threshold cuts nothing.
pub fn fragment(g: &WeightedDigraph, threshold: f64, clique_weight: f64) -> Result<FragmentationResult> {
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "fragmentation threshold must be non-negative, got {threshold}"
        )));
    }
    if !(clique_weight.is_finite() && clique_weight > 0.0) {
        return Err(Error::InvalidParams(format!(
            "clique weight must be positive, got {clique_weight}"
        )));
    }
    let (kept, cut_edges): (Vec<Edge>, Vec<Edge>) =
        g.edges().iter().partition(|e| e.weight >= threshold);
    let remainder = WeightedDigraph::new(
        g.n(),
        kept.iter().map(|e| (e.source, e.target, e.weight)),
    )?;
    let components = weakly_connected_components(&remainder);

    let clique_edges = components.iter().flat_map(|c| {
        c.iter().flat_map(move |&i| {
            c.iter()
                .filter(move |&&j| j != i)
                .map(move |&j| (i, j, clique_weight))
        })
    });
    let completed_graph = WeightedDigraph::new(g.n(), clique_edges)?;

    Ok(FragmentationResult {
        components,
        cut_edges,
        completed_graph,
        clique_weight,
    })
}
