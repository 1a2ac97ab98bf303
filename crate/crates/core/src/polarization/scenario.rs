use std::path::{Path, PathBuf};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::potential::{ground_state, Phase, PotentialParams};
use super::spring::{spring_equilibrium, SpringChain};
use super::{bosonic_existence, kernel_alignment, ng_mode_extract};
use crate::dynamics::{solve_fermionic, DoubledState, InitialCondition, TimeGrid, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::graph::io::{graph_hash, read_graph, GraphFile};
use crate::graph::{fragment, laplacian_bundle, weakly_connected_components, WeightedDigraph};
use crate::hamiltonian::build_hamiltonian;
use crate::spectral::{decompose, sqrt_laplacian, SpectralConfig, SpectralDecomposition};

/// Where a scenario's graph comes from: `{"path": "g.json"}` or
/// `{"inline": {"n": .., "edges": [..]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphSource {
    Path(PathBuf),
    Inline(GraphFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpringDemo {
    pub chain: SpringChain,
    /// Link to cut; the middle link when absent.
    #[serde(default)]
    pub cut_after: Option<usize>,
}

impl SpringDemo {
    fn cut(&self) -> usize {
        self.cut_after.unwrap_or((self.chain.n.saturating_sub(2)) / 2)
    }
}

fn default_clique_weight() -> f64 {
    1.0
}

/// A polarization scenario as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub graph: GraphSource,
    pub threshold: f64,
    #[serde(default = "default_clique_weight")]
    pub clique_weight: f64,
    #[serde(default)]
    pub potential: Option<PotentialParams>,
    pub time: TimeGrid,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub initial: InitialCondition,
    #[serde(default)]
    pub tolerances: SpectralConfig,
    #[serde(default)]
    pub spring: Option<SpringDemo>,
}

impl ScenarioConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("scenario config: {e}")))
    }

    /// Resolves the graph; relative paths are taken from `base`.
    pub fn load_graph(&self, base: &Path) -> Result<WeightedDigraph> {
        match &self.graph {
            GraphSource::Inline(f) => WeightedDigraph::try_from(f.clone()),
            GraphSource::Path(p) if p.is_absolute() => read_graph(p),
            GraphSource::Path(p) => read_graph(&base.join(p)),
        }
    }

    pub fn options(&self) -> ScenarioOptions {
        ScenarioOptions {
            threshold: self.threshold,
            clique_weight: self.clique_weight,
            spectral: self.tolerances,
            potential: self.potential,
            spring: self.spring.clone(),
        }
    }

    pub fn initial_state(&self, n: usize) -> Result<DoubledState> {
        self.initial.build(n, self.seed)
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioOptions {
    pub threshold: f64,
    pub clique_weight: f64,
    pub spectral: SpectralConfig,
    pub potential: Option<PotentialParams>,
    pub spring: Option<SpringDemo>,
}

impl ScenarioOptions {
    pub fn new(threshold: f64, clique_weight: f64) -> Self {
        Self {
            threshold,
            clique_weight,
            spectral: SpectralConfig::default(),
            potential: None,
            spring: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSummary {
    pub params: PotentialParams,
    pub phase: Phase,
    pub ground_state: f64,
}

/// One post-split component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub nodes: Vec<usize>,
    /// Singletons carry no dynamics and are skipped.
    pub skipped: bool,
    /// `None` for skipped components.
    pub bosonic_existence: Option<bool>,
    pub frequencies: Vec<f64>,
    /// Zero-mode eigenvectors of the component Laplacian, written on all
    /// `n` nodes (zero outside the component).
    pub zero_modes: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizationReport {
    pub pre_graph: GraphFile,
    pub post_graph: GraphFile,
    pub pre_graph_hash: String,
    pub post_graph_hash: String,
    pub threshold: f64,
    pub clique_weight: f64,
    pub components: Vec<Vec<usize>>,
    pub cut_edges: Vec<(usize, usize, f64)>,
    pub zero_modes_pre: usize,
    pub zero_modes_post: usize,
    /// Unit zero modes of the whole post-split Laplacian.
    pub ng_modes: Vec<Vec<f64>>,
    /// Projection length of each component's normalized indicator onto the
    /// post-split kernel.
    pub ng_alignment: Vec<f64>,
    pub sqrt_pattern_pre: bool,
    pub sqrt_pattern_post: Vec<Option<bool>>,
    pub frequencies_pre: Vec<f64>,
    pub post_components: Vec<ComponentReport>,
    pub potential: Option<PotentialSummary>,
    /// Mean displacement of each spring segment after the cut.
    pub equilibrium_shift: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub report: PolarizationReport,
    pub pre_trajectory: TrajectoryRecord,
    /// One entry per component, `None` for skipped singletons.
    pub post_trajectories: Vec<Option<TrajectoryRecord>>,
}

/// Flips the sign so the entry of largest modulus (first on ties) is positive.
fn canonical_sign(v: DVector<f64>) -> DVector<f64> {
    let lead = v.iter().fold(0.0_f64, |best, &x| if x.abs() > best.abs() { x } else { best });
    if lead < 0.0 {
        -v
    } else {
        v
    }
}

fn restrict(x: &DoubledState, nodes: &[usize]) -> DoubledState {
    DoubledState(DVector::from_fn(2 * nodes.len(), |k, _| x.0[2 * nodes[k / 2] + k % 2]))
}

fn lift(v: &DVector<f64>, nodes: &[usize], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for (k, &i) in nodes.iter().enumerate() {
        out[i] = v[k];
    }
    out
}

fn fermionic_run(
    g: &WeightedDigraph,
    cfg: &SpectralConfig,
    x0: &DoubledState,
    grid: &TimeGrid,
) -> Result<(SpectralDecomposition, TrajectoryRecord)> {
    let bundle = laplacian_bundle(g)?;
    let dec = decompose(&bundle.laplacian, cfg)?;
    let ham = build_hamiltonian(&bundle)?;
    let rec = solve_fermionic(&ham, &dec, x0, grid)?.with_graph_hash(graph_hash(g));
    Ok((dec, rec))
}

fn component_run(
    post: &WeightedDigraph,
    nodes: &[usize],
    opts: &ScenarioOptions,
    x0: &DoubledState,
    grid: &TimeGrid,
) -> Result<(ComponentReport, TrajectoryRecord)> {
    let sub = post.induced_subgraph(nodes)?;
    let (dec, rec) = fermionic_run(&sub, &opts.spectral, &restrict(x0, nodes), grid)?;
    let existence = bosonic_existence(&sub, &opts.spectral)?;
    let zero_modes = ng_mode_extract(&dec, dec.zero_tol)
        .into_iter()
        .map(|v| lift(&canonical_sign(v), nodes, post.n()))
        .collect();
    let report = ComponentReport {
        nodes: nodes.to_vec(),
        skipped: false,
        bosonic_existence: Some(existence),
        frequencies: dec.omega.iter().copied().collect(),
        zero_modes,
    };
    Ok((report, rec))
}

/// Solves the dynamics on `g`, cuts links below the threshold, completes
/// every surviving component into a clique and solves again per component.
///
/// `g` must be weakly connected. Errors carry the name of the stage that
/// failed.
pub fn run_polarization_scenario(
    g: &WeightedDigraph,
    opts: &ScenarioOptions,
    x0: &DoubledState,
    grid: &TimeGrid,
) -> Result<ScenarioOutcome> {
    let n = g.n();
    let parts = weakly_connected_components(g).len();
    if parts != 1 {
        return Err(Error::NotConnected(parts).at_stage("pre-split"));
    }
    if x0.node_count() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("initial state on {n} nodes"),
            got: x0.node_count().to_string(),
        }
        .at_stage("pre-split"));
    }
    let (dec_pre, pre_trajectory) =
        fermionic_run(g, &opts.spectral, x0, grid).map_err(|e| e.at_stage("pre-split"))?;

    let frag = fragment(g, opts.threshold, opts.clique_weight).map_err(|e| e.at_stage("fragmentation"))?;
    let post = &frag.completed_graph;
    let dec_post = decompose(&post.laplacian(), &opts.spectral).map_err(|e| e.at_stage("post-split spectrum"))?;
    let kernel = ng_mode_extract(&dec_post, dec_post.zero_tol);
    let ng_alignment = kernel_alignment(&kernel, &frag.components, n);

    let mut post_components = Vec::with_capacity(frag.components.len());
    let mut post_trajectories = Vec::with_capacity(frag.components.len());
    for (k, nodes) in frag.components.iter().enumerate() {
        if nodes.len() == 1 {
            let mut unit = vec![0.0; n];
            unit[nodes[0]] = 1.0;
            post_components.push(ComponentReport {
                nodes: nodes.clone(),
                skipped: true,
                bosonic_existence: None,
                frequencies: vec![0.0],
                zero_modes: vec![unit],
            });
            post_trajectories.push(None);
            continue;
        }
        let (report, rec) =
            component_run(post, nodes, opts, x0, grid).map_err(|e| e.at_stage(format!("post-split component {k}")))?;
        post_components.push(report);
        post_trajectories.push(Some(rec));
    }

    let potential = opts
        .potential
        .map(|params| {
            Ok::<_, Error>(PotentialSummary {
                params,
                phase: params.phase(),
                ground_state: ground_state(&params)?,
            })
        })
        .transpose()
        .map_err(|e| e.at_stage("potential"))?;

    let equilibrium_shift = opts
        .spring
        .as_ref()
        .map(|demo| spring_equilibrium(&demo.chain, Some(demo.cut())).map(|eq| eq.mean_shift))
        .transpose()
        .map_err(|e| e.at_stage("spring demo"))?;

    let report = PolarizationReport {
        pre_graph: GraphFile::from(g),
        post_graph: GraphFile::from(post),
        pre_graph_hash: graph_hash(g),
        post_graph_hash: graph_hash(post),
        threshold: opts.threshold,
        clique_weight: opts.clique_weight,
        components: frag.components.clone(),
        cut_edges: frag.cut_edges.iter().map(|e| (e.source, e.target, e.weight)).collect(),
        zero_modes_pre: dec_pre.zero_mode_count(),
        zero_modes_post: dec_post.zero_mode_count(),
        ng_modes: kernel.into_iter().map(|v| canonical_sign(v).iter().copied().collect()).collect(),
        ng_alignment,
        sqrt_pattern_pre: !sqrt_laplacian(&dec_pre).pattern_dense,
        sqrt_pattern_post: post_components.iter().map(|c| c.bosonic_existence).collect(),
        frequencies_pre: dec_pre.omega.iter().copied().collect(),
        post_components,
        potential,
        equilibrium_shift,
    };
    Ok(ScenarioOutcome {
        report,
        pre_trajectory,
        post_trajectories,
    })
}
