use std::path::PathBuf;

use clap::Args;
use polarosc::graph::io::graph_hash;
use polarosc::graph::{laplacian_bundle, weakly_connected_components};
use polarosc::hamiltonian::{build_hamiltonian, GeneratorAlgebra};
use polarosc::spectral::{decompose, sqrt_laplacian};
use polarosc::Result;
use serde::Serialize;

use crate::Tolerances;

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    graph: PathBuf,
    #[command(flatten)]
    tolerances: Tolerances,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct AlgebraCheck {
    identity: &'static str,
    holds: bool,
}

#[derive(Serialize)]
struct HamiltonianCheck {
    /// Nonzero 2×2 blocks of `Ĥ` sit exactly on the links and the diagonal.
    block_pattern_matches: bool,
    /// `Ĥ²` introduces no block outside the pattern of `L` plus the diagonal.
    square_pattern_contained: bool,
    construction_gap: f64,
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    edges: usize,
    symmetric: bool,
    graph_hash: String,
    components: usize,
    eigenvalues: Vec<f64>,
    frequencies: Vec<f64>,
    zero_modes: usize,
    orthogonal_eigenbasis: bool,
    condition: f64,
    reconstruction_error: f64,
    /// `√L` links no pair of nodes that `L` leaves unlinked.
    sqrt_pattern: bool,
    hamiltonian: HamiltonianCheck,
    algebra: Vec<AlgebraCheck>,
}

pub fn run(args: &AnalyzeArgs) -> Result<()> {
    let g = super::load_graph(&args.graph)?;
    let bundle = laplacian_bundle(&g)?;
    let dec = decompose(&bundle.laplacian, &args.tolerances.config())?;
    let ham = build_hamiltonian(&bundle)?;
    let analysis = Analysis {
        n: g.n(),
        edges: g.edge_count(),
        symmetric: g.is_symmetric(),
        graph_hash: graph_hash(&g),
        components: weakly_connected_components(&g).len(),
        eigenvalues: dec.lambda.iter().copied().collect(),
        frequencies: dec.omega.iter().copied().collect(),
        zero_modes: dec.zero_mode_count(),
        orthogonal_eigenbasis: dec.orthogonal,
        condition: dec.condition,
        reconstruction_error: dec.reconstruction_error,
        sqrt_pattern: !sqrt_laplacian(&dec).pattern_dense,
        hamiltonian: HamiltonianCheck {
            block_pattern_matches: ham.pattern_matches_laplacian(),
            square_pattern_contained: ham.square_pattern_contained(),
            construction_gap: ham.construction_gap,
        },
        algebra: GeneratorAlgebra::default()
            .identities()
            .into_iter()
            .map(|c| AlgebraCheck {
                identity: c.name,
                holds: c.holds,
            })
            .collect(),
    };
    crate::emit(args.output.as_deref(), &crate::to_json_line(&analysis))
}
