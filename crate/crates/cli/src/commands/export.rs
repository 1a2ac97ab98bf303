use std::path::PathBuf;

use clap::{Args, ValueEnum};
use polarosc::export::{matrix_to_csv, pattern_to_pbm};
use polarosc::graph::laplacian_bundle;
use polarosc::hamiltonian::build_hamiltonian;
use polarosc::spectral::{decompose, sqrt_laplacian, support};
use polarosc::Result;

use crate::Tolerances;

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Item {
    /// `A`, CSV.
    Adjacency,
    /// `D`, CSV.
    Degree,
    /// `L = D − A`, CSV.
    Laplacian,
    /// `√D⁻¹ L`, CSV.
    SemiNormalized,
    /// `√D⁻¹ L √D⁻¹`, CSV.
    Normalized,
    /// `√L`, CSV.
    SqrtLaplacian,
    /// `Ĥ` (2n×2n), CSV.
    Hamiltonian,
    /// Nonzero 2×2 blocks of `Ĥ`, PBM.
    HamiltonianPattern,
    /// Support of `L`, PBM.
    LaplacianPattern,
    /// Support of `√L`, PBM.
    SqrtPattern,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    graph: PathBuf,
    #[arg(value_enum)]
    item: Item,
    #[command(flatten)]
    tolerances: Tolerances,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn run(args: &ExportArgs) -> Result<()> {
    let g = super::load_graph(&args.graph)?;
    let text = match args.item {
        Item::Adjacency => matrix_to_csv(&g.adjacency()),
        Item::Laplacian => matrix_to_csv(&g.laplacian()),
        Item::LaplacianPattern => pattern_to_pbm(&support(&g.laplacian(), 0.0)),
        Item::Degree | Item::SemiNormalized | Item::Normalized | Item::Hamiltonian | Item::HamiltonianPattern => {
            let bundle = laplacian_bundle(&g)?;
            match args.item {
                Item::Degree => matrix_to_csv(&bundle.degree_matrix()),
                Item::SemiNormalized => matrix_to_csv(&bundle.semi_normalized),
                Item::Normalized => matrix_to_csv(&bundle.normalized),
                Item::Hamiltonian => matrix_to_csv(&build_hamiltonian(&bundle)?.matrix),
                _ => pattern_to_pbm(&build_hamiltonian(&bundle)?.block_pattern),
            }
        }
        Item::SqrtLaplacian | Item::SqrtPattern => {
            let dec = decompose(&g.laplacian(), &args.tolerances.config())?;
            let root = sqrt_laplacian(&dec).matrix;
            match args.item {
                Item::SqrtLaplacian => matrix_to_csv(&root),
                _ => pattern_to_pbm(&support(&root, dec.pattern_tol)),
            }
        }
    };
    crate::emit(args.output.as_deref(), &text)
}
