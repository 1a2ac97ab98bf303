//! Symmetry breaking on graphs: the quartic potential, zero modes that
//! appear when a network splits, the admissibility test for square-root
//! dynamics, and a spring-chain picture of shifted equilibria.

mod potential;
mod scenario;
mod spring;

pub use potential::{ground_state, mode_amplitudes, potential, ModeAmplitude, Phase, PotentialParams};
pub use scenario::{
    run_polarization_scenario, GraphSource, PolarizationReport, PotentialSummary, ScenarioConfig,
    ScenarioOptions, ScenarioOutcome, SpringDemo,
};
pub use spring::{spring_equilibrium, SpringChain, SpringEquilibrium};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{laplacian_bundle, weakly_connected_components, WeightedDigraph};
use crate::spectral::{decompose, sqrt_laplacian, SpectralConfig, SpectralDecomposition};

/// Whether `x±` dynamics driven by `√L` respect the graph: true iff `√L`
/// has no nonzero where `L` has an off-diagonal zero.
pub fn bosonic_existence(g: &WeightedDigraph, cfg: &SpectralConfig) -> Result<bool> {
    let parts = weakly_connected_components(g).len();
    if parts != 1 {
        return Err(Error::NotConnected(parts));
    }
    let bundle = laplacian_bundle(g)?;
    let dec = decompose(&bundle.laplacian, cfg)?;
    Ok(!sqrt_laplacian(&dec).pattern_dense)
}

/// Unit-norm eigenvectors whose eigenvalue satisfies `|λ| ≤ zero_tol`.
pub fn ng_mode_extract(dec: &SpectralDecomposition, zero_tol: f64) -> Vec<DVector<f64>> {
    (0..dec.n())
        .filter(|&k| dec.lambda[k].abs() <= zero_tol)
        .map(|k| dec.p.column(k).normalize())
        .collect()
}

/// Length of the projection of the normalized indicator of each node set
/// onto the span of `modes`. A value of 1 means the indicator lies in the
/// kernel; the measure ignores how the kernel basis happens to be rotated.
pub fn kernel_alignment(modes: &[DVector<f64>], groups: &[Vec<usize>], n: usize) -> Vec<f64> {
    if modes.is_empty() {
        return vec![0.0; groups.len()];
    }
    let basis = DMatrix::from_columns(modes);
    let q = basis.qr().q();
    groups
        .iter()
        .map(|nodes| {
            let mut e = DVector::zeros(n);
            for &i in nodes {
                e[i] = 1.0 / (nodes.len() as f64).sqrt();
            }
            (q.transpose() * e).norm()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, generators};

    fn cfg() -> SpectralConfig {
        SpectralConfig::default()
    }

    #[test]
    fn existence_examples() {
        for n in 3..=8 {
            assert!(bosonic_existence(&complete_graph(n, 1.0).unwrap(), &cfg()).unwrap());
        }
        assert!(!bosonic_existence(&generators::path(4, 1.0).unwrap(), &cfg()).unwrap());
        assert!(bosonic_existence(&generators::path(2, 1.0).unwrap(), &cfg()).unwrap());
        let split = WeightedDigraph::new(4, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)]).unwrap();
        assert!(matches!(bosonic_existence(&split, &cfg()), Err(Error::NotConnected(2))));
    }

    #[test]
    fn zero_modes_of_k5_and_two_triangles() {
        let dec = decompose(&complete_graph(5, 1.0).unwrap().laplacian(), &cfg()).unwrap();
        let modes = ng_mode_extract(&dec, dec.zero_tol);
        assert_eq!(modes.len(), 1);
        let uniform = 1.0 / 5f64.sqrt();
        assert!(modes[0].iter().all(|v| (v.abs() - uniform).abs() < 1e-12));

        let mut edges = Vec::new();
        for base in [0, 3] {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        edges.push((base + i, base + j, 1.0));
                    }
                }
            }
        }
        let g = WeightedDigraph::new(6, edges).unwrap();
        let dec = decompose(&g.laplacian(), &cfg()).unwrap();
        let modes = ng_mode_extract(&dec, dec.zero_tol);
        assert_eq!(modes.len(), 2);
        let align = kernel_alignment(&modes, &[vec![0, 1, 2], vec![3, 4, 5]], 6);
        assert!(align.iter().all(|a| *a >= 1.0 - 1e-8), "{align:?}");
        let off = kernel_alignment(&modes, &[vec![0, 3]], 6);
        assert!(off[0] < 1.0 - 1e-3);
    }

    #[test]
    fn edgeless_graph_is_all_kernel() {
        let dec = decompose(&WeightedDigraph::edgeless(3).unwrap().laplacian(), &cfg()).unwrap();
        assert_eq!(ng_mode_extract(&dec, dec.zero_tol).len(), 3);
    }
}
