use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::fermionic::check_sizes;
use super::state::{project, DoubledState};
use super::{SolverKind, TimeGrid, TrajectoryMeta, TrajectoryRecord};
use crate::error::Result;
use crate::spectral::SpectralDecomposition;

/// Which square-root branch: `+i ẋ⁺ = √L x⁺` or `−i ẋ⁻ = √L x⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// Sign `s` in `x(t) = P exp(−s·iΩt) P⁻¹ x(0)`.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

fn evolve(p: &DMatrix<Complex64>, modal: &DVector<Complex64>, omega: &DVector<f64>, phase: f64) -> DVector<Complex64> {
    let rotated = DVector::from_fn(modal.len(), |k, _| {
        modal[k] * Complex64::from_polar(1.0, -phase * omega[k])
    });
    p * rotated
}

/// `x±(t) = P exp(∓iΩt) P⁻¹ x±(0)`, stored as doubled states.
pub fn solve_bosonic(
    dec: &SpectralDecomposition,
    x_plus0: &DVector<Complex64>,
    x_minus0: &DVector<Complex64>,
    grid: &TimeGrid,
) -> Result<TrajectoryRecord> {
    grid.validate()?;
    let x0 = DoubledState::from_branches(x_plus0, x_minus0)?;
    check_sizes(dec, dec.n(), x0.node_count())?;
    let p = dec.p.map(Complex64::from);
    let p_inv = dec.p_inv.map(Complex64::from);
    let modal_plus = &p_inv * x_plus0;
    let modal_minus = &p_inv * x_minus0;

    let times = grid.times();
    let mut states = Vec::with_capacity(times.len());
    for &t in &times {
        let plus = evolve(&p, &modal_plus, &dec.omega, t);
        let minus = evolve(&p, &modal_minus, &dec.omega, -t);
        states.push(DoubledState::from_branches(&plus, &minus)?.0);
    }
    let projected = states.iter().map(project).collect();
    Ok(TrajectoryRecord {
        times,
        states,
        projected,
        velocities: None,
        meta: TrajectoryMeta {
            solver: SolverKind::Bosonic,
            graph_hash: None,
            dt: grid.dt,
            tolerances: BTreeMap::from([
                ("zero_tol".to_string(), dec.zero_tol),
                ("reconstruction_error".to_string(), dec.reconstruction_error),
            ]),
        },
    })
}

/// One branch of a bosonic (or any doubled-state) trajectory.
pub fn branch_states(rec: &TrajectoryRecord, branch: Branch) -> Vec<DVector<Complex64>> {
    let offset = match branch {
        Branch::Plus => 0,
        Branch::Minus => 1,
    };
    rec.states
        .iter()
        .map(|x| DVector::from_fn(x.len() / 2, |i, _| x[2 * i + offset]))
        .collect()
}

/// Doubled-form propagator
/// `P e^{−iΩt} P⁻¹ ⊗ diag(1,0) + P e^{+iΩt} P⁻¹ ⊗ diag(0,1)`.
pub fn bosonic_propagator(dec: &SpectralDecomposition, t: f64) -> DMatrix<Complex64> {
    let n = dec.n();
    let p = dec.p.map(Complex64::from);
    let p_inv = dec.p_inv.map(Complex64::from);
    let branch = |sign: f64| {
        let phases = DMatrix::from_diagonal(&dec.omega.map(|w| Complex64::from_polar(1.0, -sign * w * t)));
        &p * phases * &p_inv
    };
    let (forward, backward) = (branch(1.0), branch(-1.0));
    DMatrix::from_fn(2 * n, 2 * n, |i, j| match (i % 2, j % 2) {
        (0, 0) => forward[(i / 2, j / 2)],
        (1, 1) => backward[(i / 2, j / 2)],
        _ => Complex64::new(0.0, 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, WeightedDigraph};
    use crate::spectral::{decompose, SpectralConfig};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn pair_dec() -> SpectralDecomposition {
        let g = WeightedDigraph::new(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        decompose(&g.laplacian(), &SpectralConfig::default()).unwrap()
    }

    #[test]
    fn initial_sample_is_unchanged() {
        let dec = pair_dec();
        let plus = DVector::from_vec(vec![c(0.3), Complex64::new(1.0, 2.0)]);
        let minus = DVector::from_vec(vec![c(-1.0), c(4.0)]);
        let rec = solve_bosonic(&dec, &plus, &minus, &TimeGrid::new(0.5, 2).unwrap()).unwrap();
        assert!((&branch_states(&rec, Branch::Plus)[0] - &plus).camax() < 1e-14);
        assert!((&branch_states(&rec, Branch::Minus)[0] - &minus).camax() < 1e-14);
    }

    #[test]
    fn uniform_vector_is_stationary() {
        let dec = decompose(&complete_graph(4, 1.0).unwrap().laplacian(), &SpectralConfig::default()).unwrap();
        let ones = DVector::from_element(4, c(1.0));
        let rec = solve_bosonic(&dec, &ones, &ones, &TimeGrid::new(0.7, 10).unwrap()).unwrap();
        for x in branch_states(&rec, Branch::Plus) {
            assert!((x - &ones).camax() < 1e-13);
        }
    }

    #[test]
    fn antisymmetric_pair_mode_rotates() {
        let dec = pair_dec();
        let x0 = DVector::from_vec(vec![c(1.0), c(-1.0)]);
        let grid = TimeGrid::new(0.25, 8).unwrap();
        let rec = solve_bosonic(&dec, &x0, &x0, &grid).unwrap();
        let plus = branch_states(&rec, Branch::Plus);
        let minus = branch_states(&rec, Branch::Minus);
        for (k, t) in grid.times().into_iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -2f64.sqrt() * t);
            assert!((&plus[k] - &x0 * phase).camax() < 1e-13);
            assert!((&minus[k] - &x0 * phase.conj()).camax() < 1e-13);
        }
    }

    #[test]
    fn doubled_propagator_reproduces_branches() {
        let g = WeightedDigraph::new(3, [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 0.5), (2, 1, 0.5)]).unwrap();
        let dec = decompose(&g.laplacian(), &SpectralConfig::default()).unwrap();
        let plus = DVector::from_vec(vec![c(1.0), c(0.0), Complex64::new(0.0, -1.0)]);
        let minus = DVector::from_vec(vec![c(0.5), c(2.0), c(-1.0)]);
        let grid = TimeGrid::new(0.4, 5).unwrap();
        let rec = solve_bosonic(&dec, &plus, &minus, &grid).unwrap();
        let x0 = DoubledState::from_branches(&plus, &minus).unwrap();
        for (k, t) in grid.times().into_iter().enumerate() {
            let x = bosonic_propagator(&dec, t) * &x0.0;
            assert!((x - &rec.states[k]).camax() < 1e-13);
        }
    }
}
