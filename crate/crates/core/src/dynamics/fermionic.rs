use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::state::DoubledState;
use super::{SolverKind, TimeGrid, TrajectoryMeta, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::hamiltonian::{a_hat, b_hat, GeneratorAlgebra, Hamiltonian, Mat2};
use crate::spectral::SpectralDecomposition;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(super) fn check_sizes(dec: &SpectralDecomposition, n: usize, state_nodes: usize) -> Result<()> {
    if dec.n() != n || state_nodes != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n} nodes"),
            got: format!("decomposition of {} nodes, state of {state_nodes} nodes", dec.n()),
        });
    }
    Ok(())
}

/// Node-major `n×2` view of a doubled state: row `i` is node `i`'s pair.
fn pairs(x: &DVector<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(x.len() / 2, 2, |i, s| x[2 * i + s])
}

/// `(I ⊗ m) x̂` in pair form is `X mᵀ`.
fn apply_generator(x: &DMatrix<Complex64>, m: &Mat2) -> DMatrix<Complex64> {
    let mt = DMatrix::from_fn(2, 2, |r, c| Complex64::from(m[(c, r)]));
    x * mt
}

fn scale_rows(mut x: DMatrix<Complex64>, s: &DVector<f64>) -> DMatrix<Complex64> {
    for (i, mut row) in x.row_iter_mut().enumerate() {
        row *= Complex64::from(s[i]);
    }
    x
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(Complex64::from)
}

/// Modal coefficients of the four closed-form terms, fixed by `x̂(0)`.
struct Modal {
    p: DMatrix<Complex64>,
    inv_sqrt_d: DVector<f64>,
    omega: DVector<f64>,
    mho: DVector<f64>,
    // P⁻¹ √D X (âb̂)ᵀ, P⁻¹ X (b̂â)ᵀ, P⁻¹ X âᵀ, P⁻¹ √D X b̂ᵀ
    cos_outer: DMatrix<Complex64>,
    cos_inner: DMatrix<Complex64>,
    sin_outer: DMatrix<Complex64>,
    sin_inner: DMatrix<Complex64>,
}

impl Modal {
    fn new(ham: &Hamiltonian, dec: &SpectralDecomposition, x0: &DoubledState) -> Self {
        let alg = GeneratorAlgebra::default();
        let bundle = &ham.bundle;
        let sqrt_d = bundle.sqrt_degrees();
        let p_inv = complexify(&dec.p_inv);
        let x = pairs(x0.as_vector());
        Self {
            p: complexify(&dec.p),
            inv_sqrt_d: bundle.inv_sqrt_degrees(),
            omega: dec.omega.clone(),
            mho: dec.mho.clone(),
            cos_outer: &p_inv * scale_rows(apply_generator(&x, &alg.ab), &sqrt_d),
            cos_inner: &p_inv * apply_generator(&x, &alg.ba),
            sin_outer: &p_inv * apply_generator(&x, &a_hat()),
            sin_inner: &p_inv * scale_rows(apply_generator(&x, &b_hat()), &sqrt_d),
        }
    }

    fn at(&self, t: f64) -> DVector<Complex64> {
        let n = self.omega.len();
        let mut outer = DMatrix::zeros(n, 2);
        let mut inner = DMatrix::zeros(n, 2);
        for k in 0..n {
            let (s, c) = (self.omega[k] * t).sin_cos();
            for col in 0..2 {
                outer[(k, col)] = self.cos_outer[(k, col)] * c
                    - I * (self.omega[k] * s) * self.sin_outer[(k, col)];
                inner[(k, col)] = self.cos_inner[(k, col)] * c
                    - I * (self.mho[k] * s) * self.sin_inner[(k, col)];
            }
        }
        let y = scale_rows(&self.p * outer, &self.inv_sqrt_d) + &self.p * inner;
        DVector::from_fn(2 * n, |k, _| y[(k / 2, k % 2)])
    }
}

/// Evaluates the fermionic closed form at every grid time.
///
/// Each sample is computed directly from `x̂(0)`; nothing accumulates between samples.
pub fn solve_fermionic(
    ham: &Hamiltonian,
    dec: &SpectralDecomposition,
    x0: &DoubledState,
    grid: &TimeGrid,
) -> Result<TrajectoryRecord> {
    grid.validate()?;
    check_sizes(dec, ham.n(), x0.node_count())?;
    let modal = Modal::new(ham, dec, x0);
    let times = grid.times();
    let states: Vec<_> = times.iter().map(|&t| modal.at(t)).collect();
    let projected = states.iter().map(super::state::project).collect();
    Ok(TrajectoryRecord {
        times,
        states,
        projected,
        velocities: None,
        meta: TrajectoryMeta {
            solver: SolverKind::Fermionic,
            graph_hash: None,
            dt: grid.dt,
            tolerances: BTreeMap::from([
                ("zero_tol".to_string(), dec.zero_tol),
                ("reconstruction_error".to_string(), dec.reconstruction_error),
            ]),
        },
    })
}

fn complex_kron(re: &DMatrix<f64>, im: &DMatrix<f64>, m: &Mat2) -> DMatrix<Complex64> {
    let (r, c) = re.shape();
    DMatrix::from_fn(2 * r, 2 * c, |i, j| {
        Complex64::new(re[(i / 2, j / 2)], im[(i / 2, j / 2)]) * m[(i % 2, j % 2)]
    })
}

/// The full `2n×2n` closed-form propagator at time `t`.
pub fn fermionic_propagator(ham: &Hamiltonian, dec: &SpectralDecomposition, t: f64) -> Result<DMatrix<Complex64>> {
    check_sizes(dec, ham.n(), ham.n())?;
    let alg = GeneratorAlgebra::default();
    let n = ham.n();
    let zero = DMatrix::zeros(n, n);
    let bundle = &ham.bundle;
    let (sqrt_d, inv_sqrt_d) = (bundle.sqrt_degree_matrix(), bundle.inv_sqrt_degree_matrix());
    let cos = dec.synthesize(&dec.omega.map(|w| (w * t).cos()));
    let omega_sin = dec.synthesize(&dec.omega.map(|w| w * (w * t).sin()));
    let mho_sin = dec.synthesize(&dec.omega.zip_map(&dec.mho, |w, m| m * (w * t).sin()));

    let outer_cos = &inv_sqrt_d * &cos * &sqrt_d;
    let outer_sin = -(&inv_sqrt_d * omega_sin);
    let inner_sin = -(mho_sin * &sqrt_d);
    Ok(complex_kron(&outer_cos, &zero, &alg.ab)
        + complex_kron(&cos, &zero, &alg.ba)
        + complex_kron(&zero, &outer_sin, &alg.a_hat)
        + complex_kron(&zero, &inner_sin, &alg.b_hat))
}

/// Removes the component of `x̂(0)` that would give a zero mode nonzero
/// velocity, keeping the projection `x(0) = x⁺ + x⁻` unchanged.
///
/// The velocity matched to `x̂` is `−i √D (x⁺ − x⁻)`; this rewrites
/// the difference so that `Π₀ √D (x⁺ − x⁻) = 0`, with `Π₀ = P E₀ P⁻¹` the
/// kernel projector.
pub fn strip_zero_mode_velocity(
    ham: &Hamiltonian,
    dec: &SpectralDecomposition,
    x0: &DoubledState,
) -> Result<DoubledState> {
    check_sizes(dec, ham.n(), x0.node_count())?;
    let kernel = complexify(&dec.synthesize(&dec.lambda.map(|l| if l == 0.0 { 1.0 } else { 0.0 })));
    let sqrt_d = ham.bundle.sqrt_degrees();
    let inv_sqrt_d = ham.bundle.inv_sqrt_degrees();
    let (plus, minus) = (x0.plus(), x0.minus());
    let sum = &plus + &minus;
    let diff = plus - minus;
    let weighted = DVector::from_fn(diff.len(), |i, _| diff[i] * sqrt_d[i]);
    let drift = kernel * weighted;
    let cleaned = DVector::from_fn(diff.len(), |i, _| diff[i] - drift[i] * inv_sqrt_d[i]);
    let half = Complex64::from(0.5);
    DoubledState::from_branches(&((&sum + &cleaned) * half), &((&sum - &cleaned) * half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, laplacian_bundle, WeightedDigraph};
    use crate::hamiltonian::build_hamiltonian;
    use crate::spectral::{decompose, SpectralConfig};

    fn setup(g: &WeightedDigraph) -> (Hamiltonian, SpectralDecomposition) {
        let b = laplacian_bundle(g).unwrap();
        let dec = decompose(&b.laplacian, &SpectralConfig::default()).unwrap();
        (build_hamiltonian(&b).unwrap(), dec)
    }

    #[test]
    fn initial_sample_is_initial_state() {
        let (ham, dec) = setup(&complete_graph(4, 0.7).unwrap());
        let x0 = DoubledState(DVector::from_fn(8, |k, _| Complex64::new(k as f64 - 3.0, 0.5 * k as f64)));
        let rec = solve_fermionic(&ham, &dec, &x0, &TimeGrid::new(0.1, 3).unwrap()).unwrap();
        assert!((&rec.states[0] - &x0.0).camax() < 1e-12);
    }

    #[test]
    fn pair_returns_after_one_period() {
        let g = WeightedDigraph::new(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let (ham, dec) = setup(&g);
        let x0 = DoubledState::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let period = 2.0 * std::f64::consts::PI / 2f64.sqrt();
        let grid = TimeGrid::new(period, 1).unwrap();
        let rec = solve_fermionic(&ham, &dec, &x0, &grid).unwrap();
        assert!((&rec.projected[1] - &rec.projected[0]).camax() < 1e-12);
    }

    #[test]
    fn propagator_matches_vector_evaluation() {
        let g = WeightedDigraph::new(3, [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 2.0), (2, 1, 2.0)]).unwrap();
        let (ham, dec) = setup(&g);
        let x0 = DoubledState(DVector::from_fn(6, |k, _| Complex64::new((k as f64).sin(), (k as f64).cos())));
        let grid = TimeGrid::new(0.37, 4).unwrap();
        let rec = solve_fermionic(&ham, &dec, &x0, &grid).unwrap();
        for (k, t) in grid.times().into_iter().enumerate() {
            let u = fermionic_propagator(&ham, &dec, t).unwrap();
            assert!((u * &x0.0 - &rec.states[k]).camax() < 1e-12);
        }
    }

    #[test]
    fn stripping_keeps_projection_and_kills_zero_mode_velocity() {
        let g = WeightedDigraph::new(3, [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 2.0), (2, 1, 2.0)]).unwrap();
        let (ham, dec) = setup(&g);
        let x0 = DoubledState::from_real(&[1.0, 0.0, 0.5, -0.25, 0.0, 2.0]).unwrap();
        let clean = strip_zero_mode_velocity(&ham, &dec, &x0).unwrap();
        assert!((clean.project() - x0.project()).camax() < 1e-15);
        // the velocity projection onto the uniform zero mode vanishes
        let v = crate::dynamics::matched_wave_initial(&ham, &clean).unwrap().1;
        assert!(v.iter().sum::<Complex64>().norm() < 1e-12);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let (ham, dec) = setup(&complete_graph(3, 1.0).unwrap());
        let x0 = DoubledState::zeros(2);
        assert!(solve_fermionic(&ham, &dec, &x0, &TimeGrid::new(0.1, 1).unwrap()).is_err());
    }
}
