//! RK4 reference integrator for `ẍ = −L x`.
//!
//! Deliberately plain: row-major slices and hand-written loops, no use of the
//! spectral machinery, so agreement with the closed forms is meaningful.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::state::{project, DoubledState};
use super::{SolverKind, TimeGrid, TrajectoryMeta, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;

const STABILITY_FACTOR: f64 = 0.1;
const POWER_ITERATIONS: usize = 500;

struct RowMajor {
    n: usize,
    data: Vec<f64>,
}

impl RowMajor {
    fn from_matrix(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(m[(i, j)]);
            }
        }
        Self { n, data }
    }

    fn mul_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn mul_transpose_into(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (i, &xi) in x.iter().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Upper estimate of `max ω = max √λ` from power iteration on `LᵀL`.
///
/// `|λ| ≤ σ_max(L)`, so `√σ_max` bounds every frequency once the iteration
/// has converged.
pub fn estimate_max_frequency(l: &DMatrix<f64>) -> f64 {
    let m = RowMajor::from_matrix(l);
    let n = m.n;
    let mut v: Vec<f64> = (0..n)
        .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } * (1.0 + k as f64 / n as f64))
        .collect();
    let mut lv = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut sigma_sq = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let len = norm(&v);
        if len == 0.0 {
            return 0.0;
        }
        v.iter_mut().for_each(|x| *x /= len);
        m.mul_into(&v, &mut lv);
        m.mul_transpose_into(&lv, &mut next);
        sigma_sq = norm(&next);
        std::mem::swap(&mut v, &mut next);
    }
    sigma_sq.sqrt().sqrt()
}

/// Initial data for the wave equation matching a doubled state:
/// `x(0) = (I ⊗ (1,1)) x̂(0)`, `ẋ(0) = (I ⊗ (1,1)) (−iĤ x̂(0))`.
pub fn matched_wave_initial(
    ham: &Hamiltonian,
    x_hat: &DoubledState,
) -> Result<(DVector<Complex64>, DVector<Complex64>)> {
    if x_hat.node_count() != ham.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} nodes", ham.n()),
            got: x_hat.node_count().to_string(),
        });
    }
    let h = ham.matrix.map(Complex64::from);
    let velocity_hat = (h * x_hat.as_vector()) * Complex64::new(0.0, -1.0);
    Ok((x_hat.project(), project(&velocity_hat)))
}

fn rk4_step(l: &RowMajor, x: &mut [f64], v: &mut [f64], h: f64, scratch: &mut Scratch) {
    let n = l.n;
    let Scratch { kx, kv, xt, vt, acc } = scratch;
    // stage k: dx = v, dv = −L x
    for stage in 0..4 {
        let (xs, vs): (&[f64], &[f64]) = if stage == 0 { (x, v) } else { (xt, vt) };
        l.mul_into(xs, acc);
        for i in 0..n {
            kx[stage][i] = vs[i];
            kv[stage][i] = -acc[i];
        }
        if stage < 3 {
            let c = if stage == 2 { h } else { 0.5 * h };
            for i in 0..n {
                xt[i] = x[i] + c * kx[stage][i];
                vt[i] = v[i] + c * kv[stage][i];
            }
        }
    }
    for i in 0..n {
        x[i] += h / 6.0 * (kx[0][i] + 2.0 * kx[1][i] + 2.0 * kx[2][i] + kx[3][i]);
        v[i] += h / 6.0 * (kv[0][i] + 2.0 * kv[1][i] + 2.0 * kv[2][i] + kv[3][i]);
    }
}

struct Scratch {
    kx: [Vec<f64>; 4],
    kv: [Vec<f64>; 4],
    xt: Vec<f64>,
    vt: Vec<f64>,
    acc: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        let z = || vec![0.0; n];
        Self {
            kx: [z(), z(), z(), z()],
            kv: [z(), z(), z(), z()],
            xt: z(),
            vt: z(),
            acc: z(),
        }
    }
}

/// Integrates `ẍ = −L x` with classical RK4, real and imaginary parts
/// separately, sampling on `grid`.
///
/// Between samples the interval is split into the fewest equal steps no
/// longer than `dt_internal`. The step must satisfy `dt_internal ≤ 0.1/ω_max`;
/// pass `omega_max` when it is known, otherwise it is estimated.
pub fn integrate_wave(
    l: &DMatrix<f64>,
    x0: &DVector<Complex64>,
    v0: &DVector<Complex64>,
    grid: &TimeGrid,
    dt_internal: f64,
    omega_max: Option<f64>,
) -> Result<TrajectoryRecord> {
    grid.validate()?;
    let n = l.nrows();
    if l.ncols() != n || x0.len() != n || v0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n} Laplacian with {n}-vectors"),
            got: format!("{}x{}, x0: {}, v0: {}", l.nrows(), l.ncols(), x0.len(), v0.len()),
        });
    }
    if !(dt_internal.is_finite() && dt_internal > 0.0) {
        return Err(Error::InvalidParams(format!("internal step must be positive, got {dt_internal}")));
    }
    let omega_max = omega_max.unwrap_or_else(|| estimate_max_frequency(l));
    let bound = if omega_max > 0.0 { STABILITY_FACTOR / omega_max } else { f64::INFINITY };
    if dt_internal > bound {
        return Err(Error::UnstableStep { dt: dt_internal, bound });
    }

    let lm = RowMajor::from_matrix(l);
    let mut scratch = Scratch::new(n);
    let mut x_re: Vec<f64> = x0.iter().map(|z| z.re).collect();
    let mut x_im: Vec<f64> = x0.iter().map(|z| z.im).collect();
    let mut v_re: Vec<f64> = v0.iter().map(|z| z.re).collect();
    let mut v_im: Vec<f64> = v0.iter().map(|z| z.im).collect();
    let track_im = x_im.iter().chain(&v_im).any(|&z| z != 0.0);

    let sample = |re: &[f64], im: &[f64]| {
        DVector::from_fn(n, |i, _| Complex64::new(re[i], im[i]))
    };
    let times = grid.times();
    let mut states = vec![sample(&x_re, &x_im)];
    let mut velocities = vec![sample(&v_re, &v_im)];
    for w in times.windows(2) {
        let span = w[1] - w[0];
        let steps = (span / dt_internal * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        for _ in 0..steps {
            rk4_step(&lm, &mut x_re, &mut v_re, h, &mut scratch);
            if track_im {
                rk4_step(&lm, &mut x_im, &mut v_im, h, &mut scratch);
            }
        }
        states.push(sample(&x_re, &x_im));
        velocities.push(sample(&v_re, &v_im));
    }
    Ok(TrajectoryRecord {
        times,
        projected: states.clone(),
        states,
        velocities: Some(velocities),
        meta: TrajectoryMeta {
            solver: SolverKind::Oracle,
            graph_hash: None,
            dt: grid.dt,
            tolerances: BTreeMap::from([
                ("dt_internal".to_string(), dt_internal),
                ("omega_max".to_string(), omega_max),
            ]),
        },
    })
}
