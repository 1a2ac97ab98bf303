use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::bosonic::{branch_states, Branch};
use super::TrajectoryRecord;
use crate::error::{Error, Result};
use crate::spectral::{sqrt_laplacian, SpectralDecomposition};

fn uniform_step(rec: &TrajectoryRecord) -> f64 {
    rec.times[1] - rec.times[0]
}

/// Largest relative violation of `±i ẋ± = √L x±` along a trajectory, with
/// `ẋ` from central differences. Each interior sample contributes
/// `‖±i ẋ − √L x‖ / ‖x‖`. Trajectories with fewer than three samples give 0.
pub fn fundamental_residual(dec: &SpectralDecomposition, rec: &TrajectoryRecord, branch: Branch) -> f64 {
    if rec.len() < 3 {
        return 0.0;
    }
    let sqrt_l = sqrt_laplacian(dec).matrix.map(Complex64::from);
    let xs = branch_states(rec, branch);
    let dt = uniform_step(rec);
    let factor = Complex64::new(0.0, branch.sign() / (2.0 * dt));
    let mut worst: f64 = 0.0;
    for k in 1..xs.len() - 1 {
        let lhs = (&xs[k + 1] - &xs[k - 1]) * factor;
        let gap = (lhs - &sqrt_l * &xs[k]).norm();
        let scale = xs[k].norm();
        worst = worst.max(if scale > 0.0 { gap / scale } else { gap });
    }
    worst
}

/// `max_k ‖(x_{k+1} − 2x_k + x_{k−1})/dt² + L x_k‖ / max_k ‖x_k‖` over the
/// projected trajectory: how well it solves `ẍ = −L x`.
pub fn wave_residual(l: &DMatrix<f64>, rec: &TrajectoryRecord) -> f64 {
    if rec.len() < 3 {
        return 0.0;
    }
    let lc = l.map(Complex64::from);
    let xs = &rec.projected;
    let dt = uniform_step(rec);
    let inv_dt2 = Complex64::from(1.0 / (dt * dt));
    let scale = xs.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for k in 1..xs.len() - 1 {
        let accel = (&xs[k + 1] - &xs[k] * Complex64::from(2.0) + &xs[k - 1]) * inv_dt2;
        worst = worst.max((accel + &lc * &xs[k]).norm());
    }
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}

/// `max_t ‖a(t) − b(t)‖_∞ / max_t ‖b(t)‖_∞`, with `b` the reference.
pub fn max_relative_deviation(a: &[DVector<Complex64>], b: &[DVector<Complex64>]) -> f64 {
    let gap = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    let scale = b
        .iter()
        .map(|y| y.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    if scale > 0.0 {
        gap / scale
    } else {
        gap
    }
}

fn require_symmetric(l: &DMatrix<f64>) -> Result<()> {
    let n = l.nrows();
    if !l.is_square() || (0..n).any(|i| (i + 1..n).any(|j| l[(i, j)] != l[(j, i)])) {
        return Err(Error::Unsupported(
            "energy is only conserved for symmetric Laplacians".into(),
        ));
    }
    Ok(())
}

/// `E = ½‖v‖² + ½ xᵀ L x` for a symmetric Laplacian.
pub fn total_energy(l: &DMatrix<f64>, x: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
    require_symmetric(l)?;
    if x.len() != l.nrows() || v.len() != l.nrows() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}-vectors", l.nrows()),
            got: format!("x: {}, v: {}", x.len(), v.len()),
        });
    }
    Ok(0.5 * v.norm_squared() + 0.5 * x.dot(&(l * x)))
}

/// Energy at every sample of an oracle trajectory; real and imaginary
/// parts evolve independently, so their energies add.
pub fn trajectory_energy(l: &DMatrix<f64>, rec: &TrajectoryRecord) -> Result<Vec<f64>> {
    let velocities = rec.velocities.as_ref().ok_or_else(|| {
        Error::Unsupported("trajectory has no velocities (only the oracle records them)".into())
    })?;
    rec.states
        .iter()
        .zip(velocities)
        .map(|(x, v)| {
            let re = total_energy(l, &x.map(|z| z.re), &v.map(|z| z.re))?;
            let im = total_energy(l, &x.map(|z| z.im), &v.map(|z| z.im))?;
            Ok(re + im)
        })
        .collect()
}

/// `max_t |E(t) − E(0)| / E(0)`; absolute when `E(0) = 0`.
pub fn energy_drift(energies: &[f64]) -> f64 {
    let Some(&e0) = energies.first() else {
        return 0.0;
    };
    let gap = energies.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max);
    if e0 > 0.0 {
        gap / e0
    } else {
        gap
    }
}
