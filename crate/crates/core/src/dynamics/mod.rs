//! Time evolution on a graph.
//!
//! Three independent routes to the same physics:
//!
//! * [`solve_fermionic`]: the closed form of `x̂(t) = exp(−iĤt) x̂(0)` written
//!   through `P`, `cos(Ωt)`, `Ω sin(Ωt)` and `℧ sin(Ωt)`.
//! * [`solve_bosonic`]: `x±(t) = P exp(∓iΩt) P⁻¹ x±(0)`, the two square-root
//!   branches `±i ẋ± = √L x±`.
//! * [`integrate_wave`]: classical RK4 on `ẍ = −L x`, written against plain
//!   slices and sharing nothing with the closed forms. It is the oracle.
//!
//! The closed fermionic form carries `℧`, which is zero on the `λ = 0` modes,
//! so it drops the linear drift `t · v₀` a zero mode picks up under the wave
//! equation. Comparisons against the oracle therefore use initial states
//! without zero-mode velocity; see [`strip_zero_mode_velocity`].

mod bosonic;
mod fermionic;
mod observables;
mod oracle;
mod state;

pub use bosonic::{bosonic_propagator, branch_states, solve_bosonic, Branch};
pub use fermionic::{fermionic_propagator, solve_fermionic, strip_zero_mode_velocity};
pub use observables::{
    energy_drift, fundamental_residual, max_relative_deviation, total_energy, trajectory_energy,
    wave_residual,
};
pub use oracle::{estimate_max_frequency, integrate_wave, matched_wave_initial};
pub use state::{project, DoubledState, InitialCondition};

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform sample grid `start + k·dt`, `k = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    #[serde(default)]
    pub start: f64,
    pub dt: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, steps: usize) -> Result<Self> {
        Self::starting_at(0.0, dt, steps)
    }

    pub fn starting_at(start: f64, dt: f64, steps: usize) -> Result<Self> {
        let grid = Self { start, dt, steps };
        grid.validate()?;
        Ok(grid)
    }

    /// Grid from 0 to `t_end` with spacing as close to `dt` as divides evenly.
    pub fn until(t_end: f64, dt: f64) -> Result<Self> {
        if !(t_end.is_finite() && t_end >= 0.0 && dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParams(format!(
                "need t_end >= 0 and dt > 0, got t_end = {t_end}, dt = {dt}"
            )));
        }
        let steps = (t_end / dt).round().max(1.0) as usize;
        Self::new(t_end / steps as f64, steps)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParams(format!(
                "time grid needs finite start and dt > 0, got start = {}, dt = {}",
                self.start, self.dt
            )));
        }
        Ok(())
    }

    pub fn end(&self) -> f64 {
        self.time(self.steps)
    }

    pub fn time(&self, k: usize) -> f64 {
        self.start + k as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.time(k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Fermionic,
    Bosonic,
    Oracle,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverKind::Fermionic => "fermionic",
            SolverKind::Bosonic => "bosonic",
            SolverKind::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub solver: SolverKind,
    pub graph_hash: Option<String>,
    pub dt: f64,
    pub tolerances: BTreeMap<String, f64>,
}

/// Sampled solution.
///
/// `states` holds doubled `2n` states for the closed-form solvers and the
/// plain `n`-vector `x` for the oracle, which also fills `velocities`.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub states: Vec<DVector<Complex64>>,
    pub projected: Vec<DVector<Complex64>>,
    pub velocities: Option<Vec<DVector<Complex64>>>,
    pub meta: TrajectoryMeta,
}

impl TrajectoryRecord {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn with_graph_hash(mut self, hash: String) -> Self {
        self.meta.graph_hash = Some(hash);
        self
    }

    pub fn final_state(&self) -> Option<&DVector<Complex64>> {
        self.states.last()
    }
}
