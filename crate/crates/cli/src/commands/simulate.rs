use std::path::PathBuf;

use clap::{Args, ValueEnum};
use polarosc::dynamics::{
    branch_states, energy_drift, estimate_max_frequency, fundamental_residual, integrate_wave,
    matched_wave_initial, max_relative_deviation, solve_bosonic, solve_fermionic,
    strip_zero_mode_velocity, trajectory_energy, wave_residual, Branch, InitialCondition, SolverKind,
    TimeGrid, TrajectoryRecord,
};
use polarosc::export::{trajectory_to_csv, trajectory_to_json, TrajectoryView};
use polarosc::graph::io::graph_hash;
use polarosc::graph::laplacian_bundle;
use polarosc::hamiltonian::build_hamiltonian;
use polarosc::spectral::{decompose, sqrt_laplacian};
use polarosc::{Error, Result};
use serde::Serialize;

use crate::Tolerances;

const DEFAULT_INTERNAL_STEP: f64 = 1e-3;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Fermionic,
    Bosonic,
    Oracle,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "fermionic")]
    solver: Solver,
    /// `random` (seeded) or `node:<i>`.
    #[arg(long, default_value = "random")]
    init: InitialCondition,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10.0)]
    t_end: f64,
    /// Sample spacing.
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    /// RK4 step for the oracle; defaults to the smaller of 1e-3 and the stability bound.
    #[arg(long)]
    dt_internal: Option<f64>,
    /// Run the bosonic solver even when `√L` links unlinked nodes.
    #[arg(long)]
    force: bool,
    /// Remove zero-mode velocity from the initial state first.
    #[arg(long)]
    strip_zero_mode_velocity: bool,
    /// Also integrate with the RK4 oracle and report the deviation (fermionic only;
    /// implies --strip-zero-mode-velocity).
    #[arg(long)]
    compare_oracle: bool,
    /// Write raw stored states instead of the node signal `x⁺ + x⁻`.
    #[arg(long)]
    raw: bool,
    /// Write the trajectory as JSON instead of CSV.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    tolerances: Tolerances,
    /// Trajectory file; standard output when absent (the summary then goes to standard error).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize, Default)]
struct Summary {
    solver: String,
    graph_hash: String,
    samples: usize,
    t_end: f64,
    dt: f64,
    initial: String,
    seed: u64,
    zero_mode_velocity_removed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    admissible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm_drift: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wave_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy_drift: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_deviation: Option<f64>,
}

/// `max_t |‖x(t)‖ / ‖x(0)‖ − 1|` over one branch.
fn norm_drift(xs: &[nalgebra::DVector<num_complex::Complex64>]) -> f64 {
    let n0 = xs.first().map_or(0.0, |x| x.norm());
    if n0 == 0.0 {
        return 0.0;
    }
    xs.iter().map(|x| (x.norm() / n0 - 1.0).abs()).fold(0.0, f64::max)
}

fn internal_step(args: &SimulateArgs, l: &nalgebra::DMatrix<f64>) -> (f64, f64) {
    let omega_max = estimate_max_frequency(l);
    let step = args.dt_internal.unwrap_or_else(|| {
        if omega_max > 0.0 {
            DEFAULT_INTERNAL_STEP.min(0.1 / omega_max)
        } else {
            DEFAULT_INTERNAL_STEP
        }
    });
    (step, omega_max)
}

pub fn run(args: &SimulateArgs) -> Result<()> {
    if args.compare_oracle && args.solver != Solver::Fermionic {
        return Err(Error::InvalidParams("--compare-oracle needs --solver fermionic".into()));
    }
    let g = super::load_graph(&args.graph)?;
    let hash = graph_hash(&g);
    let grid = TimeGrid::until(args.t_end, args.dt)?;
    let cfg = args.tolerances.config();
    let l = g.laplacian();
    let mut x0 = args.init.build(g.n(), args.seed)?;
    let mut summary = Summary {
        graph_hash: hash.clone(),
        samples: grid.steps + 1,
        t_end: grid.end(),
        dt: grid.dt,
        initial: args.init.to_string(),
        seed: args.seed,
        ..Summary::default()
    };

    let rec: TrajectoryRecord = match args.solver {
        Solver::Fermionic => {
            let bundle = laplacian_bundle(&g)?;
            let dec = decompose(&bundle.laplacian, &cfg)?;
            let ham = build_hamiltonian(&bundle)?;
            if args.strip_zero_mode_velocity || args.compare_oracle {
                x0 = strip_zero_mode_velocity(&ham, &dec, &x0)?;
                summary.zero_mode_velocity_removed = true;
            }
            let rec = solve_fermionic(&ham, &dec, &x0, &grid)?;
            summary.wave_residual = Some(wave_residual(&l, &rec));
            if args.compare_oracle {
                let (v_x0, v_v0) = matched_wave_initial(&ham, &x0)?;
                let (step, omega_max) = internal_step(args, &l);
                let oracle = integrate_wave(&l, &v_x0, &v_v0, &grid, step, Some(omega_max))?;
                summary.oracle_deviation = Some(max_relative_deviation(&rec.projected, &oracle.projected));
            }
            rec
        }
        Solver::Bosonic => {
            let dec = decompose(&l, &cfg)?;
            let admissible = !sqrt_laplacian(&dec).pattern_dense;
            if !admissible && !args.force {
                return Err(Error::SolverInapplicable(
                    "√L links nodes that the graph leaves unlinked (sqrt_pattern = false); pass --force to run anyway"
                        .into(),
                ));
            }
            summary.admissible = Some(admissible);
            let rec = solve_bosonic(&dec, &x0.plus(), &x0.minus(), &grid)?;
            summary.residual_plus = Some(fundamental_residual(&dec, &rec, Branch::Plus));
            summary.residual_minus = Some(fundamental_residual(&dec, &rec, Branch::Minus));
            let drift = [Branch::Plus, Branch::Minus]
                .into_iter()
                .map(|b| norm_drift(&branch_states(&rec, b)))
                .fold(0.0, f64::max);
            summary.norm_drift = Some(drift);
            summary.wave_residual = Some(wave_residual(&l, &rec));
            rec
        }
        Solver::Oracle => {
            let bundle = laplacian_bundle(&g)?;
            let ham = build_hamiltonian(&bundle)?;
            if args.strip_zero_mode_velocity {
                let dec = decompose(&bundle.laplacian, &cfg)?;
                x0 = strip_zero_mode_velocity(&ham, &dec, &x0)?;
                summary.zero_mode_velocity_removed = true;
            }
            let (v_x0, v_v0) = matched_wave_initial(&ham, &x0)?;
            let (step, omega_max) = internal_step(args, &l);
            let rec = integrate_wave(&l, &v_x0, &v_v0, &grid, step, Some(omega_max))?;
            if g.is_symmetric() {
                summary.energy_drift = Some(energy_drift(&trajectory_energy(&l, &rec)?));
            }
            summary.wave_residual = Some(wave_residual(&l, &rec));
            rec
        }
    }
    .with_graph_hash(hash);
    summary.solver = match rec.meta.solver {
        SolverKind::Fermionic => "fermionic",
        SolverKind::Bosonic => "bosonic",
        SolverKind::Oracle => "oracle",
    }
    .to_string();

    let view = if args.raw { TrajectoryView::States } else { TrajectoryView::Projected };
    let body = if args.json { trajectory_to_json(&rec) + "\n" } else { trajectory_to_csv(&rec, view) };
    crate::emit(args.output.as_deref(), &body)?;
    let summary = crate::to_json_line(&summary);
    if args.output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(())
}
