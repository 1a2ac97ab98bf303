use std::path::{Path, PathBuf};

use clap::Args;
use polarosc::export::{trajectory_to_csv, TrajectoryView};
use polarosc::polarization::{run_polarization_scenario, ScenarioConfig};
use polarosc::Result;
use serde::Serialize;

#[derive(Args, Debug)]
pub struct PolarizeArgs {
    /// Scenario config (JSON).
    config: PathBuf,
    /// Output directory for the report and trajectories.
    #[arg(long, env = "POLAROSC_OUT_DIR", default_value = "polarosc-out")]
    out_dir: PathBuf,
}

#[derive(Serialize)]
struct Summary<'a> {
    components: usize,
    zero_modes_pre: usize,
    zero_modes_post: usize,
    sqrt_pattern_pre: bool,
    sqrt_pattern_post: &'a [Option<bool>],
    files: Vec<String>,
}

pub fn run(args: &PolarizeArgs) -> Result<()> {
    let cfg = ScenarioConfig::from_json(&crate::read_text(&args.config)?)?;
    let base = args.config.parent().unwrap_or(Path::new("."));
    let g = cfg.load_graph(base)?;
    let x0 = cfg.initial_state(g.n())?;
    let outcome = run_polarization_scenario(&g, &cfg.options(), &x0, &cfg.time)?;

    let mut files = vec![("report.json".to_string(), crate::to_json_line(&outcome.report))];
    files.push(("pre.csv".into(), trajectory_to_csv(&outcome.pre_trajectory, TrajectoryView::Projected)));
    for (k, rec) in outcome.post_trajectories.iter().enumerate() {
        if let Some(rec) = rec {
            files.push((format!("post_{k}.csv"), trajectory_to_csv(rec, TrajectoryView::Projected)));
        }
    }
    for (name, body) in &files {
        crate::emit(Some(&args.out_dir.join(name)), body)?;
    }
    let r = &outcome.report;
    let summary = Summary {
        components: r.components.len(),
        zero_modes_pre: r.zero_modes_pre,
        zero_modes_post: r.zero_modes_post,
        sqrt_pattern_pre: r.sqrt_pattern_pre,
        sqrt_pattern_post: &r.sqrt_pattern_post,
        files: files.into_iter().map(|(name, _)| name).collect(),
    };
    print!("{}", crate::to_json_line(&summary));
    Ok(())
}
