use std::path::PathBuf;

use clap::{Args, ValueEnum};
use polarosc::graph::generators::{self, RandomParams, TwoClusterParams};
use polarosc::graph::io::{to_edge_list, to_json};
use polarosc::{Error, Result};

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum GraphKind {
    Path,
    Cycle,
    Complete,
    Star,
    TwoCluster,
    Random,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum GraphFormat {
    Json,
    Edges,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    kind: GraphKind,
    /// Node count (path, cycle, complete, star, random).
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Uniform link weight (path, cycle, complete, star).
    #[arg(long, default_value_t = 1.0)]
    weight: f64,
    /// Cluster sizes for two-cluster, e.g. `6,6`.
    #[arg(long, default_value = "6,6", value_parser = parse_pair::<usize>)]
    sizes: (usize, usize),
    /// Weight of links inside each cluster.
    #[arg(long, default_value_t = 1.0)]
    intra: f64,
    /// Weight of links between the clusters.
    #[arg(long, default_value_t = 0.1)]
    bridge: f64,
    /// Number of bridging pairs.
    #[arg(long, default_value_t = 2)]
    bridges: usize,
    /// Probability of an extra chord inside a cluster.
    #[arg(long, default_value_t = 0.2)]
    chord_prob: f64,
    /// Link probability for random graphs.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Weight range for random graphs, e.g. `0.5,1.5`.
    #[arg(long, default_value = "0.5,1.5", value_parser = parse_pair::<f64>)]
    weights: (f64, f64),
    /// Random graphs: draw each direction independently.
    #[arg(long)]
    directed: bool,
    /// Random graphs: skip the spanning path that guarantees connectivity.
    #[arg(long)]
    allow_disconnected: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> std::result::Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<T>().map_err(|_| format!("cannot parse `{v}`"));
    Ok((parse(a)?, parse(b)?))
}

pub fn run(args: &GenArgs) -> Result<()> {
    let g = match args.kind {
        GraphKind::Path => generators::path(args.n, args.weight),
        GraphKind::Cycle => generators::cycle(args.n, args.weight),
        GraphKind::Complete => generators::complete(args.n, args.weight),
        GraphKind::Star => generators::star(args.n, args.weight),
        GraphKind::TwoCluster => generators::two_cluster(&TwoClusterParams {
            sizes: args.sizes,
            intra: args.intra,
            bridge: args.bridge,
            bridges: args.bridges,
            chord_prob: args.chord_prob,
            seed: args.seed,
        }),
        GraphKind::Random => generators::random(&RandomParams {
            n: args.n,
            edge_prob: args.p,
            weight_range: args.weights,
            connected: !args.allow_disconnected,
            directed: args.directed,
            seed: args.seed,
        }),
    }
    .map_err(|e| match e {
        Error::InvalidSize(m) => Error::InvalidParams(m),
        other => other,
    })?;
    let text = match args.format {
        GraphFormat::Json => to_json(&g) + "\n",
        GraphFormat::Edges => to_edge_list(&g),
    };
    crate::emit(args.output.as_deref(), &text)
}
