pub mod analyze;
pub mod export;
pub mod gen;
pub mod polarize;
pub mod simulate;

use std::path::PathBuf;

use polarosc::graph::io::parse_graph;
use polarosc::graph::WeightedDigraph;
use polarosc::Result;

pub fn load_graph(path: &PathBuf) -> Result<WeightedDigraph> {
    parse_graph(&crate::read_text(path)?)
}
