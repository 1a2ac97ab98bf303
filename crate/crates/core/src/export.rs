//! Text dumps for matrices, sparsity patterns and trajectories, each with a
//! parser so every file written here can be read back.
//!
//! Floats are written with Rust's shortest round-trip formatting, so parsing
//! a dump recovers the exact bits.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{TrajectoryMeta, TrajectoryRecord};
use crate::error::{Error, Result};

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: `{}` is not a number", field.trim())))
}

/// Row-major CSV, one matrix row per line, no header.
pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let fields: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv(s: &str) -> Result<DMatrix<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (k, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let row = line.split(',').map(|f| parse_f64(f, k + 1)).collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse(format!(
                    "line {}: expected {} columns, found {}",
                    k + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    let ncols = rows.first().map_or(0, Vec::len);
    Ok(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

/// Plain PBM (`P1`) grid: header `P1`, then `width height`, then rows of
/// space-separated `0`/`1`.
pub fn pattern_to_pbm(pattern: &[Vec<bool>]) -> String {
    let width = pattern.first().map_or(0, Vec::len);
    let mut out = format!("P1\n{width} {}\n", pattern.len());
    for row in pattern {
        let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn pattern_from_pbm(s: &str) -> Result<Vec<Vec<bool>>> {
    let mut tokens = s
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    if tokens.next() != Some("P1") {
        return Err(Error::Parse("pattern grid must start with `P1`".into()));
    }
    let mut dim = || -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("pattern grid needs `width height`".into()))
    };
    let (width, height) = (dim()?, dim()?);
    let cells = tokens
        .map(|t| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::Parse(format!("pattern cell `{other}` is not 0 or 1"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if cells.len() != width * height {
        return Err(Error::Parse(format!(
            "pattern grid declares {width}x{height} cells, found {}",
            cells.len()
        )));
    }
    Ok(cells.chunks(width.max(1)).take(height).map(<[bool]>::to_vec).collect())
}

/// Which vectors of a trajectory go into a CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryView {
    /// The node signal `x = x⁺ + x⁻`, columns `re(x_i),im(x_i)`.
    Projected,
    /// The raw stored states, columns `re(s_k),im(s_k)`.
    States,
}

impl TrajectoryView {
    fn symbol(self) -> &'static str {
        match self {
            TrajectoryView::Projected => "x",
            TrajectoryView::States => "s",
        }
    }
}

/// CSV with header `t,re(x_0),im(x_0),…` and one line per sample.
pub fn trajectory_to_csv(rec: &TrajectoryRecord, view: TrajectoryView) -> String {
    let rows = match view {
        TrajectoryView::Projected => &rec.projected,
        TrajectoryView::States => &rec.states,
    };
    let width = rows.first().map_or(0, |x| x.len());
    let sym = view.symbol();
    let mut out = String::from("t");
    for i in 0..width {
        write!(out, ",re({sym}_{i}),im({sym}_{i})").unwrap();
    }
    out.push('\n');
    for (t, x) in rec.times.iter().zip(rows) {
        out.push_str(&t.to_string());
        for z in x.iter() {
            write!(out, ",{},{}", z.re, z.im).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a trajectory CSV into sample times and vectors.
pub fn trajectory_from_csv(s: &str) -> Result<(Vec<f64>, Vec<DVector<Complex64>>)> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty trajectory CSV".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.first() != Some(&"t") || columns.len() % 2 != 1 {
        return Err(Error::Parse("trajectory CSV header must be `t` followed by re/im pairs".into()));
    }
    let width = (columns.len() - 1) / 2;
    let mut times = Vec::new();
    let mut states = Vec::new();
    for (k, line) in lines {
        let values = line.split(',').map(|f| parse_f64(f, k + 1)).collect::<Result<Vec<_>>>()?;
        if values.len() != columns.len() {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, found {}",
                k + 1,
                columns.len(),
                values.len()
            )));
        }
        times.push(values[0]);
        states.push(DVector::from_fn(width, |i, _| Complex64::new(values[1 + 2 * i], values[2 + 2 * i])));
    }
    Ok((times, states))
}

#[derive(Serialize, Deserialize)]
struct TrajectoryJson {
    meta: TrajectoryMeta,
    times: Vec<f64>,
    states: Vec<Vec<Complex64>>,
    projected: Vec<Vec<Complex64>>,
    velocities: Option<Vec<Vec<Complex64>>>,
}

fn to_rows(xs: &[DVector<Complex64>]) -> Vec<Vec<Complex64>> {
    xs.iter().map(|x| x.iter().copied().collect()).collect()
}

fn from_rows(rows: Vec<Vec<Complex64>>) -> Vec<DVector<Complex64>> {
    rows.into_iter().map(DVector::from_vec).collect()
}

/// JSON with a `meta` block (solver, graph hash, dt, tolerances); complex
/// numbers are `[re, im]` pairs.
pub fn trajectory_to_json(rec: &TrajectoryRecord) -> String {
    let doc = TrajectoryJson {
        meta: rec.meta.clone(),
        times: rec.times.clone(),
        states: to_rows(&rec.states),
        projected: to_rows(&rec.projected),
        velocities: rec.velocities.as_deref().map(to_rows),
    };
    serde_json::to_string_pretty(&doc).expect("trajectory serialization cannot fail")
}

pub fn trajectory_from_json(s: &str) -> Result<TrajectoryRecord> {
    let doc: TrajectoryJson = serde_json::from_str(s)?;
    if doc.states.len() != doc.times.len() || doc.projected.len() != doc.times.len() {
        return Err(Error::Parse("trajectory JSON has mismatched sample counts".into()));
    }
    Ok(TrajectoryRecord {
        times: doc.times,
        states: from_rows(doc.states),
        projected: from_rows(doc.projected),
        velocities: doc.velocities.map(from_rows),
        meta: doc.meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{solve_fermionic, InitialCondition, TimeGrid};
    use crate::graph::{generators, laplacian_bundle};
    use crate::hamiltonian::build_hamiltonian;
    use crate::spectral::{decompose, SpectralConfig};

    fn sample_record() -> TrajectoryRecord {
        let g = generators::cycle(4, 0.3).unwrap();
        let b = laplacian_bundle(&g).unwrap();
        let dec = decompose(&b.laplacian, &SpectralConfig::default()).unwrap();
        let ham = build_hamiltonian(&b).unwrap();
        let x0 = InitialCondition::Random.build(4, 1).unwrap();
        solve_fermionic(&ham, &dec, &x0, &TimeGrid::new(0.1, 5).unwrap()).unwrap()
    }

    #[test]
    fn matrix_csv_round_trips_exactly() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, -0.1, 1e-300, 1.0 / 3.0, 0.0, 12345.678]);
        let text = matrix_to_csv(&m);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(matrix_from_csv(&text).unwrap(), m);
        assert!(matrix_from_csv("1,2\n3\n").is_err());
        assert!(matrix_from_csv("1,x\n").is_err());
    }

    #[test]
    fn pbm_round_trips() {
        let p = vec![vec![true, false, true], vec![false, true, false]];
        let text = pattern_to_pbm(&p);
        assert!(text.starts_with("P1\n3 2\n1 0 1\n"));
        assert_eq!(pattern_from_pbm(&text).unwrap(), p);
        assert!(pattern_from_pbm("P1\n2 2\n1 0 1\n").is_err());
        assert!(pattern_from_pbm("P2\n1 1\n1\n").is_err());
    }

    #[test]
    fn trajectory_csv_round_trips() {
        let rec = sample_record();
        let text = trajectory_to_csv(&rec, TrajectoryView::Projected);
        assert!(text.starts_with("t,re(x_0),im(x_0),re(x_1)"));
        let (times, xs) = trajectory_from_csv(&text).unwrap();
        assert_eq!(times, rec.times);
        assert_eq!(xs, rec.projected);
        let (_, raw) = trajectory_from_csv(&trajectory_to_csv(&rec, TrajectoryView::States)).unwrap();
        assert_eq!(raw, rec.states);
    }

    #[test]
    fn trajectory_json_round_trips() {
        let rec = sample_record().with_graph_hash("abc".into());
        let back = trajectory_from_json(&trajectory_to_json(&rec)).unwrap();
        assert_eq!(back.meta, rec.meta);
        assert_eq!(back.states, rec.states);
        assert_eq!(back.projected, rec.projected);
        assert!(back.velocities.is_none());
    }
}
