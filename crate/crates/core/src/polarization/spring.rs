//! Masses on a line between two walls, joined by linear springs.
//!
//! Mass `i` sits at `x_i`. Link `j` joins masses `j` and `j+1`; the first
//! and last mass are tied to the walls at `0` and `wall_gap` by anchor
//! springs of stiffness `wall_stiffness` and rest length `anchor_length`.
//! Cutting a link leaves each segment tied to its own wall.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpringChain {
    pub n: usize,
    pub spring_constants: Vec<f64>,
    pub natural_lengths: Vec<f64>,
    pub wall_stiffness: f64,
    #[serde(default = "default_anchor_length")]
    pub anchor_length: f64,
    pub wall_gap: f64,
}

fn default_anchor_length() -> f64 {
    1.0
}

impl SpringChain {
    /// `n` masses with identical links; the anchors share their stiffness and length.
    pub fn uniform(n: usize, stiffness: f64, length: f64, wall_gap: f64) -> Result<Self> {
        let chain = Self {
            n,
            spring_constants: vec![stiffness; n.saturating_sub(1)],
            natural_lengths: vec![length; n.saturating_sub(1)],
            wall_stiffness: stiffness,
            anchor_length: length,
            wall_gap,
        };
        chain.validate()?;
        Ok(chain)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSize("spring chain needs at least one mass".into()));
        }
        if self.spring_constants.len() != self.n - 1 || self.natural_lengths.len() != self.n - 1 {
            return Err(Error::DimensionMismatch {
                expected: format!("{} links", self.n - 1),
                got: format!(
                    "{} stiffnesses, {} lengths",
                    self.spring_constants.len(),
                    self.natural_lengths.len()
                ),
            });
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !self.spring_constants.iter().all(|&k| positive(k)) || !positive(self.wall_stiffness) {
            return Err(Error::InvalidParams("spring stiffnesses must be positive".into()));
        }
        if !self.natural_lengths.iter().all(|&l| positive(l)) || !positive(self.anchor_length) {
            return Err(Error::InvalidParams("natural lengths must be positive".into()));
        }
        if !positive(self.wall_gap) {
            return Err(Error::InvalidParams(format!("wall gap must be positive, got {}", self.wall_gap)));
        }
        Ok(())
    }

    /// Total rest length of the series, anchors included.
    pub fn rest_length(&self) -> f64 {
        2.0 * self.anchor_length + self.natural_lengths.iter().sum::<f64>()
    }

    /// `wall_gap − rest_length`: negative when compressed, positive when stretched.
    pub fn pre_stress(&self) -> f64 {
        self.wall_gap - self.rest_length()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpringEquilibrium {
    pub positions: Vec<f64>,
    /// Equilibrium of the uncut chain.
    pub reference: Vec<f64>,
    pub segments: Vec<Vec<usize>>,
    /// Mean position of each segment minus its mean in `reference`.
    pub mean_shift: Vec<f64>,
}

fn solve(chain: &SpringChain, cut_after: Option<usize>) -> Result<Vec<f64>> {
    let n = chain.n;
    let (kw, a) = (chain.wall_stiffness, chain.anchor_length);
    let mut k = DMatrix::<f64>::zeros(n, n);
    let mut f = DVector::<f64>::zeros(n);
    // ½kw (x_0 − a)² and ½kw (gap − x_{n−1} − a)²
    k[(0, 0)] += kw;
    f[0] += kw * a;
    k[(n - 1, n - 1)] += kw;
    f[n - 1] += kw * (chain.wall_gap - a);
    for j in (0..n - 1).filter(|&j| Some(j) != cut_after) {
        let (kj, lj) = (chain.spring_constants[j], chain.natural_lengths[j]);
        k[(j, j)] += kj;
        k[(j + 1, j + 1)] += kj;
        k[(j, j + 1)] -= kj;
        k[(j + 1, j)] -= kj;
        f[j] -= kj * lj;
        f[j + 1] += kj * lj;
    }
    let x = k
        .lu()
        .solve(&f)
        .ok_or_else(|| Error::SingularSystem("spring force balance".into()))?;
    Ok(x.iter().copied().collect())
}

fn mean(x: &[f64], nodes: &[usize]) -> f64 {
    nodes.iter().map(|&i| x[i]).sum::<f64>() / nodes.len() as f64
}

/// Force-balance equilibrium, optionally with link `cut_after` (joining
/// masses `cut_after` and `cut_after + 1`) removed.
pub fn spring_equilibrium(chain: &SpringChain, cut_after: Option<usize>) -> Result<SpringEquilibrium> {
    chain.validate()?;
    if let Some(c) = cut_after {
        if c + 1 >= chain.n {
            return Err(Error::IndexOutOfRange { index: c, n: chain.n - 1 });
        }
    }
    let reference = solve(chain, None)?;
    let positions = solve(chain, cut_after)?;
    let segments = match cut_after {
        Some(c) => vec![(0..=c).collect(), (c + 1..chain.n).collect()],
        None => vec![(0..chain.n).collect::<Vec<_>>()],
    };
    let mean_shift = segments
        .iter()
        .map(|s: &Vec<usize>| mean(&positions, s) - mean(&reference, s))
        .collect();
    Ok(SpringEquilibrium {
        positions,
        reference,
        segments,
        mean_shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn stress_free_chain_is_equally_spaced() {
        let chain = SpringChain::uniform(4, 1.0, 1.0, 5.0).unwrap();
        assert_eq!(chain.pre_stress(), 0.0);
        let eq = spring_equilibrium(&chain, Some(1)).unwrap();
        assert!(close(&eq.reference, &[1.0, 2.0, 3.0, 4.0], 1e-12));
        assert!(close(&eq.positions, &eq.reference, 1e-12));
        assert!(eq.mean_shift.iter().all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn compressed_chain_is_symmetric_and_relaxes_inward() {
        let chain = SpringChain::uniform(4, 1.0, 1.0, 4.0).unwrap();
        let eq = spring_equilibrium(&chain, Some(1)).unwrap();
        let r = &eq.reference;
        assert!((r[0] + r[3] - 4.0).abs() < 1e-12 && (r[1] + r[2] - 4.0).abs() < 1e-12);
        // a cut segment is held by one wall only, so it returns to rest lengths
        assert!(close(&eq.positions, &[1.0, 2.0, 2.0, 3.0], 1e-12));
        assert!(eq.mean_shift[0] > 0.0 && eq.mean_shift[1] < 0.0);
    }

    #[test]
    fn stretched_chain_relaxes_outward() {
        let chain = SpringChain::uniform(6, 1.0, 1.0, 9.0).unwrap();
        let eq = spring_equilibrium(&chain, Some(2)).unwrap();
        assert!(eq.mean_shift[0] < 0.0 && eq.mean_shift[1] > 0.0);
        assert!((eq.mean_shift[0] + eq.mean_shift[1]).abs() < 1e-12);
    }

    #[test]
    fn uncut_has_single_zero_shift() {
        let chain = SpringChain::uniform(3, 2.0, 0.5, 7.0).unwrap();
        let eq = spring_equilibrium(&chain, None).unwrap();
        assert_eq!(eq.mean_shift, vec![0.0]);
        assert_eq!(eq.positions, eq.reference);
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(SpringChain::uniform(3, 0.0, 1.0, 4.0).is_err());
        assert!(SpringChain::uniform(3, 1.0, 1.0, -1.0).is_err());
        let chain = SpringChain::uniform(3, 1.0, 1.0, 4.0).unwrap();
        assert!(spring_equilibrium(&chain, Some(2)).is_err());
        let mut short = chain.clone();
        short.natural_lengths.pop();
        assert!(short.validate().is_err());
    }
}
