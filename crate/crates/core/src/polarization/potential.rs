use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::DoubledState;
use crate::error::{Error, Result};
use crate::spectral::SpectralDecomposition;

/// `V(s) = a·s + b·s² + c0` with `s = |ψ|²`, shifted so its minimum is 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PotentialCoefficients")]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub c0: f64,
}

/// The free coefficients as they appear in configuration files.
#[derive(Debug, Clone, Copy, Deserialize)]
struct PotentialCoefficients {
    a: f64,
    b: f64,
}

impl TryFrom<PotentialCoefficients> for PotentialParams {
    type Error = Error;

    fn try_from(c: PotentialCoefficients) -> Result<Self> {
        PotentialParams::new(c.a, c.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// `a ≥ 0`: the minimum sits at `|ψ| = 0`.
    Symmetric,
    /// `a < 0`: the minimum is the ring `|ψ| = √(|a|/2b)`.
    Broken,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidParams(format!("coefficient a must be finite, got {a}")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidB(b));
        }
        let c0 = if a < 0.0 { a * a / (4.0 * b) } else { 0.0 };
        Ok(Self { a, b, c0 })
    }

    pub fn phase(&self) -> Phase {
        if self.a < 0.0 {
            Phase::Broken
        } else {
            Phase::Symmetric
        }
    }
}

pub fn potential(params: &PotentialParams, sq_norm: f64) -> Result<f64> {
    if !(sq_norm >= 0.0) {
        return Err(Error::NegativeSqNorm(sq_norm));
    }
    Ok(params.a * sq_norm + params.b * sq_norm * sq_norm + params.c0)
}

/// Minimizing amplitude `|ψ|`.
pub fn ground_state(params: &PotentialParams) -> Result<f64> {
    if !(params.b > 0.0) {
        return Err(Error::InvalidB(params.b));
    }
    Ok(if params.a < 0.0 {
        (params.a.abs() / (2.0 * params.b)).sqrt()
    } else {
        0.0
    })
}

/// Amplitudes `ψ_μ±` of one eigenmode and `|ψ_μ|² = |ψ_μ⁺|² + |ψ_μ⁻|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeAmplitude {
    pub psi_plus: Complex64,
    pub psi_minus: Complex64,
    pub sq_norm: f64,
}

impl ModeAmplitude {
    pub fn new(psi_plus: Complex64, psi_minus: Complex64) -> Self {
        Self {
            psi_plus,
            psi_minus,
            sq_norm: psi_plus.norm_sqr() + psi_minus.norm_sqr(),
        }
    }
}

/// Modal amplitudes `P⁻¹ x±` of a doubled state, one entry per eigenvalue.
pub fn mode_amplitudes(dec: &SpectralDecomposition, x: &DoubledState) -> Result<Vec<ModeAmplitude>> {
    if x.node_count() != dec.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} nodes", dec.n()),
            got: x.node_count().to_string(),
        });
    }
    let p_inv = dec.p_inv.map(Complex64::from);
    let plus: DVector<Complex64> = &p_inv * x.plus();
    let minus: DVector<Complex64> = &p_inv * x.minus();
    Ok(plus.iter().zip(minus.iter()).map(|(&p, &m)| ModeAmplitude::new(p, m)).collect())
}
