use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x̂ = x⁺ ⊗ (1,0)ᵀ + x⁻ ⊗ (0,1)ᵀ`, stored interleaved: node `i` owns
/// components `2i` (plus branch) and `2i+1` (minus branch).
#[derive(Debug, Clone, PartialEq)]
pub struct DoubledState(pub DVector<Complex64>);

impl DoubledState {
    pub fn new(v: DVector<Complex64>) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: "even-length doubled state".into(),
                got: v.len().to_string(),
            });
        }
        Ok(Self(v))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DVector::zeros(2 * n))
    }

    pub fn from_branches(plus: &DVector<Complex64>, minus: &DVector<Complex64>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("branches of equal length {}", plus.len()),
                got: minus.len().to_string(),
            });
        }
        let n = plus.len();
        Ok(Self(DVector::from_fn(2 * n, |k, _| {
            if k % 2 == 0 {
                plus[k / 2]
            } else {
                minus[k / 2]
            }
        })))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(DVector::from_iterator(
            values.len(),
            values.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    pub fn node_count(&self) -> usize {
        self.0.len() / 2
    }

    pub fn plus(&self) -> DVector<Complex64> {
        DVector::from_fn(self.node_count(), |i, _| self.0[2 * i])
    }

    pub fn minus(&self) -> DVector<Complex64> {
        DVector::from_fn(self.node_count(), |i, _| self.0[2 * i + 1])
    }

    pub fn project(&self) -> DVector<Complex64> {
        project(&self.0)
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.0
    }
}

/// `x = (I ⊗ (1,1)) x̂`: component `i` is `x̂_{2i} + x̂_{2i+1}`.
pub fn project(x_hat: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(x_hat.len() / 2, |i, _| x_hat[2 * i] + x_hat[2 * i + 1])
}

/// How to build `x̂(0)`: `random` draws every real component uniformly from
/// `[−1, 1]` with a seeded generator; `node:i` puts a unit on node `i`'s plus
/// branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InitialCondition {
    #[default]
    Random,
    Node(usize),
}

impl InitialCondition {
    pub fn build(self, n: usize, seed: u64) -> Result<DoubledState> {
        match self {
            InitialCondition::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(DoubledState(DVector::from_fn(2 * n, |_, _| {
                    Complex64::new(rng.random_range(-1.0..=1.0), 0.0)
                })))
            }
            InitialCondition::Node(i) if i < n => {
                let mut x = DoubledState::zeros(n);
                x.0[2 * i] = Complex64::new(1.0, 0.0);
                Ok(x)
            }
            InitialCondition::Node(i) => Err(Error::IndexOutOfRange { index: i, n }),
        }
    }
}

impl FromStr for InitialCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "random" {
            return Ok(InitialCondition::Random);
        }
        s.strip_prefix("node:")
            .and_then(|i| i.parse().ok())
            .map(InitialCondition::Node)
            .ok_or_else(|| Error::Parse(format!("initial condition must be `random` or `node:<i>`, got `{s}`")))
    }
}

impl TryFrom<String> for InitialCondition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<InitialCondition> for String {
    fn from(c: InitialCondition) -> String {
        c.to_string()
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialCondition::Random => f.write_str("random"),
            InitialCondition::Node(i) => write!(f, "node:{i}"),
        }
    }
}
