//! Qubit states as three spin-projection probabilities.
//!
//! `p1`, `p2`, `p3` are the probabilities of the projection `m = +1/2` along
//! x, y and z. The density matrix is
//!
//! ```text
//! rho = [ p3                        (p1 - 1/2) - i (p2 - 1/2) ]
//!       [ (p1 - 1/2) + i (p2 - 1/2)  1 - p3                   ]
//! ```
//!
//! Any triple in the unit cube is representable; only triples inside the
//! ball `sum (p_j - 1/2)^2 <= 1/4` describe quantum states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c64, HermitianMatrix2};

/// Slack allowed when reading probabilities back from a matrix; values this
/// close to the unit interval are clamped onto it.
pub const RANGE_TOL: f64 = 1e-12;

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ProbabilityOutOfRange { name, value })
    }
}

pub(crate) fn clamp_probability(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (-RANGE_TOL..=1.0 + RANGE_TOL).contains(&value) {
        Ok(value.clamp(0.0, 1.0))
    } else {
        Err(Error::ProbabilityOutOfRange { name, value })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct QubitProbabilities {
    p: [f64; 3],
}

impl QubitProbabilities {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        Ok(Self {
            p: [
                check_probability("p1", p1)?,
                check_probability("p2", p2)?,
                check_probability("p3", p3)?,
            ],
        })
    }

    pub fn maximally_mixed() -> Self {
        Self { p: [0.5; 3] }
    }

    pub fn p1(&self) -> f64 {
        self.p[0]
    }

    pub fn p2(&self) -> f64 {
        self.p[1]
    }

    pub fn p3(&self) -> f64 {
        self.p[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.p
    }

    /// Two-outcome distribution `(p_j, 1 - p_j)` along axis `j` (1-based).
    pub fn axis(&self, j: usize) -> ProbabilityPair {
        ProbabilityPair { p: self.p[j - 1] }
    }

    /// `sum_j (p_j - 1/2)^2`, the squared Bloch radius.
    pub fn radius_squared(&self) -> f64 {
        self.p.iter().map(|p| (p - 0.5) * (p - 0.5)).sum()
    }
}

impl TryFrom<[f64; 3]> for QubitProbabilities {
    type Error = Error;

    fn try_from(p: [f64; 3]) -> Result<Self> {
        Self::new(p[0], p[1], p[2])
    }
}

impl From<QubitProbabilities> for [f64; 3] {
    fn from(p: QubitProbabilities) -> Self {
        p.p
    }
}

/// A two-outcome distribution `(p, 1 - p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbabilityPair {
    p: f64,
}

impl ProbabilityPair {
    pub fn new(p: f64) -> Result<Self> {
        Ok(Self {
            p: check_probability("p", p)?,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }
}

pub fn qubit_density_from_probabilities(p: &QubitProbabilities) -> HermitianMatrix2 {
    let off = c64(p.p1() - 0.5, -(p.p2() - 0.5));
    HermitianMatrix2::new([
        [c64(p.p3(), 0.0), off],
        [off.conj(), c64(1.0 - p.p3(), 0.0)],
    ])
    .expect("constructed matrix is Hermitian")
}

/// Reads `p1 = Re rho12 + 1/2`, `p2 = -Im rho12 + 1/2`, `p3 = rho11`.
pub fn qubit_probabilities_from_density(m: &HermitianMatrix2) -> Result<QubitProbabilities> {
    m.ensure_unit_trace()?;
    let rho12 = m.get(0, 1);
    Ok(QubitProbabilities {
        p: [
            clamp_probability("p1", rho12.re + 0.5)?,
            clamp_probability("p2", -rho12.im + 0.5)?,
            clamp_probability("p3", m.get(0, 0).re)?,
        ],
    })
}

/// `1/2 +- sqrt(sum_j (p_j - 1/2)^2)`, largest first.
pub fn qubit_eigenvalues_probability_form(p: &QubitProbabilities) -> (f64, f64) {
    let r = p.radius_squared().sqrt();
    (0.5 + r, 0.5 - r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BallCheck {
    /// `sum_j (p_j - 1/2)^2`.
    pub radius_squared: f64,
    /// `1/4 - radius_squared`; nonnegative for quantum states.
    pub slack: f64,
    pub valid: bool,
}

pub fn qubit_ball_check(p: &QubitProbabilities) -> BallCheck {
    let radius_squared = p.radius_squared();
    BallCheck {
        radius_squared,
        slack: 0.25 - radius_squared,
        valid: radius_squared <= 0.25,
    }
}
