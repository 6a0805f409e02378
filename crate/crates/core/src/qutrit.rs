//! Qutrit density matrices in terms of three artificial qubits.
//!
//! The eight probabilities are stored in the order
//! `(p1^(1), p2^(1), p3^(1), p1^(2), p2^(2), p3^(2), p1^(3), p2^(3))`;
//! the third artificial qubit shares `p3^(3) = p3^(2)`. With
//! `p^(k) = p1^(k) + i p2^(k)` and `gamma = (1 + i) / 2` the density matrix is
//!
//! ```text
//! [ p3^(2) + p3^(1) - 1     conj(p^(2) - gamma)    p^(1) - gamma ]
//! [ p^(2) - gamma           1 - p3^(2)             p^(3) - gamma ]
//! [ conj(p^(1) - gamma)     conj(p^(3) - gamma)    1 - p3^(1)    ]
//! ```
//!
//! Artificial qubit 1 enters through `rho13` rather than `rho31`, so its `p2`
//! is read with the opposite sign to the plain qubit convention.

use serde::Serialize;

use crate::error::Result;
use crate::matrix::{c64, HermitianMatrix2, HermitianMatrix3, C64, SPECTRAL_TOL};
use crate::qubit::{
    check_probability, clamp_probability, qubit_probabilities_from_density, QubitProbabilities,
};

/// `(1 + i) / 2`.
pub const GAMMA: C64 = c64(0.5, 0.5);

const NAMES: [&str; 8] = [
    "p1^(1)", "p2^(1)", "p3^(1)", "p1^(2)", "p2^(2)", "p3^(2)", "p1^(3)", "p2^(3)",
];

/// The eight independent probabilities describing a qutrit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(into = "[f64; 8]")]
pub struct QutritProbabilities {
    pi: [f64; 8],
}

impl QutritProbabilities {
    pub fn new(pi: [f64; 8]) -> Result<Self> {
        for (name, value) in NAMES.iter().zip(pi) {
            check_probability(name, value)?;
        }
        Ok(Self { pi })
    }

    /// Accepts values within [`crate::qubit::RANGE_TOL`] of the unit
    /// interval and clamps them onto it.
    pub fn new_clamped(pi: [f64; 8]) -> Result<Self> {
        let mut out = [0.0; 8];
        for ((slot, name), value) in out.iter_mut().zip(NAMES).zip(pi) {
            *slot = clamp_probability(name, value)?;
        }
        Ok(Self { pi: out })
    }

    /// Probabilities of the maximally mixed state `I / 3`.
    pub fn maximally_mixed() -> Self {
        let t = 2.0 / 3.0;
        Self {
            pi: [0.5, 0.5, t, 0.5, 0.5, t, 0.5, 0.5],
        }
    }

    pub fn as_array(&self) -> [f64; 8] {
        self.pi
    }

    /// `p_j^(k)` with 1-based `j, k`; `p3^(3)` is `p3^(2)`.
    pub fn get(&self, k: usize, j: usize) -> f64 {
        assert!((1..=3).contains(&k) && (1..=3).contains(&j));
        match (k, j) {
            (3, 3) => self.pi[5],
            _ => self.pi[3 * (k - 1) + (j - 1)],
        }
    }

    pub fn p3_of_qubit3(&self) -> f64 {
        self.pi[5]
    }

    /// `(p1^(k), p2^(k), p3^(k))` of artificial qubit `k` (1-based).
    pub fn qubit(&self, k: usize) -> QubitProbabilities {
        QubitProbabilities::new(self.get(k, 1), self.get(k, 2), self.get(k, 3))
            .expect("components are in range")
    }

    /// `p^(k) = p1^(k) + i p2^(k)`.
    pub fn complex(&self, k: usize) -> C64 {
        c64(self.get(k, 1), self.get(k, 2))
    }
}

impl From<QutritProbabilities> for [f64; 8] {
    fn from(q: QutritProbabilities) -> Self {
        q.pi
    }
}

/// Density matrix built from an arbitrary 8-vector (no range check).
pub(crate) fn density_from_coordinates(pi: &[f64; 8]) -> HermitianMatrix3 {
    let w = |k: usize| c64(pi[3 * (k - 1)], pi[3 * (k - 1) + 1]) - GAMMA;
    let (w1, w2, w3) = (w(1), w(2), w(3));
    let (p31, p32) = (pi[2], pi[5]);
    HermitianMatrix3::new([
        [c64(p32 + p31 - 1.0, 0.0), w2.conj(), w1],
        [w2, c64(1.0 - p32, 0.0), w3],
        [w1.conj(), w3.conj(), c64(1.0 - p31, 0.0)],
    ])
    .expect("constructed matrix is Hermitian")
}

pub fn qutrit_density_from_probabilities(q: &QutritProbabilities) -> HermitianMatrix3 {
    density_from_coordinates(&q.pi)
}

/// Artificial qubits `rho(1)`, `rho(2)` (partial traces of the qutrit
/// embedded in two qubits) and `rho(3)` (after exchanging levels 1 and 3).
pub fn extract_artificial_qubits(m: &HermitianMatrix3) -> Result<[HermitianMatrix2; 3]> {
    m.ensure_unit_trace()?;
    let r = |j: usize, k: usize| m.get(j - 1, k - 1);
    let block = |a: C64, b: C64, c: C64, d: C64| {
        HermitianMatrix2::new([[a, b], [c, d]]).expect("blocks of a Hermitian matrix are Hermitian")
    };
    Ok([
        block(r(1, 1) + r(2, 2), r(1, 3), r(3, 1), r(3, 3)),
        block(r(1, 1) + r(3, 3), r(1, 2), r(2, 1), r(2, 2)),
        block(r(3, 3) + r(1, 1), r(3, 2), r(2, 3), r(2, 2)),
    ])
}

pub fn qutrit_probabilities_from_density(m: &HermitianMatrix3) -> Result<QutritProbabilities> {
    let [rho1, rho2, rho3] = extract_artificial_qubits(m)?;
    // Qubit 1 is stored transposed relative to the plain qubit convention.
    let q1 = qubit_probabilities_from_density(&rho1.transposed())?;
    let q2 = qubit_probabilities_from_density(&rho2)?;
    let q3 = qubit_probabilities_from_density(&rho3)?;
    Ok(QutritProbabilities {
        pi: [
            q1.p1(),
            q1.p2(),
            q1.p3(),
            q2.p1(),
            q2.p2(),
            q2.p3(),
            q3.p1(),
            q3.p2(),
        ],
    })
}

/// Purity `Tr rho^2` written in the probabilities.
pub fn purity(q: &QutritProbabilities) -> f64 {
    let (p31, p32) = (q.get(1, 3), q.get(2, 3));
    let diagonal = (p32 + p31 - 1.0).powi(2) + (1.0 - p32).powi(2) + (1.0 - p31).powi(2);
    let off: f64 = (1..=3).map(|k| (q.complex(k) - GAMMA).norm_sqr()).sum();
    diagonal + 2.0 * off
}

/// Necessary positivity conditions expressed in the probabilities, with the
/// spectrum of the reconstructed matrix as ground truth.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuantumnessReport {
    /// `1/4 - sum_j (p_j^(k) - 1/2)^2` for `k = 1, 2, 3`.
    pub ball_margins: [f64; 3],
    /// `rho11 = p3^(1) + p3^(2) - 1`.
    pub diag_nonneg: f64,
    /// `(1 - p3^(2))(1 - p3^(1)) - |p^(3) - gamma|^2`.
    pub quadratic_margin: f64,
    /// Cubic polynomial in the probabilities; equals `det rho`.
    pub cubic_margin: f64,
    pub min_eigenvalue: f64,
    /// All of the above margins are `>= -1e-10`.
    pub inequalities_hold: bool,
    /// `min_eigenvalue >= -1e-10`.
    pub verdict: bool,
}

pub fn quadratic_margin(q: &QutritProbabilities) -> f64 {
    (1.0 - q.get(2, 3)) * (1.0 - q.get(1, 3)) - (q.complex(3) - GAMMA).norm_sqr()
}

pub fn cubic_margin(q: &QutritProbabilities) -> f64 {
    let (p31, p32) = (q.get(1, 3), q.get(2, 3));
    let d11 = p32 + p31 - 1.0;
    let d22 = 1.0 - p32;
    let d33 = 1.0 - p31;
    let w1 = q.complex(1) - GAMMA;
    let w2 = q.complex(2) - GAMMA;
    let w3 = q.complex(3) - GAMMA;
    let cyclic = w2 * w1 * w3.conj() + w2.conj() * w1.conj() * w3;
    d11 * d22 * d33 + cyclic.re
        - w1.conj().norm_sqr() * d22
        - w2.norm_sqr() * d33
        - w3.norm_sqr() * d11
}

pub fn quantumness_report(q: &QutritProbabilities) -> QuantumnessReport {
    let ball_margins = [1, 2, 3].map(|k| 0.25 - q.qubit(k).radius_squared());
    let diag_nonneg = q.get(1, 3) + q.get(2, 3) - 1.0;
    let quadratic_margin = quadratic_margin(q);
    let cubic_margin = cubic_margin(q);
    let min_eigenvalue = qutrit_density_from_probabilities(q).min_eigenvalue();
    let inequalities_hold = ball_margins
        .iter()
        .chain([&diag_nonneg, &quadratic_margin, &cubic_margin])
        .all(|m| *m >= -SPECTRAL_TOL);
    let verdict = min_eigenvalue >= -SPECTRAL_TOL;
    debug_assert!(
        !verdict || inequalities_hold,
        "necessary condition failed: {q:?}"
    );
    QuantumnessReport {
        ball_margins,
        diag_nonneg,
        quadratic_margin,
        cubic_margin,
        min_eigenvalue,
        inequalities_hold,
        verdict,
    }
}
