//! Relative entropies between the two-outcome distributions of the
//! artificial qubits, and the matrix-element form of the same inequality.

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::matrix::{c64, HermitianMatrix3};
use crate::qubit::ProbabilityPair;
use crate::qutrit::QutritProbabilities;

/// Relative entropy in nats; infinite when the second distribution puts zero
/// mass where the first does not.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    pub fn value(&self) -> f64 {
        match self {
            Divergence::Finite(v) => *v,
            Divergence::Infinite => f64::INFINITY,
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        matches!(self, Divergence::Finite(v) if v.abs() <= tol)
    }
}

impl Serialize for Divergence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Divergence::Finite(v) => serializer.serialize_f64(*v),
            Divergence::Infinite => serializer.serialize_str("infinity"),
        }
    }
}

fn term(p: f64, q: f64) -> Option<f64> {
    if p == 0.0 {
        Some(0.0)
    } else if q == 0.0 {
        None
    } else {
        Some(p * (p / q).ln())
    }
}

/// `D(a || b) = p ln(p/p') + (1-p) ln((1-p)/(1-p'))` with `0 ln 0 = 0`.
pub fn relative_entropy(a: ProbabilityPair, b: ProbabilityPair) -> Divergence {
    match (term(a.p(), b.p()), term(a.q(), b.q())) {
        (Some(x), Some(y)) => Divergence::Finite(x + y),
        _ => Divergence::Infinite,
    }
}

/// Shannon entropy of `(p, 1 - p)` in nats.
pub fn shannon_entropy(a: ProbabilityPair) -> f64 {
    [a.p(), a.q()]
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| -p * p.ln())
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelativeEntropyResult {
    pub value: Divergence,
    pub first: ProbabilityPair,
    pub second: ProbabilityPair,
    /// Artificial qubit of the first distribution (1-based).
    pub k: usize,
    /// Artificial qubit of the second distribution (1-based).
    pub k_prime: usize,
    /// Spin axis, 1 = x, 2 = y, 3 = z.
    pub axis: usize,
}

/// `D((p_j^(k), 1 - p_j^(k)) || (p_j^(k'), 1 - p_j^(k')))` for every axis `j`
/// and every ordered pair `k != k'`, 18 values in total.
pub fn qutrit_entropic_suite(q: &QutritProbabilities) -> Vec<RelativeEntropyResult> {
    let mut out = Vec::with_capacity(18);
    for axis in 1..=3 {
        for k in 1..=3 {
            for k_prime in (1..=3).filter(|kp| *kp != k) {
                let first = q.qubit(k).axis(axis);
                let second = q.qubit(k_prime).axis(axis);
                out.push(RelativeEntropyResult {
                    value: relative_entropy(first, second),
                    first,
                    second,
                    k,
                    k_prime,
                    axis,
                });
            }
        }
    }
    out
}

/// Permutation of the level indices `1, 2, 3`, stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Permutation([usize; 3]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([0, 1, 2]);

    /// From 1-based images, e.g. `[2, 1, 3]` swaps levels 1 and 2.
    pub fn new(images: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for i in images {
            if !(1..=3).contains(&i) || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
        }
        Some(Self(images.map(|i| i - 1)))
    }

    pub fn all() -> [Permutation; 6] {
        [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ]
        .map(|p| Self::new(p).expect("valid permutation"))
    }

    pub fn images(&self) -> [usize; 3] {
        self.0.map(|i| i + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MatrixEntropyOutcome {
    Value {
        permutation: [usize; 3],
        terms: [f64; 2],
        value: f64,
        nonnegative: bool,
    },
    /// The ratio inside the logarithm of `term` (1 or 2) is not positive.
    DomainFailure {
        permutation: [usize; 3],
        term: usize,
        numerator: f64,
        denominator: f64,
    },
}

/// Evaluates, with `r_ab = rho_{s(a) s(b)}` for the permutation `s`,
///
/// ```text
/// (r12 + r21 + 1)/2 ln[(r12 + r21 + 1)/(r13 + r31 + 1)]
///   + [i(r12 - r21) - 1]/2 ln[(i(r12 - r21) - 1)/(i(r13 - r31) - 1)]
/// ```
///
/// exactly as written. No sign is asserted; the second term does not reduce
/// to a relative entropy under the canonical convention.
pub fn matrix_element_entropy_diagnostic(
    m: &HermitianMatrix3,
    permutation: Permutation,
) -> Result<MatrixEntropyOutcome> {
    m.ensure_unit_trace()?;
    let s = permutation.0;
    let r = |a: usize, b: usize| m.get(s[a - 1], s[b - 1]);
    let i = c64(0.0, 1.0);
    let pairs = [
        ((r(1, 2) + r(2, 1)).re + 1.0, (r(1, 3) + r(3, 1)).re + 1.0),
        (
            (i * (r(1, 2) - r(2, 1))).re - 1.0,
            (i * (r(1, 3) - r(3, 1))).re - 1.0,
        ),
    ];
    let mut terms = [0.0; 2];
    for (index, (numerator, denominator)) in pairs.into_iter().enumerate() {
        if numerator == 0.0 {
            continue;
        }
        let ratio = numerator / denominator;
        if !(ratio.is_finite() && ratio > 0.0) {
            return Ok(MatrixEntropyOutcome::DomainFailure {
                permutation: permutation.images(),
                term: index + 1,
                numerator,
                denominator,
            });
        }
        terms[index] = 0.5 * numerator * ratio.ln();
    }
    let value = terms[0] + terms[1];
    Ok(MatrixEntropyOutcome::Value {
        permutation: permutation.images(),
        terms,
        value,
        nonnegative: value >= 0.0,
    })
}
