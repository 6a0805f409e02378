//! A qubit observable as three classical random variables.
//!
//! The Hermitian matrix `A` is split into `X = (X1, -X1)`, `Y = (Y1, -Y1)`
//! and `Z = (Z1, Z2)` with `X1 = Re a12`, `Y1 = -Im a12`, `Z1 = a11`,
//! `Z2 = a22`. Each variable is paired with the two-outcome distribution of
//! the matching axis, so `<A>` is a sum of three classical means.

use serde::Serialize;

use crate::matrix::{c64, C64};
use crate::qubit::QubitProbabilities;

/// Observable stored in reduced form; `a21 = conj(a12)` is implied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitObservable {
    pub a11: f64,
    pub a22: f64,
    pub a12: C64,
}

impl QubitObservable {
    pub fn new(a11: f64, a22: f64, a12: C64) -> Self {
        Self { a11, a22, a12 }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 1.0, c64(0.0, 0.0))
    }

    pub fn pauli_x() -> Self {
        Self::new(0.0, 0.0, c64(1.0, 0.0))
    }

    pub fn pauli_y() -> Self {
        Self::new(0.0, 0.0, c64(0.0, -1.0))
    }

    pub fn pauli_z() -> Self {
        Self::new(1.0, -1.0, c64(0.0, 0.0))
    }

    pub fn a21(&self) -> C64 {
        self.a12.conj()
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [
            [c64(self.a11, 0.0), self.a12],
            [self.a21(), c64(self.a22, 0.0)],
        ]
    }
}

/// The classical variables `X`, `Y`, `Z`; `X2 = -X1` and `Y2 = -Y1` hold by
/// construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalVariables {
    x1: f64,
    y1: f64,
    z: [f64; 2],
}

impl ClassicalVariables {
    /// `Z` is unconstrained.
    pub fn new(x1: f64, y1: f64, z1: f64, z2: f64) -> Self {
        Self {
            x1,
            y1,
            z: [z1, z2],
        }
    }

    pub fn x(&self) -> [f64; 2] {
        [self.x1, -self.x1]
    }

    pub fn y(&self) -> [f64; 2] {
        [self.y1, -self.y1]
    }

    pub fn z(&self) -> [f64; 2] {
        self.z
    }

    /// `a12 = X1 - i Y1`, `a11 = Z1`, `a22 = Z2`.
    pub fn to_observable(&self) -> QubitObservable {
        QubitObservable::new(self.z[0], self.z[1], c64(self.x1, -self.y1))
    }
}

pub fn classical_variables_from_observable(a: &QubitObservable) -> ClassicalVariables {
    // X1 = (a12 + a21) / 2, Y1 = i (a12 - a21) / 2
    let x1 = ((a.a12 + a.a21()) * 0.5).re;
    let y1 = (c64(0.0, 1.0) * (a.a12 - a.a21()) * 0.5).re;
    ClassicalVariables::new(x1, y1, a.a11, a.a22)
}

fn mean(values: [f64; 2], p: f64) -> f64 {
    p * values[0] + (1.0 - p) * values[1]
}

/// `p1 X1 + (1-p1) X2 + p2 Y1 + (1-p2) Y2 + p3 Z1 + (1-p3) Z2`.
pub fn mean_value(a: &QubitObservable, p: &QubitProbabilities) -> f64 {
    let v = classical_variables_from_observable(a);
    mean(v.x(), p.p1()) + mean(v.y(), p.p2()) + mean(v.z(), p.p3())
}

/// `<A^2> = (Z1 + Z2)(X.P1 + Y.P2) + X1^2 + Y1^2 + p3 (Z1^2 - Z2^2) + Z2^2`.
pub fn second_moment(a: &QubitObservable, p: &QubitProbabilities) -> f64 {
    let v = classical_variables_from_observable(a);
    let [z1, z2] = v.z();
    (z1 + z2) * (mean(v.x(), p.p1()) + mean(v.y(), p.p2()))
        + v.x1 * v.x1
        + v.y1 * v.y1
        + p.p3() * (z1 * z1 - z2 * z2)
        + z2 * z2
}

pub fn variance(a: &QubitObservable, p: &QubitProbabilities) -> f64 {
    let m = mean_value(a, p);
    second_moment(a, p) - m * m
}
