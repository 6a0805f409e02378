//! Probability representation of qubit and qutrit states.
//!
//! A qubit density matrix is fixed by three probabilities of spin projections
//! along x, y and z. A qutrit density matrix is fixed by eight such
//! probabilities belonging to three artificial qubits. This crate converts
//! between the two pictures, checks the positivity and entropic inequalities
//! the probabilities must obey, computes the triangle and Malevich-square
//! geometry of each qubit, and writes qutrit channels as affine maps of the
//! probability vector.

#![allow(clippy::needless_range_loop)]

pub mod channel;
pub mod entropy;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod observable;
pub mod qubit;
pub mod qutrit;
pub mod sampling;

pub use error::{Error, Result};
pub use matrix::{HermitianMatrix2, HermitianMatrix3, C64};
pub use qubit::QubitProbabilities;
pub use qutrit::QutritProbabilities;
