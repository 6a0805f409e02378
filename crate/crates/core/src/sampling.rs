//! Seeded random inputs: Ginibre density matrices, Haar unitaries, uniform
//! points of the qubit ball and random Kraus channels.
//!
//! The stream is ChaCha20 seeded through `SeedableRng::seed_from_u64`, with
//! normal variates from `rand_distr::StandardNormal`; both are portable, so a
//! seed reproduces the same samples on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::channel::{KrausChannel, Unitary};
use crate::matrix::{c64, diagonal, zeros, HermitianMatrix, Mat, C64};
use crate::qubit::QubitProbabilities;
use crate::qutrit::QutritProbabilities;

#[derive(Clone, Debug)]
pub struct SeededGenerator {
    seed: u64,
    rng: ChaCha20Rng,
    ball_draws: u64,
    ball_accepted: u64,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
            ball_draws: 0,
            ball_accepted: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_range(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.uniform()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex Gaussian, `E|z|^2 = 1`.
    pub fn complex_normal(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        c64(s * self.normal(), s * self.normal())
    }

    pub fn ginibre<const N: usize>(&mut self) -> Mat<N> {
        let mut g = zeros::<N>();
        for z in g.iter_mut().flatten() {
            *z = self.complex_normal();
        }
        g
    }

    /// `G G^dagger / Tr(G G^dagger)` for a complex Gaussian `G`.
    pub fn sample_density_matrix<const N: usize>(&mut self) -> HermitianMatrix<N> {
        let g = self.ginibre::<N>();
        let mut gg = zeros::<N>();
        for j in 0..N {
            for k in 0..N {
                gg[j][k] = (0..N).map(|l| g[j][l] * g[k][l].conj()).sum();
            }
        }
        let h = HermitianMatrix::hermitian_part(&gg);
        h.scale(1.0 / h.trace())
    }

    /// `u |0><0| u^dagger` for a Haar unitary `u`.
    pub fn sample_pure_state<const N: usize>(&mut self) -> HermitianMatrix<N> {
        let u = self.sample_unitary::<N>();
        let mut d = [0.0; N];
        d[0] = 1.0;
        HermitianMatrix::hermitian_part(&diagonal(d)).conjugate_by(&u)
    }

    /// Haar unitary: Gram-Schmidt on the columns of a complex Gaussian
    /// matrix, which fixes the phases so that `R` has a positive diagonal.
    pub fn sample_unitary<const N: usize>(&mut self) -> Mat<N> {
        let g = self.ginibre::<N>();
        let columns: Vec<Vec<C64>> = (0..N).map(|k| (0..N).map(|j| g[j][k]).collect()).collect();
        let q = gram_schmidt(columns);
        let mut u = zeros::<N>();
        for (k, col) in q.iter().enumerate() {
            for (j, z) in col.iter().enumerate() {
                u[j][k] = *z;
            }
        }
        u
    }

    pub fn sample_qutrit_unitary(&mut self) -> Unitary {
        Unitary::new(self.sample_unitary::<3>()).expect("Gram-Schmidt output is unitary")
    }

    /// Uniform point of `sum (p_j - 1/2)^2 <= 1/4` by rejection from the cube.
    pub fn sample_ball_probabilities(&mut self) -> QubitProbabilities {
        loop {
            let p = self.sample_cube_probabilities();
            self.ball_draws += 1;
            if p.radius_squared() <= 0.25 {
                self.ball_accepted += 1;
                return p;
            }
        }
    }

    /// `(draws, accepted)` of the ball sampler so far.
    pub fn ball_rejection_counts(&self) -> (u64, u64) {
        (self.ball_draws, self.ball_accepted)
    }

    pub fn sample_cube_probabilities(&mut self) -> QubitProbabilities {
        let (a, b, c) = (self.uniform(), self.uniform(), self.uniform());
        QubitProbabilities::new(a, b, c).expect("uniform variates lie in [0, 1)")
    }

    /// Uniform point of `[0, 1]^8`; the matrix need not be positive.
    pub fn sample_cube_qutrit(&mut self) -> QutritProbabilities {
        let mut pi = [0.0; 8];
        for x in pi.iter_mut() {
            *x = self.uniform();
        }
        QutritProbabilities::new(pi).expect("uniform variates lie in [0, 1)")
    }

    /// Kraus channel with `count` operators cut from a Haar-like isometry
    /// `W: C^3 -> C^(3 count)`, `V_k = W[3k..3k+3, :]`.
    pub fn sample_kraus_channel(&mut self, count: usize) -> KrausChannel {
        assert!(count >= 1);
        let rows = 3 * count;
        let columns: Vec<Vec<C64>> = (0..3)
            .map(|_| (0..rows).map(|_| self.complex_normal()).collect())
            .collect();
        let w = gram_schmidt(columns);
        let operators = (0..count)
            .map(|k| {
                let mut v = zeros::<3>();
                for (i, row) in v.iter_mut().enumerate() {
                    for (j, z) in row.iter_mut().enumerate() {
                        *z = w[j][3 * k + i];
                    }
                }
                v
            })
            .collect();
        KrausChannel::new(operators).expect("isometry blocks are complete")
    }
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
fn gram_schmidt(mut columns: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
    for k in 0..columns.len() {
        for _pass in 0..2 {
            for j in 0..k {
                let proj: C64 = columns[j]
                    .iter()
                    .zip(&columns[k])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let (done, rest) = columns.split_at_mut(k);
                for (x, q) in rest[0].iter_mut().zip(&done[j]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = columns[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in columns[k].iter_mut() {
            *x /= norm;
        }
    }
    columns
}
