//! Qutrit channels as affine maps `Pi' = U Pi + Gamma` on the eight
//! probabilities.
//!
//! Both coordinate changes between `Pi` and `vec(rho)` are affine:
//! `vec(rho) = N Pi + d` and `Pi = M vec(rho) + c`. A channel with
//! superoperator `S` (acting on row-major `vec(rho)`) therefore acts on the
//! probabilities as `U = M S N`, `Gamma = M S d + c`. Both are real for any
//! Hermiticity-preserving `S`; the imaginary residue is checked.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    c64, identity, kron, matmul, unitarity_residual, unitary_superoperator, zeros, CMatrix,
    HermitianMatrix3, Mat, Vec9, C64, SPECTRAL_TOL,
};
use crate::qutrit::{
    density_from_coordinates, qutrit_density_from_probabilities, qutrit_probabilities_from_density,
    QutritProbabilities,
};

/// Tolerance on the imaginary part of a derived affine map.
pub const IMAGINARY_TOL: f64 = 1e-12;
/// Tolerance on mixture weights summing to one.
pub const WEIGHT_TOL: f64 = 1e-12;

/// The affine coordinate changes between `Pi` and `vec(rho)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateMaps {
    /// `N`, 9 x 8.
    pub forward_matrix: CMatrix,
    /// `d`, 9 entries.
    pub forward_offset: Vec<C64>,
    /// `M`, 8 x 9.
    pub backward_matrix: CMatrix,
    /// `c`, 8 entries.
    pub backward_offset: [f64; 8],
}

impl CoordinateMaps {
    pub fn to_vec9(&self, pi: &[f64; 8]) -> Vec9 {
        let pi: Vec<C64> = pi.iter().map(|x| c64(*x, 0.0)).collect();
        let mut v = self.forward_matrix.mul_vec(&pi).expect("9x8 times 8");
        for (x, d) in v.iter_mut().zip(&self.forward_offset) {
            *x += d;
        }
        Vec9::from_slice(&v).expect("nine entries")
    }

    /// Real part of `M v + c`.
    pub fn from_vec9(&self, v: &Vec9) -> [f64; 8] {
        let x = self
            .backward_matrix
            .mul_vec(v.as_slice())
            .expect("8x9 times 9");
        let mut out = self.backward_offset;
        for (o, z) in out.iter_mut().zip(x) {
            *o += z.re;
        }
        out
    }
}

pub fn probability_coordinates_maps() -> CoordinateMaps {
    let one = c64(1.0, 0.0);
    let i = c64(0.0, 1.0);
    let half = c64(0.5, 0.0);
    let gamma = c64(0.5, 0.5);

    // vec index: 0 r11, 1 r12, 2 r13, 3 r21, 4 r22, 5 r23, 6 r31, 7 r32, 8 r33
    let mut n = CMatrix::zeros(9, 8);
    let mut d = vec![c64(0.0, 0.0); 9];
    n.set(0, 2, one);
    n.set(0, 5, one);
    d[0] = c64(-1.0, 0.0);
    n.set(1, 3, one);
    n.set(1, 4, -i);
    d[1] = -gamma.conj();
    n.set(2, 0, one);
    n.set(2, 1, i);
    d[2] = -gamma;
    n.set(3, 3, one);
    n.set(3, 4, i);
    d[3] = -gamma;
    n.set(4, 5, -one);
    d[4] = one;
    n.set(5, 6, one);
    n.set(5, 7, i);
    d[5] = -gamma;
    n.set(6, 0, one);
    n.set(6, 1, -i);
    d[6] = -gamma.conj();
    n.set(7, 6, one);
    n.set(7, 7, -i);
    d[7] = -gamma.conj();
    n.set(8, 2, -one);
    d[8] = one;

    let mut m = CMatrix::zeros(8, 9);
    let ih = i * 0.5;
    // p1^(1), p2^(1) from rho13; p3^(1) = rho11 + rho22
    m.set(0, 2, half);
    m.set(0, 6, half);
    m.set(1, 2, -ih);
    m.set(1, 6, ih);
    m.set(2, 0, one);
    m.set(2, 4, one);
    // p1^(2), p2^(2) from rho12; p3^(2) = rho11 + rho33
    m.set(3, 1, half);
    m.set(3, 3, half);
    m.set(4, 1, ih);
    m.set(4, 3, -ih);
    m.set(5, 0, one);
    m.set(5, 8, one);
    // p1^(3), p2^(3) from rho32
    m.set(6, 5, half);
    m.set(6, 7, half);
    m.set(7, 5, -ih);
    m.set(7, 7, ih);
    let c = [0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5];

    CoordinateMaps {
        forward_matrix: n,
        forward_offset: d,
        backward_matrix: m,
        backward_offset: c,
    }
}

/// `Pi -> U Pi + Gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AffineChannelMap {
    /// Row-major 8 x 8.
    pub matrix: [[f64; 8]; 8],
    pub offset: [f64; 8],
}

impl AffineChannelMap {
    pub fn identity() -> Self {
        let mut matrix = [[0.0; 8]; 8];
        for (j, row) in matrix.iter_mut().enumerate() {
            row[j] = 1.0;
        }
        Self {
            matrix,
            offset: [0.0; 8],
        }
    }

    /// Derives the map of a superoperator acting on row-major `vec(rho)`.
    pub fn from_superoperator(s: &CMatrix) -> Result<Self> {
        if (s.rows(), s.cols()) != (9, 9) {
            return Err(Error::DimensionMismatch {
                expected: 81,
                actual: s.rows() * s.cols(),
            });
        }
        let coords = probability_coordinates_maps();
        let ms = coords.backward_matrix.matmul(s)?;
        let linear = ms.matmul(&coords.forward_matrix)?;
        let shift = ms.mul_vec(&coords.forward_offset)?;

        let mut residual = 0.0_f64;
        let mut matrix = [[0.0; 8]; 8];
        for (j, row) in matrix.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                let z = linear.get(j, k);
                residual = residual.max(z.im.abs());
                *x = z.re;
            }
        }
        let mut offset = coords.backward_offset;
        for (o, z) in offset.iter_mut().zip(&shift) {
            residual = residual.max(z.im.abs());
            *o += z.re;
        }
        if residual > IMAGINARY_TOL {
            return Err(Error::ImaginaryResidue { residual });
        }
        Ok(Self { matrix, offset })
    }

    pub fn apply(&self, pi: &[f64; 8]) -> [f64; 8] {
        let mut out = self.offset;
        for (o, row) in out.iter_mut().zip(&self.matrix) {
            *o += row.iter().zip(pi).map(|(a, b)| a * b).sum::<f64>();
        }
        out
    }

    /// Applies the map and checks that the result is still a probability
    /// vector (values within rounding of `[0, 1]` are clamped).
    pub fn apply_to(&self, q: &QutritProbabilities) -> Result<QutritProbabilities> {
        QutritProbabilities::new_clamped(self.apply(&q.as_array()))
    }

    /// Convex combination `sum w_k (U_k, Gamma_k)`.
    pub fn convex_combination(terms: &[(f64, AffineChannelMap)]) -> Self {
        let mut out = Self {
            matrix: [[0.0; 8]; 8],
            offset: [0.0; 8],
        };
        for (w, map) in terms {
            for (row, src) in out.matrix.iter_mut().zip(&map.matrix) {
                for (x, y) in row.iter_mut().zip(src) {
                    *x += w * y;
                }
            }
            for (x, y) in out.offset.iter_mut().zip(&map.offset) {
                *x += w * y;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let m = self
            .matrix
            .iter()
            .flatten()
            .zip(other.matrix.iter().flatten())
            .map(|(a, b)| (a - b).abs());
        let o = self
            .offset
            .iter()
            .zip(&other.offset)
            .map(|(a, b)| (a - b).abs());
        m.chain(o).fold(0.0, f64::max)
    }
}

/// A 3x3 unitary, `u u^dagger = I` within `1e-10`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary(Mat<3>);

impl Unitary {
    pub fn new(u: Mat<3>) -> Result<Self> {
        let residual = unitarity_residual(&u);
        if !residual.is_finite() || residual > SPECTRAL_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self(u))
    }

    pub fn identity() -> Self {
        Self(identity::<3>())
    }

    /// Exchanges levels `a` and `b` (1-based).
    pub fn swap_levels(a: usize, b: usize) -> Self {
        let mut u = zeros::<3>();
        for j in 0..3 {
            let image = if j == a - 1 {
                b - 1
            } else if j == b - 1 {
                a - 1
            } else {
                j
            };
            u[image][j] = c64(1.0, 0.0);
        }
        Self(u)
    }

    pub fn matrix(&self) -> &Mat<3> {
        &self.0
    }

    pub fn superoperator(&self) -> CMatrix {
        unitary_superoperator(&self.0)
    }
}

pub fn affine_map_from_unitary(u: &Unitary) -> Result<AffineChannelMap> {
    AffineChannelMap::from_superoperator(&u.superoperator())
}

/// `rho -> sum_k p_k u_k rho u_k^dagger`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitalMixture {
    terms: Vec<(f64, Unitary)>,
}

impl UnitalMixture {
    pub fn new(terms: Vec<(f64, Unitary)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidWeights {
                reason: "mixture has no terms".into(),
            });
        }
        if let Some((w, _)) = terms.iter().find(|(w, _)| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidWeights {
                reason: format!("weight {w} outside [0, 1]"),
            });
        }
        let total: f64 = terms.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights {
                reason: format!("weights sum to {total}"),
            });
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, Unitary)] {
        &self.terms
    }

    pub fn superoperator(&self) -> CMatrix {
        let mut s = CMatrix::zeros(9, 9);
        for (w, u) in &self.terms {
            s.add_scaled(&u.superoperator(), *w).expect("9x9");
        }
        s
    }

    pub fn apply_matrix(&self, rho: &HermitianMatrix3) -> HermitianMatrix3 {
        self.terms
            .iter()
            .map(|(w, u)| rho.conjugate_by(u.matrix()).scale(*w))
            .reduce(|a, b| a.add(&b))
            .expect("non-empty mixture")
    }
}

/// `sum_k p_k U_k` with the matching convex combination of offsets.
pub fn affine_map_from_unital(mix: &UnitalMixture) -> Result<AffineChannelMap> {
    let terms = mix
        .terms
        .iter()
        .map(|(w, u)| Ok((*w, affine_map_from_unitary(u)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AffineChannelMap::convex_combination(&terms))
}

/// `rho -> sum_k V_k rho V_k^dagger` with `sum V_k^dagger V_k = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    operators: Vec<Mat<3>>,
}

pub fn completeness_residual(operators: &[Mat<3>]) -> f64 {
    let mut sum = zeros::<3>();
    for v in operators {
        let vv = matmul(&crate::matrix::adjoint(v), v);
        for j in 0..3 {
            for k in 0..3 {
                sum[j][k] += vv[j][k];
            }
        }
    }
    crate::matrix::max_abs_diff(&sum, &identity::<3>())
}

impl KrausChannel {
    pub fn new(operators: Vec<Mat<3>>) -> Result<Self> {
        let residual = completeness_residual(&operators);
        if !residual.is_finite() || residual > SPECTRAL_TOL {
            return Err(Error::IncompleteKraus { residual });
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[Mat<3>] {
        &self.operators
    }

    pub fn superoperator(&self) -> CMatrix {
        let mut s = CMatrix::zeros(9, 9);
        for v in &self.operators {
            let mut conj = *v;
            for z in conj.iter_mut().flatten() {
                *z = z.conj();
            }
            let term = kron(&CMatrix::from_square(v), &CMatrix::from_square(&conj)).expect("3x3");
            s.add_scaled(&term, 1.0).expect("9x9");
        }
        s
    }

    pub fn apply_matrix(&self, rho: &HermitianMatrix3) -> HermitianMatrix3 {
        let mut out = zeros::<3>();
        for v in &self.operators {
            let term = matmul(&matmul(v, rho.entries()), &crate::matrix::adjoint(v));
            for j in 0..3 {
                for k in 0..3 {
                    out[j][k] += term[j][k];
                }
            }
        }
        HermitianMatrix3::hermitian_part(&out)
    }

    pub fn affine_map(&self) -> Result<AffineChannelMap> {
        AffineChannelMap::from_superoperator(&self.superoperator())
    }
}

/// Keeps the diagonal and removes every coherence: Kraus operators are the
/// three projectors onto the basis states.
pub fn dephasing_channel() -> KrausChannel {
    let operators = (0..3)
        .map(|j| {
            let mut p = zeros::<3>();
            p[j][j] = c64(1.0, 0.0);
            p
        })
        .collect();
    KrausChannel::new(operators).expect("projectors resolve the identity")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelOutput {
    pub probabilities: QutritProbabilities,
    pub input_psd: bool,
    pub output_psd: bool,
}

fn is_psd(m: &HermitianMatrix3) -> bool {
    m.min_eigenvalue() >= -SPECTRAL_TOL
}

/// Applies the channel in the matrix domain and reads back the
/// probabilities. A non-positive input is flagged, not rejected.
pub fn apply_kraus(ch: &KrausChannel, q: &QutritProbabilities) -> Result<ChannelOutput> {
    let rho = qutrit_density_from_probabilities(q);
    let out = ch.apply_matrix(&rho);
    Ok(ChannelOutput {
        probabilities: qutrit_probabilities_from_density(&out)?,
        input_psd: is_psd(&rho),
        output_psd: is_psd(&out),
    })
}

/// Transposition of one artificial qubit: conjugates the off-diagonal pair
/// `rho13` (qubit 1), `rho12` (qubit 2) or `rho23` (qubit 3). In the
/// probabilities this is `p2^(k) -> 1 - p2^(k)`. Positive but not completely
/// positive, so outputs carry a positivity flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartialTranspose {
    which: usize,
}

impl PartialTranspose {
    fn pair(&self) -> (usize, usize) {
        match self.which {
            1 => (0, 2),
            2 => (0, 1),
            _ => (1, 2),
        }
    }

    pub fn which(&self) -> usize {
        self.which
    }

    pub fn apply_matrix(&self, rho: &HermitianMatrix3) -> HermitianMatrix3 {
        let (a, b) = self.pair();
        let mut m = *rho.entries();
        m[a][b] = rho.get(b, a);
        m[b][a] = rho.get(a, b);
        HermitianMatrix3::new(m).expect("swapping a conjugate pair keeps Hermiticity")
    }

    pub fn superoperator(&self) -> CMatrix {
        let (a, b) = self.pair();
        let mut s = CMatrix::identity(9);
        let (x, y) = (3 * a + b, 3 * b + a);
        for (r, c) in [(x, x), (y, y)] {
            s.set(r, c, c64(0.0, 0.0));
        }
        s.set(x, y, c64(1.0, 0.0));
        s.set(y, x, c64(1.0, 0.0));
        s
    }

    pub fn affine_map(&self) -> Result<AffineChannelMap> {
        AffineChannelMap::from_superoperator(&self.superoperator())
    }

    pub fn apply(&self, q: &QutritProbabilities) -> Result<ChannelOutput> {
        let rho = qutrit_density_from_probabilities(q);
        let out = self.apply_matrix(&rho);
        Ok(ChannelOutput {
            probabilities: qutrit_probabilities_from_density(&out)?,
            input_psd: is_psd(&rho),
            output_psd: is_psd(&out),
        })
    }
}

/// `which` is 1, 2 or 3.
pub fn transpose_artificial_qubit_map(which: usize) -> Result<PartialTranspose> {
    if !(1..=3).contains(&which) {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: which,
        });
    }
    Ok(PartialTranspose { which })
}

/// Any of the supported maps.
#[derive(Clone, Debug, PartialEq)]
pub enum Channel {
    Unitary(Unitary),
    Unital(UnitalMixture),
    Kraus(KrausChannel),
    Transpose(PartialTranspose),
}

impl Channel {
    pub fn dephasing() -> Self {
        Channel::Kraus(dephasing_channel())
    }

    pub fn is_completely_positive(&self) -> bool {
        !matches!(self, Channel::Transpose(_))
    }

    pub fn superoperator(&self) -> CMatrix {
        match self {
            Channel::Unitary(u) => u.superoperator(),
            Channel::Unital(mix) => mix.superoperator(),
            Channel::Kraus(k) => k.superoperator(),
            Channel::Transpose(t) => t.superoperator(),
        }
    }

    pub fn apply_matrix(&self, rho: &HermitianMatrix3) -> HermitianMatrix3 {
        match self {
            Channel::Unitary(u) => rho.conjugate_by(u.matrix()),
            Channel::Unital(mix) => mix.apply_matrix(rho),
            Channel::Kraus(k) => k.apply_matrix(rho),
            Channel::Transpose(t) => t.apply_matrix(rho),
        }
    }

    pub fn affine_map(&self) -> Result<AffineChannelMap> {
        match self {
            Channel::Unitary(u) => affine_map_from_unitary(u),
            Channel::Unital(mix) => affine_map_from_unital(mix),
            Channel::Kraus(k) => k.affine_map(),
            Channel::Transpose(t) => t.affine_map(),
        }
    }

    /// Applies the derived affine map to the probabilities and flags
    /// positivity of input and output.
    pub fn apply(&self, q: &QutritProbabilities) -> Result<ChannelOutput> {
        let map = self.affine_map()?;
        let out = map.apply(&q.as_array());
        let input = qutrit_density_from_probabilities(q);
        let output = density_from_coordinates(&out);
        Ok(ChannelOutput {
            probabilities: QutritProbabilities::new_clamped(out)?,
            input_psd: is_psd(&input),
            output_psd: is_psd(&output),
        })
    }
}
