//! Small complex matrices: fixed-size Hermitian matrices for qubit and qutrit
//! density matrices, row-major vectorization and a dense complex matrix used
//! for Kronecker products and superoperators.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A plain `N x N` complex matrix, row-major.
pub type Mat<const N: usize> = [[C64; N]; N];

/// Tolerance on `|m[j][k] - conj(m[k][j])|` accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance used for traces, spectra and `unvec`.
pub const SPECTRAL_TOL: f64 = 1e-10;

pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zeros<const N: usize>() -> Mat<N> {
    [[C64::new(0.0, 0.0); N]; N]
}

pub fn identity<const N: usize>() -> Mat<N> {
    let mut m = zeros::<N>();
    for (j, row) in m.iter_mut().enumerate() {
        row[j] = C64::new(1.0, 0.0);
    }
    m
}

pub fn diagonal<const N: usize>(d: [f64; N]) -> Mat<N> {
    let mut m = zeros::<N>();
    for (j, row) in m.iter_mut().enumerate() {
        row[j] = C64::new(d[j], 0.0);
    }
    m
}

pub fn matmul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut out = zeros::<N>();
    for j in 0..N {
        for k in 0..N {
            out[j][k] = (0..N).map(|l| a[j][l] * b[l][k]).sum();
        }
    }
    out
}

pub fn adjoint<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut out = zeros::<N>();
    for j in 0..N {
        for k in 0..N {
            out[j][k] = a[k][j].conj();
        }
    }
    out
}

pub fn transpose<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut out = zeros::<N>();
    for j in 0..N {
        for k in 0..N {
            out[j][k] = a[k][j];
        }
    }
    out
}

pub fn trace<const N: usize>(a: &Mat<N>) -> C64 {
    (0..N).map(|j| a[j][j]).sum()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> f64 {
    let mut worst = 0.0_f64;
    for j in 0..N {
        for k in 0..N {
            worst = worst.max((a[j][k] - b[j][k]).norm());
        }
    }
    worst
}

pub fn hermiticity_residual<const N: usize>(a: &Mat<N>) -> f64 {
    max_abs_diff(a, &adjoint(a))
}

/// `max |u u^dagger - I|`.
pub fn unitarity_residual<const N: usize>(u: &Mat<N>) -> f64 {
    max_abs_diff(&matmul(u, &adjoint(u)), &identity::<N>())
}

pub fn determinant_3(a: &Mat<3>) -> C64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Complex Hermitian matrix of fixed size. Entries are finite and Hermitian
/// within [`HERMITIAN_TOL`]; unit trace and positivity are *not* invariants
/// and are checked where needed.
#[derive(Clone, Copy, PartialEq)]
pub struct HermitianMatrix<const N: usize> {
    entries: Mat<N>,
}

pub type HermitianMatrix2 = HermitianMatrix<2>;
pub type HermitianMatrix3 = HermitianMatrix<3>;

impl<const N: usize> fmt::Debug for HermitianMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

impl<const N: usize> HermitianMatrix<N> {
    pub fn new(entries: Mat<N>) -> Result<Self> {
        for (row, line) in entries.iter().enumerate() {
            for (col, z) in line.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        let residual = hermiticity_residual(&entries);
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self { entries })
    }

    /// Hermitian part `(m + m^dagger) / 2`. The result is exactly Hermitian.
    pub fn hermitian_part(m: &Mat<N>) -> Self {
        let mut entries = zeros::<N>();
        for j in 0..N {
            for k in 0..N {
                entries[j][k] = (m[j][k] + m[k][j].conj()) * 0.5;
            }
        }
        Self { entries }
    }

    pub fn from_real_diagonal(d: [f64; N]) -> Self {
        Self {
            entries: diagonal(d),
        }
    }

    /// `I / N`.
    pub fn maximally_mixed() -> Self {
        Self::from_real_diagonal([1.0 / N as f64; N])
    }

    pub fn entries(&self) -> &Mat<N> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|j| self.entries[j][j].re).sum()
    }

    pub fn ensure_unit_trace(&self) -> Result<()> {
        let trace = self.trace();
        if (trace - 1.0).abs() > SPECTRAL_TOL {
            return Err(Error::TraceNotUnit { trace });
        }
        Ok(())
    }

    /// `a m a^dagger`.
    pub fn conjugate_by(&self, a: &Mat<N>) -> Self {
        Self::hermitian_part(&matmul(&matmul(a, &self.entries), &adjoint(a)))
    }

    /// Entrywise complex conjugate, i.e. the transpose of a Hermitian matrix.
    pub fn transposed(&self) -> Self {
        Self {
            entries: transpose(&self.entries),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut entries = self.entries;
        for j in 0..N {
            for k in 0..N {
                entries[j][k] += other.entries[j][k];
            }
        }
        Self { entries }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut entries = self.entries;
        for row in entries.iter_mut() {
            for z in row.iter_mut() {
                *z *= factor;
            }
        }
        Self { entries }
    }

    /// `Tr(m^2) = sum |m_jk|^2`.
    pub fn trace_of_square(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of the difference.
    pub fn distance(&self, other: &Self) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }

    /// Eigenvalues in descending order (cyclic complex Jacobi).
    pub fn eigenvalues(&self) -> [f64; N] {
        jacobi_eigenvalues(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[N - 1]
    }
}

impl HermitianMatrix2 {
    pub fn determinant(&self) -> f64 {
        let m = &self.entries;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re
    }
}

impl HermitianMatrix3 {
    pub fn determinant(&self) -> f64 {
        determinant_3(&self.entries).re
    }

    /// Determinant of the 2x2 principal submatrix on rows/columns `i < j`.
    pub fn principal_minor(&self, i: usize, j: usize) -> f64 {
        let m = &self.entries;
        (m[i][i] * m[j][j] - m[i][j] * m[j][i]).re
    }
}

/// Both roots of `(m11 - l)(m22 - l) - m12 m21 = 0`, largest first.
pub fn eigenvalues_2(m: &HermitianMatrix2) -> (f64, f64) {
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let half_trace = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(m.get(0, 1).norm());
    (half_trace + radius, half_trace - radius)
}

pub fn eigenvalues_3(m: &HermitianMatrix3) -> (f64, f64, f64) {
    let [a, b, c] = m.eigenvalues();
    (a, b, c)
}

fn jacobi_eigenvalues<const N: usize>(m: &Mat<N>) -> [f64; N] {
    let mut a = *m;
    let scale: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut out = [0.0; N];
    if scale == 0.0 {
        return out;
    }
    let threshold = (1e-18 * scale).powi(2);
    for _sweep in 0..64 {
        let off: f64 = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let g = a[p][q].norm();
                if g < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = a[p][q] / g;
                let tau = (a[q][q].re - a[p][p].re) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                // W = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane;
                // a <- W^dagger a W.
                let w_qp = -phase.conj() * sin;
                let w_qq = phase.conj() * cos;
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * cos + y * w_qp;
                    row[q] = x * sin + y * w_qq;
                }
                for k in 0..N {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = x * cos + y * w_qp.conj();
                    a[q][k] = x * sin + y * w_qq.conj();
                }
            }
        }
    }
    for (j, value) in out.iter_mut().enumerate() {
        *value = a[j][j].re;
    }
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Row-major flattening `(m11, m12, m13, m21, ..., m33)` of a 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec9(pub [C64; 9]);

impl Vec9 {
    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn from_slice(values: &[C64]) -> Result<Self> {
        let array: [C64; 9] = values.try_into().map_err(|_| Error::DimensionMismatch {
            expected: 9,
            actual: values.len(),
        })?;
        Ok(Self(array))
    }
}

pub fn vec(m: &HermitianMatrix3) -> Vec9 {
    let mut out = [C64::new(0.0, 0.0); 9];
    for j in 0..3 {
        for k in 0..3 {
            out[3 * j + k] = m.get(j, k);
        }
    }
    Vec9(out)
}

/// Inverse of [`vec`]; rejects vectors whose matrix is not Hermitian within
/// [`SPECTRAL_TOL`]. Entries are kept as given.
pub fn unvec(v: &Vec9) -> Result<HermitianMatrix3> {
    let mut entries = zeros::<3>();
    for j in 0..3 {
        for k in 0..3 {
            entries[j][k] = v.0[3 * j + k];
        }
    }
    let residual = hermiticity_residual(&entries);
    if residual > SPECTRAL_TOL {
        return Err(Error::NotHermitian { residual });
    }
    if entries
        .iter()
        .flatten()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite { row: 0, col: 0 });
    }
    Ok(HermitianMatrix { entries })
}

/// Dense row-major complex matrix, used for superoperators and the affine
/// probability coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(j, j, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_square<const N: usize>(m: &Mat<N>) -> Self {
        Self {
            rows: N,
            cols: N,
            data: m.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for j in 0..self.rows {
            for l in 0..self.cols {
                let x = self.get(j, l);
                if x == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..other.cols {
                    out.data[j * other.cols + k] += x * other.get(l, k);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|j| (0..self.cols).map(|k| self.get(j, k) * v[k]).sum())
            .collect())
    }

    pub fn add_scaled(&mut self, other: &CMatrix, factor: f64) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += y * factor;
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// Kronecker product of two square matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    for m in [a, b] {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch {
                expected: m.rows,
                actual: m.cols,
            });
        }
    }
    let (n, p) = (a.rows, b.rows);
    let mut out = CMatrix::zeros(n * p, n * p);
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            for k in 0..p {
                for l in 0..p {
                    out.set(i * p + k, j * p + l, x * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// `u (x) conj(u)`, the action `vec(rho) -> vec(u rho u^dagger)`.
pub fn unitary_superoperator(u: &Mat<3>) -> CMatrix {
    let mut conj = *u;
    for z in conj.iter_mut().flatten() {
        *z = z.conj();
    }
    kron(&CMatrix::from_square(u), &CMatrix::from_square(&conj)).expect("3x3 operands are square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm3(entries: [[(f64, f64); 3]; 3]) -> HermitianMatrix3 {
        HermitianMatrix::new(entries.map(|row| row.map(|(re, im)| c64(re, im)))).unwrap()
    }

    #[test]
    fn eigenvalues_2_examples() {
        let m = HermitianMatrix2::maximally_mixed();
        assert_eq!(eigenvalues_2(&m), (0.5, 0.5));
        let m = HermitianMatrix2::from_real_diagonal([1.0, 0.0]);
        assert_eq!(eigenvalues_2(&m), (1.0, 0.0));
        let half = c64(0.5, 0.0);
        let m = HermitianMatrix::new([[half, half], [half, half]]).unwrap();
        let (a, b) = eigenvalues_2(&m);
        assert!((a - 1.0).abs() < 1e-12 && b.abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_3_diagonal_cases() {
        let (a, b, c) = eigenvalues_3(&HermitianMatrix3::maximally_mixed());
        for x in [a, b, c] {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
        let m = HermitianMatrix3::from_real_diagonal([0.0, 1.0, 0.0]);
        assert_eq!(eigenvalues_3(&m), (1.0, 0.0, 0.0));
    }

    #[test]
    fn jacobi_diagonalizes_complex_entries() {
        let m = herm3([
            [(0.5, 0.0), (0.1, -0.2), (0.0, 0.3)],
            [(0.1, 0.2), (0.3, 0.0), (-0.05, 0.1)],
            [(0.0, -0.3), (-0.05, -0.1), (0.2, 0.0)],
        ]);
        let ev = m.eigenvalues();
        assert!((ev.iter().sum::<f64>() - m.trace()).abs() < 1e-12);
        assert!((ev.iter().product::<f64>() - m.determinant()).abs() < 1e-12);
        assert!(ev[0] >= ev[1] && ev[1] >= ev[2]);
    }

    #[test]
    fn rejects_non_hermitian_and_non_finite() {
        let mut m = zeros::<2>();
        m[0][1] = c64(1.0, 0.0);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
        m[0][1] = c64(f64::NAN, 0.0);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn vec_of_maximally_mixed() {
        let v = vec(&HermitianMatrix3::maximally_mixed());
        let third = 1.0 / 3.0;
        let expected = [third, 0.0, 0.0, 0.0, third, 0.0, 0.0, 0.0, third];
        for (z, e) in v.0.iter().zip(expected) {
            assert_eq!(*z, c64(e, 0.0));
        }
    }

    #[test]
    fn unvec_rejects_non_hermitian() {
        let mut v = vec(&HermitianMatrix3::maximally_mixed());
        v.0[1] = c64(0.2, 0.0);
        assert!(matches!(unvec(&v), Err(Error::NotHermitian { .. })));
        assert!(Vec9::from_slice(&[c64(0.0, 0.0); 8]).is_err());
    }

    #[test]
    fn kron_examples() {
        let eye = CMatrix::identity(3);
        assert_eq!(kron(&eye, &eye).unwrap(), CMatrix::identity(9));

        let d = CMatrix::from_square(&diagonal([1.0, 2.0, 3.0]));
        let k = kron(&d, &eye).unwrap();
        let expected = diagonal([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0]);
        assert_eq!(k, CMatrix::from_square(&expected));

        let rect = CMatrix::zeros(2, 3);
        assert!(kron(&rect, &eye).is_err());
        assert!(eye.mul_vec(&[c64(1.0, 0.0)]).is_err());
    }
}
