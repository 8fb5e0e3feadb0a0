//! Dense complex matrices, Hermitian matrices and their spectral calculus.
//!
//! Every matrix function in the crate goes through [`eigh`], a cyclic Jacobi
//! eigensolver for Hermitian input. Sizes are small (n up to ~64), so the
//! solver favours accuracy over speed.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative slack for Hermitian symmetry: `|a_ij - conj(a_ji)| <= tol * (1 + max|a|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// An eigenvalue counts as nonnegative when `λ >= -PSD_REL_TOL * (1 + λ_max)`.
pub const PSD_REL_TOL: f64 = 1e-10;

/// Negative powers need `λ_min > PD_REL_THRESHOLD * λ_max`.
pub const PD_REL_THRESHOLD: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix of arbitrary shape.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major real and (optional) imaginary parts.
    pub fn from_parts(rows: usize, cols: usize, re: &[f64], im: Option<&[f64]>) -> Result<Self> {
        if re.len() != rows * cols {
            return Err(Error::InvalidShape(alloc::format!("expected {} real entries, got {}", rows * cols, re.len())));
        }
        if let Some(im) = im {
            if im.len() != re.len() {
                return Err(Error::InvalidShape(alloc::format!(
                    "expected {} imaginary entries, got {}",
                    re.len(),
                    im.len()
                )));
            }
        }
        let data = re.iter().enumerate().map(|(k, &x)| Complex64::new(x, im.map_or(0.0, |im| im[k]))).collect();
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }

    pub fn imag_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.im).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { left: self.rows, right: other.rows });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value, `sqrt(λ_max(X* X))`.
    pub fn spectral_norm(&self) -> f64 {
        let gram = HermitianMatrix::symmetrized(&self.adjoint().matmul(self).expect("shape"));
        libm::sqrt(eigh(&gram).max_eigenvalue().max(0.0))
    }

    /// Max-entry residual of `V* V - I`; zero for an exact isometry.
    pub fn isometry_residual(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("shape");
        gram.sub(&CMatrix::identity(self.cols)).expect("shape").max_abs()
    }
}

/// Dense Hermitian matrix. The symmetry invariant is checked on construction.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

impl HermitianMatrix {
    /// Validates `m` against the Hermitian tolerance and stores it with the
    /// diagonal made exactly real.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidShape(alloc::format!("{}x{} is not square", m.rows, m.cols)));
        }
        if m.rows == 0 {
            return Err(Error::InvalidShape("dimension must be at least 1".to_string()));
        }
        let tol = HERMITIAN_TOL * (1.0 + m.max_abs());
        let n = m.rows;
        let mut residual: f64 = 0.0;
        for i in 0..n {
            residual = residual.max(m[(i, i)].im.abs());
            for j in i + 1..n {
                residual = residual.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if !(residual <= tol) {
            return Err(Error::NonHermitianInput { residual });
        }
        let mut m = m;
        for i in 0..n {
            m[(i, i)].im = 0.0;
        }
        Ok(Self(m))
    }

    /// Row-major real and optional imaginary parts of an `n x n` matrix.
    pub fn from_parts(n: usize, re: &[f64], im: Option<&[f64]>) -> Result<Self> {
        Self::from_matrix(CMatrix::from_parts(n, n, re, im)?)
    }

    /// `(X + X*) / 2`, for products that are Hermitian up to rounding.
    pub fn symmetrized(m: &CMatrix) -> Self {
        assert!(m.is_square(), "symmetrized needs a square matrix");
        let n = m.rows;
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        Self(out)
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n))
    }

    pub fn scalar(n: usize, c: f64) -> Self {
        Self(CMatrix::identity(n).scale(c))
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Self(m)
    }

    /// Real symmetric matrix from row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        Self::from_parts(n, entries, None)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(Self(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(Self(self.0.sub(&other.0)?))
    }

    pub fn scale(&self, c: f64) -> HermitianMatrix {
        Self(self.0.scale(c))
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &HermitianMatrix, b: f64) -> Result<HermitianMatrix> {
        Ok(Self(self.0.zip_with(&other.0, |x, y| x * a + y * b)?))
    }

    /// `S H S*` for any `S` with `S.cols() == self.dim()`.
    pub fn congruence(&self, s: &CMatrix) -> Result<HermitianMatrix> {
        let sh = s.matmul(&self.0)?;
        Ok(Self::symmetrized(&sh.matmul(&s.adjoint())?))
    }

    /// Plain matrix product; not Hermitian in general.
    pub fn matmul(&self, other: &HermitianMatrix) -> Result<CMatrix> {
        self.0.matmul(&other.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }
}

impl core::ops::Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

/// Convergence controls for the Jacobi eigensolver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiSettings {
    /// Stop once the off-diagonal Frobenius mass is below `rel_tol * ||A||_F`.
    pub rel_tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-13, max_sweeps: 64 }
    }
}

impl JacobiSettings {
    /// Off-diagonal threshold scaled by 0.01, used to re-verify suspected violations.
    pub fn tightened(self) -> Self {
        Self { rel_tol: self.rel_tol * 0.01, max_sweeps: self.max_sweeps.max(128) }
    }
}

/// Eigenvalues sorted ascending with matching orthonormal eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `U diag(f(λ)) U*`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let u = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += u[(i, k)] * u[(j, k)].conj() * fl[k];
                }
                out[(i, j)] = acc;
                if i != j {
                    out[(j, i)] = acc.conj();
                }
            }
            out[(i, i)].im = 0.0;
        }
        HermitianMatrix(out)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map_eigenvalues(|l| l)
    }
}

/// Eigendecomposition with the default Jacobi settings.
pub fn eigh(a: &HermitianMatrix) -> SpectralDecomposition {
    eigh_with(a, JacobiSettings::default())
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of the
/// pivot `a_pq` and then applies the classic real rotation.
pub fn eigh_with(a: &HermitianMatrix, settings: JacobiSettings) -> SpectralDecomposition {
    let n = a.dim();
    let mut w = a.0.clone();
    let mut v = CMatrix::identity(n);
    let scale = w.frobenius_norm();

    if scale > 0.0 && n > 1 {
        let target = settings.rel_tol * scale;
        for _ in 0..settings.max_sweeps {
            if off_diagonal_norm(&w) <= target {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut w, &mut v, p, q);
                }
            }
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]));
    let eigenvalues = order.iter().map(|&i| raw[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    SpectralDecomposition { eigenvalues, eigenvectors }
}

fn off_diagonal_norm(w: &CMatrix) -> f64 {
    let n = w.rows;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

fn rotate(w: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let g = w[(p, q)];
    let r = g.norm();
    if r == 0.0 {
        return;
    }
    let phase_conj = (g / r).conj();
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // J = diag(1, e^{-iφ}) * [[c, s], [-s, c]] restricted to (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = phase_conj * (-s);
    let jqq = phase_conj * c;

    let n = w.rows;
    for k in 0..n {
        let hp = w[(k, p)];
        let hq = w[(k, q)];
        w[(k, p)] = hp * jpp + hq * jqp;
        w[(k, q)] = hp * jpq + hq * jqq;
    }
    for k in 0..n {
        let hp = w[(p, k)];
        let hq = w[(q, k)];
        w[(p, k)] = jpp.conj() * hp + jqp.conj() * hq;
        w[(q, k)] = jpq.conj() * hp + jqq.conj() * hq;
    }
    w[(p, q)] = ZERO;
    w[(q, p)] = ZERO;
    w[(p, p)].im = 0.0;
    w[(q, q)].im = 0.0;

    for k in 0..n {
        let up = v[(k, p)];
        let uq = v[(k, q)];
        v[(k, p)] = up * jpp + uq * jqp;
        v[(k, q)] = up * jpq + uq * jqq;
    }
}

/// Slack below zero still accepted as a nonnegative eigenvalue.
#[inline]
pub fn psd_slack(lambda_max: f64) -> f64 {
    PSD_REL_TOL * (1.0 + lambda_max.max(0.0))
}

/// Real power `A^t` through the spectral decomposition.
pub fn matrix_power(a: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    matrix_power_with(a, t, JacobiSettings::default())
}

pub fn matrix_power_with(a: &HermitianMatrix, t: f64, settings: JacobiSettings) -> Result<HermitianMatrix> {
    if t == 0.0 {
        return Ok(HermitianMatrix::identity(a.dim()));
    }
    if t == 1.0 {
        return Ok(a.clone());
    }
    power_of(&eigh_with(a, settings), t)
}

/// `U diag(λ^t) U*` for an existing decomposition, with the same domain checks
/// as [`matrix_power`].
pub fn power_of(d: &SpectralDecomposition, t: f64) -> Result<HermitianMatrix> {
    let lmin = d.min_eigenvalue();
    let lmax = d.max_eigenvalue();
    let integral = t >= 0.0 && libm::trunc(t) == t;
    if !integral && lmin < -psd_slack(lmax) {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: lmin });
    }
    if t < 0.0 && !(lmax > 0.0 && lmin > PD_REL_THRESHOLD * lmax) {
        return Err(Error::SingularMatrix { min_eigenvalue: lmin });
    }
    if t == 0.0 {
        return Ok(HermitianMatrix::identity(d.dim()));
    }
    Ok(if integral && t <= i32::MAX as f64 {
        let k = t as i32;
        d.map_eigenvalues(|l| libm::pow(l, k as f64))
    } else {
        d.map_eigenvalues(|l| libm::pow(l.max(0.0), t))
    })
}

/// `A^{-1}` for positive definite `A`.
pub fn inverse_pd(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    matrix_power(a, -1.0)
}

/// `λ_min(B - A)`; nonnegative exactly when `A ≤ B` in the Loewner order.
pub fn loewner_gap(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    loewner_gap_with(a, b, JacobiSettings::default())
}

pub fn loewner_gap_with(a: &HermitianMatrix, b: &HermitianMatrix, settings: JacobiSettings) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(eigh_with(&b.sub(a)?, settings).min_eigenvalue())
}

/// Operator norm `max |λ_i|`.
pub fn op_norm(a: &HermitianMatrix) -> f64 {
    let d = eigh(a);
    d.min_eigenvalue().abs().max(d.max_eigenvalue().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn rel_frobenius(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
        a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm().max(1e-300)
    }

    #[test]
    fn eigh_diagonal_sorts_ascending() {
        let d = eigh(&HermitianMatrix::diag(&[3.0, 1.0]));
        assert_eq!(d.eigenvalues, vec![1.0, 3.0]);
        // eigenvector for 1 is e_2, for 3 is e_1
        assert!(close(d.eigenvectors[(1, 0)].norm(), 1.0, 1e-15));
        assert!(close(d.eigenvectors[(0, 1)].norm(), 1.0, 1e-15));
    }

    #[test]
    fn eigh_two_by_two() {
        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let d = eigh(&a);
        assert!(close(d.eigenvalues[0], 1.0, 1e-14));
        assert!(close(d.eigenvalues[1], 3.0, 1e-14));
        assert!(rel_frobenius(&d.reconstruct(), &a) < 1e-14);
    }

    #[test]
    fn eigh_identity_reconstructs() {
        let i4 = HermitianMatrix::identity(4);
        let d = eigh(&i4);
        assert!(d.eigenvalues.iter().all(|&l| l == 1.0));
        assert!(rel_frobenius(&d.reconstruct(), &i4) < 1e-15);
    }

    #[test]
    fn eigh_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = HermitianMatrix::from_parts(2, &[2.0, 0.0, 0.0, 2.0], Some(&[0.0, 1.0, -1.0, 0.0])).unwrap();
        let d = eigh(&a);
        assert!(close(d.eigenvalues[0], 1.0, 1e-14));
        assert!(close(d.eigenvalues[1], 3.0, 1e-14));
        assert!(rel_frobenius(&d.reconstruct(), &a) < 1e-14);
        assert!(d.eigenvectors.isometry_residual() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = HermitianMatrix::from_real(2, &[1.0, 2.0, 0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NonHermitianInput { .. }));
        let err = HermitianMatrix::from_parts(1, &[1.0], Some(&[0.5])).unwrap_err();
        assert!(matches!(err, Error::NonHermitianInput { .. }));
    }

    #[test]
    fn power_examples() {
        let i3 = HermitianMatrix::identity(3);
        assert!(rel_frobenius(&matrix_power(&i3, 0.5).unwrap(), &i3) < 1e-15);

        let d = matrix_power(&HermitianMatrix::diag(&[4.0, 9.0]), 0.5).unwrap();
        assert!(rel_frobenius(&d, &HermitianMatrix::diag(&[2.0, 3.0])) < 1e-15);

        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let s = matrix_power(&a, 0.5).unwrap();
        // (sqrt(3) ± 1) / 2
        let hi = (3f64.sqrt() + 1.0) / 2.0;
        let lo = (3f64.sqrt() - 1.0) / 2.0;
        assert!(close(s[(0, 0)].re, hi, 1e-14) && close(s[(0, 1)].re, lo, 1e-14));
        assert!(close(hi, 1.3660, 1e-4) && close(lo, 0.3660, 1e-4));
        let sq = HermitianMatrix::symmetrized(&s.matmul(&s).unwrap());
        assert!(rel_frobenius(&sq, &a) < 1e-14);
    }

    #[test]
    fn power_domain_errors() {
        let indefinite = HermitianMatrix::diag(&[1.0, -1.0]);
        assert!(matches!(matrix_power(&indefinite, 0.5), Err(Error::NotPositiveSemidefinite { .. })));
        // integer powers are fine on indefinite input
        let sq = matrix_power(&indefinite, 2.0).unwrap();
        assert!(rel_frobenius(&sq, &HermitianMatrix::identity(2)) < 1e-15);

        let singular = HermitianMatrix::diag(&[0.0, 1.0]);
        assert!(matches!(matrix_power(&singular, -1.0), Err(Error::SingularMatrix { .. })));
        assert!(matrix_power(&singular, 0.5).is_ok());
    }

    #[test]
    fn loewner_gap_examples() {
        let g = loewner_gap(&HermitianMatrix::diag(&[1.0, 2.0]), &HermitianMatrix::diag(&[2.0, 3.0])).unwrap();
        assert!(close(g, 1.0, 1e-15));
        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert_eq!(loewner_gap(&a, &a).unwrap(), 0.0);
        let g = loewner_gap(&HermitianMatrix::diag(&[1.0, 3.0]), &HermitianMatrix::diag(&[2.0, 2.0])).unwrap();
        assert!(close(g, -1.0, 1e-15));
        assert!(matches!(
            loewner_gap(&HermitianMatrix::identity(2), &HermitianMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn op_norm_examples() {
        assert_eq!(op_norm(&HermitianMatrix::diag(&[1.0, -3.0])), 3.0);
        assert_eq!(op_norm(&HermitianMatrix::identity(5)), 1.0);
        let a = HermitianMatrix::from_real(2, &[0.0, 2.0, 2.0, 0.0]).unwrap();
        assert!(close(op_norm(&a), 2.0, 1e-15));
        assert_eq!(op_norm(&HermitianMatrix::scalar(3, 0.0)), 0.0);
    }

    #[test]
    fn spectral_norm_of_product() {
        // diag(1,2) * [[0,1],[1,0]] has singular values 1 and 2.
        let a = HermitianMatrix::diag(&[1.0, 2.0]);
        let x = HermitianMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(close(a.matmul(&x).unwrap().spectral_norm(), 2.0, 1e-14));
    }
}
