// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices and the Hermitian / positive semidefinite /
//! correlation wrappers built on top of them.

mod eigen;
mod io;
mod sample;

use std::ops::Deref;

use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};

pub use eigen::{eigenvalues, eigh, hermitian_eigen, EigenDecomposition, Spectrum};
pub use io::{format_f64, GramJson, JsonNumber, MatrixJson, F17};
pub use sample::{sample_psd, SampleKind};

/// Largest magnitude for which an `f64` integer is treated as exact.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

/// Relative slack for Hermitian symmetry of float entries.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_TOL * trace` are accepted as nonnegative.
pub const PSD_TOL: f64 = 1e-9;
/// Relative slack for Gram reconstruction, scaled by the trace.
pub const GRAM_TOL: f64 = 1e-10;
/// Slack on the unit diagonal of a correlation matrix.
pub const CORRELATION_TOL: f64 = 1e-12;

fn exact_part(z: Complex64) -> Option<Complex<i64>> {
    let ok = |x: f64| x.is_finite() && x.fract() == 0.0 && x.abs() <= EXACT_LIMIT;
    (ok(z.re) && ok(z.im)).then(|| Complex::new(z.re as i64, z.im as i64))
}

/// Dense row-major complex matrix.
///
/// When every entry is a Gaussian integer the integer parts are kept
/// alongside the floats and the permanent/determinant kernels switch to
/// exact arithmetic. Composition of an exact and a float matrix is float.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
    exact: Option<Vec<Complex<i64>>>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries, detecting Gaussian-integer exactness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let exact = data.iter().map(|&z| exact_part(z)).collect::<Option<Vec<_>>>();
        Ok(CMatrix { rows, cols, data, exact })
    }

    /// Like [`CMatrix::from_vec`] but never sets the exact flag.
    pub fn from_vec_float(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        let mut m = Self::from_vec(rows, cols, data)?;
        m.exact = None;
        Ok(m)
    }

    pub fn from_gaussian(rows: usize, cols: usize, entries: Vec<Complex<i64>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = entries.iter().map(|z| Complex64::new(z.re as f64, z.im as f64)).collect();
        Ok(CMatrix { rows, cols, data, exact: Some(entries) })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
            exact: Some(vec![Complex::new(0, 0); rows * cols]),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set_exact(i, i, Complex::new(1, 0));
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(1.0, 0.0); rows * cols],
            exact: Some(vec![Complex::new(1, 0); rows * cols]),
        }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &z) in d.iter().enumerate() {
            data[i * n + i] = z;
        }
        Self::from_vec(n, n, data).expect("square by construction")
    }

    fn set_exact(&mut self, i: usize, j: usize, z: Complex<i64>) {
        let k = i * self.cols + j;
        self.data[k] = Complex64::new(z.re as f64, z.im as f64);
        if let Some(e) = self.exact.as_mut() {
            e[k] = z;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_entries(&self) -> Option<&[Complex<i64>]> {
        self.exact.as_deref()
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn map_entries(&self, f: impl Fn(Complex64) -> Complex64, fe: impl Fn(Complex<i64>) -> Complex<i64>) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
            exact: self.exact.as_ref().map(|e| e.iter().map(|&z| fe(z)).collect()),
        }
    }

    /// Entrywise complex conjugate `Ā`.
    pub fn conj(&self) -> Self {
        self.map_entries(|z| z.conj(), |z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        let mut exact = self.exact.as_ref().map(|_| Vec::with_capacity(self.data.len()));
        for j in 0..self.cols {
            for i in 0..self.rows {
                let k = i * self.cols + j;
                data.push(self.data[k]);
                if let (Some(out), Some(e)) = (exact.as_mut(), self.exact.as_ref()) {
                    out.push(e[k]);
                }
            }
        }
        CMatrix { rows: self.cols, cols: self.rows, data, exact }
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: f64) -> Self {
        let data = self.data.iter().map(|z| z * s).collect();
        CMatrix::from_vec(self.rows, self.cols, data).expect("same shape")
    }

    pub fn add(&self, other: &CMatrix) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| Some(Complex::new(x.re.checked_add(y.re)?, x.im.checked_add(y.im)?)))
                .collect(),
            _ => None,
        };
        Ok(CMatrix { rows: self.rows, cols: self.cols, data, exact })
    }

    fn same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Matrix product; exact when both factors are exact and no entry overflows.
    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if let Some(entries) = exact_matmul(a, b, n, m, p) {
                return CMatrix::from_gaussian(n, p, entries);
            }
        }
        let mut data = vec![Complex64::new(0.0, 0.0); n * p];
        for i in 0..n {
            for k in 0..m {
                let aik = self.data[i * m + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..p {
                    data[i * p + j] += aik * other.data[k * p + j];
                }
            }
        }
        CMatrix::from_vec_float(n, p, data)
    }

    /// `A^k` for square `A`.
    pub fn pow(&self, k: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = CMatrix::identity(n);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Entrywise (Hadamard/Schur) product `A ∘ B`.
    pub fn hadamard(&self, other: &CMatrix) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let re = x.re.checked_mul(y.re)?.checked_sub(x.im.checked_mul(y.im)?)?;
                    let im = x.re.checked_mul(y.im)?.checked_add(x.im.checked_mul(y.re)?)?;
                    Some(Complex::new(re, im))
                })
                .collect(),
            _ => None,
        };
        Ok(CMatrix { rows: self.rows, cols: self.cols, data, exact })
    }

    /// Block-diagonal `A ⊕ B`.
    pub fn direct_sum(&self, other: &CMatrix) -> Result<Self> {
        let a = self.require_square()?;
        let b = other.require_square()?;
        let n = a + b;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..a {
            data[i * n..i * n + a].copy_from_slice(self.row(i));
        }
        for i in 0..b {
            data[(a + i) * n + a..(a + i) * n + n].copy_from_slice(other.row(i));
        }
        let mut out = CMatrix::from_vec_float(n, n, data)?;
        if self.is_exact() && other.is_exact() {
            out.exact = out.data.iter().map(|&z| exact_part(z)).collect();
        }
        Ok(out)
    }

    /// Submatrix on the given rows and columns (0-based, any order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange(format!("row {bad} of {}", self.rows)));
        }
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange(format!("column {bad} of {}", self.cols)));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        let mut exact = self.exact.as_ref().map(|_| Vec::with_capacity(rows.len() * cols.len()));
        for &i in rows {
            for &j in cols {
                let k = i * self.cols + j;
                data.push(self.data[k]);
                if let (Some(out), Some(e)) = (exact.as_mut(), self.exact.as_ref()) {
                    out.push(e[k]);
                }
            }
        }
        Ok(CMatrix { rows: rows.len(), cols: cols.len(), data, exact })
    }

    /// Returns `(A[α|β], A(α|β))`: the submatrix on rows α and columns β,
    /// and the complementary submatrix with those rows and columns removed.
    pub fn submatrices(&self, alpha: &[usize], beta: &[usize]) -> Result<(CMatrix, CMatrix)> {
        if alpha.len() != beta.len() {
            return Err(Error::SizeMismatch(format!(
                "|α| = {} but |β| = {}",
                alpha.len(),
                beta.len()
            )));
        }
        let kept = self.select(alpha, beta)?;
        let rest_rows: Vec<usize> = (0..self.rows).filter(|i| !alpha.contains(i)).collect();
        let rest_cols: Vec<usize> = (0..self.cols).filter(|j| !beta.contains(j)).collect();
        let removed = self.select(&rest_rows, &rest_cols)?;
        Ok((kept, removed))
    }

    /// `A(i|j)`: delete row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Result<CMatrix> {
        Ok(self.submatrices(&[i], &[j])?.1)
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.diag().into_iter().sum()
    }

    /// Frobenius norm `‖A‖_F`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn has_zero_row(&self) -> bool {
        (0..self.rows).any(|i| self.row(i).iter().all(|z| z.norm() == 0.0))
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Copy with `a_ji = conj(a_ij)` forced from the upper triangle and a real diagonal.
    fn hermitize_upper(&self) -> CMatrix {
        let n = self.rows;
        let mut data = self.data.clone();
        for i in 0..n {
            data[i * n + i].im = 0.0;
            for j in i + 1..n {
                data[j * n + i] = data[i * n + j].conj();
            }
        }
        let mut out = CMatrix::from_vec_float(n, n, data).expect("same shape");
        if self.is_exact() {
            out.exact = out.data.iter().map(|&z| exact_part(z)).collect();
        }
        out
    }
}

fn exact_matmul(
    a: &[Complex<i64>],
    b: &[Complex<i64>],
    n: usize,
    m: usize,
    p: usize,
) -> Option<Vec<Complex<i64>>> {
    let mut out = Vec::with_capacity(n * p);
    for i in 0..n {
        for j in 0..p {
            let (mut re, mut im) = (0i128, 0i128);
            for k in 0..m {
                let x = a[i * m + k];
                let y = b[k * p + j];
                re += x.re as i128 * y.re as i128 - x.im as i128 * y.im as i128;
                im += x.re as i128 * y.im as i128 + x.im as i128 * y.re as i128;
            }
            let fits = |v: i128| v.unsigned_abs() <= EXACT_LIMIT as u128;
            if !fits(re) || !fits(im) {
                return None;
            }
            out.push(Complex::new(re as i64, im as i64));
        }
    }
    Some(out)
}

/// Square matrix with `a_ij = conj(a_ji)` and a real diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    base: CMatrix,
}

impl HermitianMatrix {
    /// Validates symmetry: exactly for exact entries, within
    /// `1e-12 · max|a|` otherwise. Reports the worst offending pair.
    pub fn new(base: CMatrix) -> Result<Self> {
        let n = base.require_square()?;
        let tol = if base.is_exact() { 0.0 } else { HERMITIAN_TOL * base.max_abs() };
        let mut worst: Option<(f64, usize, usize)> = None;
        for i in 0..n {
            for j in i..n {
                let err = (base.get(i, j) - base.get(j, i).conj()).norm();
                if err > tol && worst.is_none_or(|(w, _, _)| err > w) {
                    worst = Some((err, i, j));
                }
            }
        }
        if let Some((_, i, j)) = worst {
            return Err(Error::NotHermitian { i: i + 1, j: j + 1 });
        }
        Ok(HermitianMatrix { base: base.hermitize_upper() })
    }

    /// Builds from a grid of entries (`build_hermitian`).
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        Self::new(CMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix { base: CMatrix::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.base.rows
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> CMatrix {
        self.base
    }

    pub fn trace_re(&self) -> f64 {
        self.base.trace().re
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { base: self.base.select(idx, idx)? })
    }

    pub fn conj(&self) -> HermitianMatrix {
        HermitianMatrix { base: self.base.conj() }
    }

    pub fn hadamard(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { base: self.base.hadamard(&other.base)?.hermitize_upper() })
    }

    pub fn direct_sum(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { base: self.base.direct_sum(&other.base)? })
    }
}

impl Deref for HermitianMatrix {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.base
    }
}

/// How positive semidefiniteness was certified.
#[derive(Clone, Debug, PartialEq)]
pub enum PsdWitness {
    /// `A = W* W` for this `r × n` factor.
    GramFactor(CMatrix),
    /// Eigenvalues, all at least `-PSD_TOL · trace`.
    Spectrum(Spectrum),
}

/// Hermitian matrix with a positivity witness.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdMatrix {
    matrix: HermitianMatrix,
    witness: PsdWitness,
}

impl PsdMatrix {
    /// `A = W* W`. Always PSD; rank at most the number of rows of `W`.
    pub fn from_gram(w: &CMatrix) -> PsdMatrix {
        let a = w.adjoint().matmul(w).expect("W*W is always conformable");
        PsdMatrix {
            matrix: HermitianMatrix { base: a.hermitize_upper() },
            witness: PsdWitness::GramFactor(w.clone()),
        }
    }

    /// Validates via the spectrum: every eigenvalue ≥ `-1e-9 · trace`.
    pub fn from_hermitian(h: HermitianMatrix) -> Result<PsdMatrix> {
        let spectrum = eigenvalues(&h, None)?;
        let floor = -PSD_TOL * h.trace_re().abs().max(f64::MIN_POSITIVE);
        let min = spectrum.min().unwrap_or(0.0);
        if min < floor {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(PsdMatrix { matrix: h, witness: PsdWitness::Spectrum(spectrum) })
    }

    /// Explicit entries together with a Gram factor that must reproduce them.
    pub fn with_gram(h: HermitianMatrix, w: &CMatrix) -> Result<PsdMatrix> {
        let rebuilt = PsdMatrix::from_gram(w);
        if rebuilt.n() != h.n() {
            return Err(Error::DimensionMismatch(format!(
                "Gram factor gives order {} but matrix has order {}",
                rebuilt.n(),
                h.n()
            )));
        }
        let tol = GRAM_TOL * h.trace_re().abs().max(1.0);
        let err = h
            .data()
            .iter()
            .zip(rebuilt.data())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if err > tol {
            return Err(Error::InvalidInput(format!(
                "Gram factor does not reproduce the matrix (max error {err:e})"
            )));
        }
        Ok(PsdMatrix { matrix: h, witness: PsdWitness::GramFactor(w.clone()) })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn witness(&self) -> &PsdWitness {
        &self.witness
    }

    pub fn gram_factor(&self) -> Option<&CMatrix> {
        match &self.witness {
            PsdWitness::GramFactor(w) => Some(w),
            PsdWitness::Spectrum(_) => None,
        }
    }

    /// Rank bound carried by the witness.
    pub fn witness_rank(&self) -> usize {
        match &self.witness {
            PsdWitness::GramFactor(w) => w.rows().min(self.n()),
            PsdWitness::Spectrum(s) => {
                let tol = PSD_TOL * self.matrix.trace_re().abs().max(f64::MIN_POSITIVE);
                s.values().iter().filter(|&&v| v > tol).count()
            }
        }
    }

    /// Entrywise conjugate; `Ā = (W̄)* W̄`.
    pub fn conj(&self) -> PsdMatrix {
        let witness = match &self.witness {
            PsdWitness::GramFactor(w) => PsdWitness::GramFactor(w.conj()),
            PsdWitness::Spectrum(s) => PsdWitness::Spectrum(s.clone()),
        };
        PsdMatrix { matrix: self.matrix.conj(), witness }
    }

    /// Principal submatrix; PSD because principal submatrices of PSD matrices are.
    pub fn principal(&self, idx: &[usize]) -> Result<PsdMatrix> {
        let matrix = self.matrix.principal(idx)?;
        let witness = match &self.witness {
            PsdWitness::GramFactor(w) => {
                let rows: Vec<usize> = (0..w.rows()).collect();
                PsdWitness::GramFactor(w.select(&rows, idx)?)
            }
            PsdWitness::Spectrum(_) => PsdWitness::Spectrum(eigenvalues(&matrix, None)?),
        };
        Ok(PsdMatrix { matrix, witness })
    }

    /// `A ⊕ B`.
    pub fn direct_sum(&self, other: &PsdMatrix) -> Result<PsdMatrix> {
        let matrix = self.matrix.direct_sum(&other.matrix)?;
        let witness = match (&self.witness, &other.witness) {
            (PsdWitness::GramFactor(w1), PsdWitness::GramFactor(w2)) => {
                let (r1, r2) = (w1.rows(), w2.rows());
                let (n1, n2) = (w1.cols(), w2.cols());
                let mut data = vec![Complex64::new(0.0, 0.0); (r1 + r2) * (n1 + n2)];
                for i in 0..r1 {
                    for j in 0..n1 {
                        data[i * (n1 + n2) + j] = w1.get(i, j);
                    }
                }
                for i in 0..r2 {
                    for j in 0..n2 {
                        data[(r1 + i) * (n1 + n2) + n1 + j] = w2.get(i, j);
                    }
                }
                PsdWitness::GramFactor(CMatrix::from_vec(r1 + r2, n1 + n2, data)?)
            }
            _ => PsdWitness::Spectrum(eigenvalues(&matrix, None)?),
        };
        Ok(PsdMatrix { matrix, witness })
    }

    /// Schur product; PSD by the Schur product theorem.
    pub fn hadamard(&self, other: &PsdMatrix) -> Result<PsdMatrix> {
        let matrix = self.matrix.hadamard(&other.matrix)?;
        let witness = match (&self.witness, &other.witness) {
            // Rows of the face-splitting product: (W1 ⊙ W2)_{(a,b),j} = w1_aj w2_bj.
            (PsdWitness::GramFactor(w1), PsdWitness::GramFactor(w2)) => {
                let n = w1.cols();
                let mut data = Vec::with_capacity(w1.rows() * w2.rows() * n);
                for a in 0..w1.rows() {
                    for b in 0..w2.rows() {
                        for j in 0..n {
                            data.push(w1.get(a, j) * w2.get(b, j));
                        }
                    }
                }
                PsdWitness::GramFactor(CMatrix::from_vec(w1.rows() * w2.rows(), n, data)?)
            }
            _ => PsdWitness::Spectrum(eigenvalues(&matrix, None)?),
        };
        Ok(PsdMatrix { matrix, witness })
    }

    /// `DAD` with `d_ii = a_ii^{-1/2}`; returns `D` and the correlation matrix.
    pub fn correlation_normalize(&self) -> Result<(CMatrix, CorrelationMatrix)> {
        let n = self.n();
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.matrix.get(i, i).re;
            if !(a > 0.0) {
                return Err(Error::ZeroDiagonal { index: i });
            }
            d.push(1.0 / a.sqrt());
        }
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
            for j in i + 1..n {
                let z = self.matrix.get(i, j) * (d[i] * d[j]);
                data[i * n + j] = z;
                data[j * n + i] = z.conj();
            }
        }
        let scaled = HermitianMatrix { base: CMatrix::from_vec(n, n, data)? };
        let witness = match &self.witness {
            PsdWitness::GramFactor(w) => {
                let mut wd = Vec::with_capacity(w.rows() * n);
                for r in 0..w.rows() {
                    for (j, dj) in d.iter().enumerate() {
                        wd.push(w.get(r, j) * dj);
                    }
                }
                PsdWitness::GramFactor(CMatrix::from_vec(w.rows(), n, wd)?)
            }
            PsdWitness::Spectrum(_) => PsdWitness::Spectrum(eigenvalues(&scaled, None)?),
        };
        let dmat = CMatrix::diagonal(&d.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
        let corr = CorrelationMatrix::new(PsdMatrix { matrix: scaled, witness })?;
        Ok((dmat, corr))
    }
}

impl Deref for PsdMatrix {
    type Target = HermitianMatrix;
    fn deref(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

/// PSD matrix with unit diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    base: PsdMatrix,
}

impl CorrelationMatrix {
    pub fn new(base: PsdMatrix) -> Result<Self> {
        for i in 0..base.n() {
            let d = base.get(i, i).re;
            if (d - 1.0).abs() > CORRELATION_TOL {
                return Err(Error::InvalidInput(format!(
                    "diagonal entry {} is {d}, not 1",
                    i + 1
                )));
            }
        }
        Ok(CorrelationMatrix { base })
    }

    pub fn psd(&self) -> &PsdMatrix {
        &self.base
    }

    pub fn into_psd(self) -> PsdMatrix {
        self.base
    }
}

impl Deref for CorrelationMatrix {
    type Target = PsdMatrix;
    fn deref(&self) -> &PsdMatrix {
        &self.base
    }
}
