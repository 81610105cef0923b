// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.

use num_complex::Complex64;
use serde::Serialize;

use super::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;
/// Sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of `‖A‖_F`.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Eigenvalues sorted descending, clustered into distinct values with
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    cluster_tol: f64,
    #[serde(skip)]
    values: Vec<f64>,
}

impl Spectrum {
    /// Clusters `values` (any order). Consecutive sorted values within
    /// `cluster_tol` of the cluster's first member share a cluster whose
    /// representative is the cluster mean. Default tolerance is
    /// `1e-6 · max(1, |λ_max|)`.
    pub fn from_values(mut values: Vec<f64>, cluster_tol: Option<f64>) -> Spectrum {
        values.sort_by(|a, b| b.total_cmp(a));
        let top = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = cluster_tol.unwrap_or(1e-6 * top.max(1.0));
        let mut eigenvalues = Vec::new();
        let mut multiplicities = Vec::new();
        let mut start = 0;
        while start < values.len() {
            let mut end = start + 1;
            while end < values.len() && values[start] - values[end] <= tol {
                end += 1;
            }
            let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
            eigenvalues.push(mean);
            multiplicities.push(end - start);
            start = end;
        }
        Spectrum { eigenvalues, multiplicities, cluster_tol: tol, values }
    }

    /// Distinct (clustered) eigenvalues, strictly decreasing.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    /// All eigenvalues with repetition, descending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(value, multiplicity)` pairs.
    pub fn clusters(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.eigenvalues.iter().copied().zip(self.multiplicities.iter().copied())
    }

    /// Index of the eigenvalue nearest to `x`, with its relative distance.
    pub fn nearest(&self, x: f64) -> Option<(f64, f64)> {
        self.values
            .iter()
            .map(|&v| (v, (v - x).abs() / x.abs().max(v.abs()).max(f64::MIN_POSITIVE)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Eigenvalues (descending) and the matching unit eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors.get(i, k)).collect()
    }
}

/// Spectrum of a Hermitian matrix.
pub fn eigenvalues(h: &HermitianMatrix, cluster_tol: Option<f64>) -> Result<Spectrum> {
    let (values, _) = jacobi(h.data().to_vec(), h.n(), false)?;
    Ok(Spectrum::from_values(values, cluster_tol))
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eigh(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.n();
    let (values, vectors) = jacobi(h.data().to_vec(), n, true)?;
    let vectors = vectors.expect("requested");
    Ok(EigenDecomposition { values, vectors: CMatrix::from_vec_float(n, n, vectors)? })
}

/// Eigenvalues of a row-major `n × n` buffer that is Hermitian up to
/// rounding; the upper triangle is taken as authoritative.
pub fn hermitian_eigen(mut data: Vec<Complex64>, n: usize) -> Result<Vec<f64>> {
    for i in 0..n {
        data[i * n + i].im = 0.0;
        for j in i + 1..n {
            data[j * n + i] = data[i * n + j].conj();
        }
    }
    Ok(jacobi(data, n, false)?.0)
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Each rotation is `U = D R` on coordinates (p, q), where
/// `D = diag(1, e^{-iφ})` makes the pivot real and `R` is the real Jacobi
/// rotation annihilating it.
fn jacobi(
    mut a: Vec<Complex64>,
    n: usize,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    let mut v = want_vectors.then(|| {
        let mut v = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            v[i * n + i] = Complex64::new(1.0, 0.0);
        }
        v
    });
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * norm;
    let mut sweep = 0;
    while norm > 0.0 && off_diagonal_norm(&a, n) > target {
        if sweep == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps: MAX_SWEEPS });
        }
        sweep += 1;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let g = a[p * n + q];
                let mag = g.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                if mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = g / mag;
                let phase_conj = phase.conj();
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q] * phase_conj;
                    a[k * n + p] = akp * c - akq * s;
                    a[k * n + q] = akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k] * phase;
                    a[p * n + k] = apk * c - aqk * s;
                    a[q * n + k] = apk * s + aqk * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(app - t * mag, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q] * phase_conj;
                        v[k * n + p] = vkp * c - vkq * s;
                        v[k * n + q] = vkp * s + vkq * c;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = v.map(|v| {
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for (col, &src) in order.iter().enumerate() {
            for r in 0..n {
                out[r * n + col] = v[r * n + src];
            }
        }
        out
    });
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{sample_psd, SampleKind};

    #[test]
    fn identity_spectrum() {
        let s = eigenvalues(&HermitianMatrix::identity(4), None).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0]);
        assert_eq!(s.multiplicities(), &[4]);
    }

    #[test]
    fn y3_spectrum() {
        // Y3 = (3/2) I - (1/2) J has eigenvalues 3/2, 3/2, 0.
        let y3 = CMatrix::from_real_rows(&[&[1.0, -0.5, -0.5], &[-0.5, 1.0, -0.5], &[-0.5, -0.5, 1.0]]).unwrap();
        let s = eigenvalues(&HermitianMatrix::new(y3).unwrap(), None).unwrap();
        assert_eq!(s.multiplicities(), &[2, 1]);
        assert!((s.eigenvalues()[0] - 1.5).abs() < 1e-12);
        assert!(s.eigenvalues()[1].abs() < 1e-12);
    }

    #[test]
    fn residuals_small_on_complex_input() {
        let a = sample_psd(7, 7, 11, SampleKind::Psd).unwrap();
        let e = eigh(a.hermitian()).unwrap();
        let norm = a.frobenius_norm();
        for k in 0..7 {
            let v = e.vector(k);
            let av = a.matvec(&v);
            let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - y * e.values[k]).norm_sqr()).sum::<f64>().sqrt();
            assert!(r <= 1e-9 * norm, "residual {r}");
        }
    }

    #[test]
    fn deterministic() {
        let a = sample_psd(6, 3, 5, SampleKind::Psd).unwrap();
        let s1 = eigenvalues(a.hermitian(), None).unwrap();
        let s2 = eigenvalues(a.hermitian(), None).unwrap();
        assert_eq!(s1.values(), s2.values());
    }

    #[test]
    fn trace_and_frobenius_identities_on_exact_input() {
        let h = HermitianMatrix::from_rows(&[
            vec![Complex64::new(3.0, 0.0), Complex64::new(1.0, -2.0), Complex64::new(-1.0, 0.0)],
            vec![Complex64::new(1.0, 2.0), Complex64::new(3.0, 0.0), Complex64::new(1.0, -2.0)],
            vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 2.0), Complex64::new(5.0, 0.0)],
        ])
        .unwrap();
        let s = eigenvalues(&h, None).unwrap();
        let tr = h.trace_re();
        assert!((s.values().iter().sum::<f64>() - tr).abs() <= 1e-9 * tr);
        let f2 = h.frobenius_norm().powi(2);
        assert!((s.values().iter().map(|v| v * v).sum::<f64>() - f2).abs() <= 1e-9 * f2);
    }

    #[test]
    fn clustering() {
        let s = Spectrum::from_values(vec![0.0, 2.0, 1e-9, 2.0 + 1e-9, 1.0], Some(1e-6));
        assert_eq!(s.multiplicities(), &[2, 1, 2]);
        assert_eq!(s.multiplicities().iter().sum::<usize>(), 5);
    }
}
